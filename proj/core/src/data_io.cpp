#include "seasoncast/data_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace seasoncast {

namespace {

std::string loc(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line);
}

// Shortest representation that parses back to the exact same double.
void append_double(std::string& out, double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    out.append(buf, res.ptr);
}

double parse_double(std::string_view field, const std::filesystem::path& path, std::size_t line) {
    double value = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw std::runtime_error(loc(path, line) + ": expected a number, got '" +
                                 std::string(field) + "'");
    }
    return value;
}

long parse_int(std::string_view field, const std::filesystem::path& path, std::size_t line) {
    long value = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw std::runtime_error(loc(path, line) + ": expected an integer, got '" +
                                 std::string(field) + "'");
    }
    return value;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    fields.push_back(current);
    return fields;
}

// Reads all lines, tolerating CRLF endings; `line` numbers start at 1.
std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path.string());
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(line);
    }
    return lines;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open file for writing: " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

}  // namespace

std::string to_string(NetworkKind kind) { return kind == NetworkKind::mlp ? "mlp" : "elman"; }

EnergySeries load_series(const std::filesystem::path& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) {
        throw std::runtime_error(path.string() + ": empty series file");
    }
    if (lines[0] != "year,month,value_mwh") {
        throw std::runtime_error(loc(path, 1) + ": expected header 'year,month,value_mwh'");
    }

    EnergySeries series;
    bool first = true;
    MonthIndex previous;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t line_no = i + 1;
        if (lines[i].empty()) {
            if (i + 1 == lines.size()) continue;  // trailing newline
            throw std::runtime_error(loc(path, line_no) + ": blank line inside series");
        }
        std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != 3) {
            throw std::runtime_error(loc(path, line_no) + ": expected 3 fields, got " +
                                     std::to_string(fields.size()));
        }
        long year = parse_int(fields[0], path, line_no);
        long month = parse_int(fields[1], path, line_no);
        double value = parse_double(fields[2], path, line_no);

        MonthIndex m;
        try {
            m = MonthIndex::from_year_month(static_cast<int>(year), static_cast<int>(month));
        } catch (const std::exception& e) {
            throw std::runtime_error(loc(path, line_no) + ": " + e.what());
        }
        if (value < 0.0) {
            throw std::runtime_error(loc(path, line_no) + ": negative energy value");
        }
        if (first) {
            series.start = m;
            first = false;
        } else if (m.absolute != previous.absolute + 1) {
            throw std::runtime_error(loc(path, line_no) +
                                     ": months must be consecutive, gap before " +
                                     std::to_string(year) + "-" + std::to_string(month));
        }
        previous = m;
        series.values.push_back(value);
    }
    if (series.values.empty()) {
        throw std::runtime_error(path.string() + ": series file has no data rows");
    }
    series.validate();
    return series;
}

void save_series(const EnergySeries& series, const std::filesystem::path& path) {
    series.validate();
    std::string out = "year,month,value_mwh\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        MonthIndex m = series.month_at(i);
        out += std::to_string(m.year());
        out += ',';
        out += std::to_string(m.calendar_month());
        out += ',';
        append_double(out, series.values[i]);
        out += '\n';
    }
    write_file(path, out);
}

void save_forecast(const ForecastResult& result, const std::filesystem::path& path) {
    if (result.size() == 0) {
        throw std::invalid_argument("refusing to save an empty forecast");
    }
    if (result.scaled.size() != result.size() || result.mwh.size() != result.size()) {
        throw std::invalid_argument("forecast columns have mismatched lengths");
    }
    std::string out = "year,month,scaled,mwh,mode\n";
    for (std::size_t i = 0; i < result.size(); ++i) {
        out += std::to_string(result.months[i].year());
        out += ',';
        out += std::to_string(result.months[i].calendar_month());
        out += ',';
        append_double(out, result.scaled[i]);
        out += ',';
        append_double(out, result.mwh[i]);
        out += ',';
        out += to_string(result.mode);
        out += '\n';
    }
    write_file(path, out);
}

ForecastResult load_forecast(const std::filesystem::path& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) {
        throw std::runtime_error(path.string() + ": empty forecast file");
    }
    if (lines[0] != "year,month,scaled,mwh,mode") {
        throw std::runtime_error(loc(path, 1) + ": expected header 'year,month,scaled,mwh,mode'");
    }
    ForecastResult result;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t line_no = i + 1;
        if (lines[i].empty() && i + 1 == lines.size()) continue;
        std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != 5) {
            throw std::runtime_error(loc(path, line_no) + ": expected 5 fields, got " +
                                     std::to_string(fields.size()));
        }
        long year = parse_int(fields[0], path, line_no);
        long month = parse_int(fields[1], path, line_no);
        try {
            result.months.push_back(
                MonthIndex::from_year_month(static_cast<int>(year), static_cast<int>(month)));
        } catch (const std::exception& e) {
            throw std::runtime_error(loc(path, line_no) + ": " + e.what());
        }
        result.scaled.push_back(parse_double(fields[2], path, line_no));
        result.mwh.push_back(parse_double(fields[3], path, line_no));
        if (fields[4] == "one-step") {
            result.mode = ForecastMode::one_step;
        } else if (fields[4] == "multi-step") {
            result.mode = ForecastMode::multi_step;
        } else {
            throw std::runtime_error(loc(path, line_no) + ": unknown mode '" + fields[4] + "'");
        }
    }
    if (result.size() == 0) {
        throw std::runtime_error(path.string() + ": forecast file has no data rows");
    }
    return result;
}

namespace {

std::size_t expected_param_count(NetworkKind kind, const std::vector<std::size_t>& sizes) {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        n += sizes[l + 1] * sizes[l] + sizes[l + 1];
    }
    if (kind == NetworkKind::elman && sizes.size() >= 2) {
        n += sizes[1] * sizes[1];
    }
    return n;
}

void check_model(const ModelFile& model) {
    if (model.format_version != 1) {
        throw std::runtime_error("unsupported model format version " +
                                 std::to_string(model.format_version));
    }
    if (model.layer_sizes.size() < 2) {
        throw std::runtime_error("model topology needs at least two layer sizes");
    }
    std::size_t expected = expected_param_count(model.kind, model.layer_sizes);
    if (model.params.size() != expected) {
        throw std::runtime_error("model has " + std::to_string(model.params.size()) +
                                 " parameters but the topology requires " +
                                 std::to_string(expected));
    }
}

}  // namespace

ModelFile ModelFile::from(const Mlp& net, const ScalerConfig& scaler, const SeasonConfig& seasons,
                          std::size_t window, const TrainerConfig& trainer) {
    net.validate();
    ModelFile model;
    model.kind = NetworkKind::mlp;
    model.layer_sizes = net.layer_sizes;
    model.params = flatten_params(net);
    model.scaler = scaler;
    model.seasons = seasons;
    model.window = window;
    model.trainer = trainer;
    return model;
}

ModelFile ModelFile::from(const ElmanNet& net, const ScalerConfig& scaler,
                          const SeasonConfig& seasons, std::size_t window,
                          const TrainerConfig& trainer) {
    net.validate();
    ModelFile model;
    model.kind = NetworkKind::elman;
    model.layer_sizes = net.base.layer_sizes;
    model.params = flatten_params(net);
    model.scaler = scaler;
    model.seasons = seasons;
    model.window = window;
    model.trainer = trainer;
    return model;
}

Mlp ModelFile::as_mlp() const {
    if (kind != NetworkKind::mlp) {
        throw std::runtime_error("model kind is '" + to_string(kind) + "', expected 'mlp'");
    }
    check_model(*this);
    Mlp net = Mlp::create(layer_sizes, 0);
    set_params(net, params);
    return net;
}

ElmanNet ModelFile::as_elman() const {
    if (kind != NetworkKind::elman) {
        throw std::runtime_error("model kind is '" + to_string(kind) + "', expected 'elman'");
    }
    check_model(*this);
    ElmanNet net = ElmanNet::create(layer_sizes, 0);
    set_params(net, params);
    return net;
}

void save_model(const ModelFile& model, const std::filesystem::path& path) {
    check_model(model);
    nlohmann::json j;
    j["format_version"] = model.format_version;
    j["kind"] = to_string(model.kind);
    j["layer_sizes"] = model.layer_sizes;
    j["params"] = model.params;
    j["scaler"] = {{"factor", model.scaler.factor}};
    j["seasons"] = {{"enabled", model.seasons.enabled},
                    {"winter_table", model.seasons.winter_table}};
    j["window"] = model.window;
    j["trainer"] = {{"lr", model.trainer.lr},
                    {"mc", model.trainer.mc},
                    {"epochs", model.trainer.epochs},
                    {"goal_mse", model.trainer.goal_mse},
                    {"seed", model.trainer.seed}};
    write_file(path, j.dump(2) + "\n");
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open model file: " + path.string());
    }
    ModelFile model;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        model.format_version = j.at("format_version").get<int>();
        if (model.format_version != 1) {
            throw std::runtime_error("unsupported model format version " +
                                     std::to_string(model.format_version));
        }
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "mlp") {
            model.kind = NetworkKind::mlp;
        } else if (kind == "elman") {
            model.kind = NetworkKind::elman;
        } else {
            throw std::runtime_error("unknown network kind '" + kind + "'");
        }
        model.layer_sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
        model.params = j.at("params").get<std::vector<double>>();
        model.scaler.factor = j.at("scaler").at("factor").get<double>();
        model.seasons.enabled = j.at("seasons").at("enabled").get<bool>();
        auto table = j.at("seasons").at("winter_table").get<std::vector<double>>();
        if (table.size() != 12) {
            throw std::runtime_error("winter_table must have 12 entries");
        }
        std::copy(table.begin(), table.end(), model.seasons.winter_table.begin());
        model.window = j.at("window").get<std::size_t>();
        model.trainer.lr = j.at("trainer").at("lr").get<double>();
        model.trainer.mc = j.at("trainer").at("mc").get<double>();
        model.trainer.epochs = j.at("trainer").at("epochs").get<int>();
        model.trainer.goal_mse = j.at("trainer").at("goal_mse").get<double>();
        model.trainer.seed = j.at("trainer").at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("model file " + path.string() + ": " + e.what());
    }
    check_model(model);
    return model;
}

}  // namespace seasoncast
