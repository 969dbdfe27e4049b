#include "seasoncast/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>

namespace seasoncast {

namespace {

std::string trim(std::string_view text) {
    std::size_t begin = text.find_first_not_of(" \t");
    if (begin == std::string_view::npos) return "";
    std::size_t end = text.find_last_not_of(" \t");
    return std::string(text.substr(begin, end - begin + 1));
}

double to_double(const std::string& text) {
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::runtime_error("expected a number, got '" + text + "'");
    }
    return value;
}

long to_long(const std::string& text) {
    long value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::runtime_error("expected an integer, got '" + text + "'");
    }
    return value;
}

bool to_bool(const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw std::runtime_error("expected a boolean, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(trim(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(trim(current));
    return parts;
}

}  // namespace

std::vector<std::size_t> parse_hidden_sizes(const std::string& text) {
    std::vector<std::size_t> sizes;
    for (const std::string& part : split_list(text)) {
        long value = to_long(part);
        if (value < 1) {
            throw std::runtime_error("hidden layer sizes must be positive, got '" + part + "'");
        }
        sizes.push_back(static_cast<std::size_t>(value));
    }
    if (sizes.empty()) {
        throw std::runtime_error("hidden layer size list is empty");
    }
    return sizes;
}

MembershipTable parse_membership_table(const std::string& text) {
    std::vector<std::string> parts = split_list(text);
    if (parts.size() != 12) {
        throw std::runtime_error("membership table needs 12 values, got " +
                                 std::to_string(parts.size()));
    }
    MembershipTable table{};
    for (std::size_t i = 0; i < 12; ++i) {
        double degree = to_double(parts[i]);
        if (!(degree >= 0.0 && degree <= 1.0)) {
            throw std::runtime_error("membership degrees must lie in [0,1], got '" + parts[i] +
                                     "'");
        }
        table[i] = degree;
    }
    return table;
}

NetworkKind parse_kind(const std::string& text) {
    if (text == "mlp") return NetworkKind::mlp;
    if (text == "elman") return NetworkKind::elman;
    throw std::runtime_error("network kind must be 'mlp' or 'elman', got '" + text + "'");
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected 'key = value'");
        }
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        try {
            if (key == "lr") {
                base.trainer.lr = to_double(value);
            } else if (key == "mc") {
                base.trainer.mc = to_double(value);
            } else if (key == "epochs") {
                base.trainer.epochs = static_cast<int>(to_long(value));
            } else if (key == "goal_mse") {
                base.trainer.goal_mse = to_double(value);
            } else if (key == "seed") {
                base.trainer.seed = static_cast<std::uint64_t>(to_long(value));
            } else if (key == "factor") {
                base.scaler.factor = to_double(value);
            } else if (key == "window") {
                base.window = static_cast<std::size_t>(to_long(value));
            } else if (key == "train_targets") {
                base.train_targets = static_cast<std::size_t>(to_long(value));
            } else if (key == "hidden") {
                base.hidden_sizes = parse_hidden_sizes(value);
            } else if (key == "kind") {
                base.kind = parse_kind(value);
            } else if (key == "seasons") {
                base.seasons.enabled = to_bool(value);
            } else if (key == "membership") {
                base.seasons.winter_table = parse_membership_table(value);
            } else {
                throw std::runtime_error("unknown key '" + key + "'");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    return base;
}

}  // namespace seasoncast
