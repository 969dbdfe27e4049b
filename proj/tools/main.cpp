// Command-line driver for the monthly energy forecasting pipeline:
// synth | train | predict | multistep | sweep.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "seasoncast/config.hpp"
#include "seasoncast/data_io.hpp"
#include "seasoncast/forecast.hpp"
#include "seasoncast/trainer.hpp"

using namespace seasoncast;

namespace {

std::string format_double(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_training_report(const TrainingReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open report file for writing: " + path.string());
    }
    out << "epoch,mse\n";
    for (int e = 0; e < report.epochs_run; ++e) {
        out << (e + 1) << ',' << format_double(report.mse_per_epoch[e]) << '\n';
    }
}

// Shared pipeline options for train and sweep. Values land in the struct;
// whether a flag was actually given is read back via cmd->count().
struct PipelineFlags {
    std::string config_path;
    double lr = 0.0;
    double mc = 0.0;
    int epochs = 0;
    double goal_mse = 0.0;
    std::uint64_t seed = 0;
    double factor = 0.0;
    std::size_t window = 0;
    std::size_t train_targets = 0;
    std::string hidden;
    std::string kind;
    std::string membership;
    bool seasons = true;
};

void add_pipeline_options(CLI::App* cmd, PipelineFlags& f) {
    cmd->add_option("--config,-c", f.config_path,
                    "config file (defaults to $SEASON_FORECAST_CONFIG)");
    cmd->add_option("--lr", f.lr, "learning rate");
    cmd->add_option("--mc", f.mc, "momentum constant in [0,1]");
    cmd->add_option("--epochs", f.epochs, "training epochs");
    cmd->add_option("--goal-mse", f.goal_mse, "early-stop MSE threshold");
    cmd->add_option("--seed", f.seed, "weight initialization seed");
    cmd->add_option("--factor", f.factor, "scaler factor in MWh");
    cmd->add_option("--window", f.window, "number of lag months");
    cmd->add_option("--train-targets", f.train_targets, "training samples in the split");
    cmd->add_option("--kind", f.kind, "network kind: mlp or elman");
    cmd->add_option("--membership", f.membership, "12 winter membership degrees");
    cmd->add_flag("--with-seasons,!--no-seasons", f.seasons, "feed fuzzy season inputs");
}

bool flag_given(const CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

PipelineConfig resolve_config(const CLI::App* cmd, const PipelineFlags& f) {
    std::string path = f.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("SEASON_FORECAST_CONFIG")) path = env;
    }
    PipelineConfig cfg;
    if (!path.empty()) cfg = load_config(path);

    // flags win over config file values
    if (flag_given(cmd, "--lr")) cfg.trainer.lr = f.lr;
    if (flag_given(cmd, "--mc")) cfg.trainer.mc = f.mc;
    if (flag_given(cmd, "--epochs")) cfg.trainer.epochs = f.epochs;
    if (flag_given(cmd, "--goal-mse")) cfg.trainer.goal_mse = f.goal_mse;
    if (flag_given(cmd, "--seed")) cfg.trainer.seed = f.seed;
    if (flag_given(cmd, "--factor")) cfg.scaler.factor = f.factor;
    if (flag_given(cmd, "--window")) cfg.window = f.window;
    if (flag_given(cmd, "--train-targets")) cfg.train_targets = f.train_targets;
    if (flag_given(cmd, "--hidden")) cfg.hidden_sizes = parse_hidden_sizes(f.hidden);
    if (flag_given(cmd, "--kind")) cfg.kind = parse_kind(f.kind);
    if (flag_given(cmd, "--membership")) {
        cfg.seasons.winter_table = parse_membership_table(f.membership);
    }
    if (flag_given(cmd, "--with-seasons")) {
        cfg.seasons.enabled = f.seasons;
    }
    return cfg;
}

std::vector<std::size_t> topology_for(const PipelineConfig& cfg,
                                      const std::vector<std::size_t>& hidden) {
    std::vector<std::size_t> sizes;
    sizes.push_back(cfg.window + (cfg.seasons.enabled ? 2 : 0));
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(1);
    return sizes;
}

struct FitResult {
    double train_mse = 0.0;
    double test_mse = 0.0;
    TrainingReport report;
    std::optional<Mlp> mlp;
    std::optional<ElmanNet> elman;
};

// Train one network on the 14/4-style split and evaluate both halves.
// Elman evaluation runs train split first so the context is warm at the
// test boundary.
FitResult fit_split(const PipelineConfig& cfg, const std::vector<std::size_t>& hidden,
                    const WindowedDataset& train_ds, const WindowedDataset& test_ds) {
    std::vector<std::size_t> sizes = topology_for(cfg, hidden);
    FitResult result;
    if (cfg.kind == NetworkKind::mlp) {
        Mlp net = Mlp::create(sizes, cfg.trainer.seed);
        result.report = train(net, train_ds, cfg.trainer);
        result.train_mse = evaluate(net, train_ds).mse;
        result.test_mse = evaluate(net, test_ds).mse;
        result.mlp = std::move(net);
    } else {
        ElmanNet net = ElmanNet::create(sizes, cfg.trainer.seed);
        result.report = train(net, train_ds, cfg.trainer);
        net.reset_context();
        result.train_mse = evaluate(net, train_ds).mse;
        result.test_mse = evaluate(net, test_ds).mse;
        result.elman = std::move(net);
    }
    return result;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
    SyntheticConfig cfg;
    int start_year = 2002;
    int start_month = 1;
    std::string out;
};

void run_synth(const SynthArgs& args) {
    SyntheticConfig cfg = args.cfg;
    cfg.start = MonthIndex::from_year_month(args.start_year, args.start_month);
    EnergySeries series = generate_synthetic(cfg);
    save_series(series, args.out);
    std::cout << "wrote " << args.out << " (" << series.size() << " months)\n";
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
    std::string series_path;
    std::string out_model;
    std::string report_path;
    PipelineFlags flags;
};

void run_train(const CLI::App* cmd, const TrainArgs& args) {
    PipelineConfig cfg = resolve_config(cmd, args.flags);
    EnergySeries series = load_series(args.series_path);
    WindowedDataset ds = build_windows(series, cfg.scaler, cfg.seasons, cfg.window);
    auto [train_ds, test_ds] = split_train_test(ds, cfg.train_targets);

    FitResult fit = fit_split(cfg, cfg.hidden_sizes, train_ds, test_ds);

    ModelFile model = fit.mlp
        ? ModelFile::from(*fit.mlp, cfg.scaler, cfg.seasons, cfg.window, cfg.trainer)
        : ModelFile::from(*fit.elman, cfg.scaler, cfg.seasons, cfg.window, cfg.trainer);
    save_model(model, args.out_model);
    if (!args.report_path.empty()) {
        write_training_report(fit.report, args.report_path);
    }

    std::cout << "train_mse=" << format_double(fit.train_mse)
              << " test_mse=" << format_double(fit.test_mse)
              << " epochs_run=" << fit.report.epochs_run
              << " stopped_early=" << (fit.report.stopped_early ? 1 : 0) << '\n';
}

// ---- predict ---------------------------------------------------------------

struct PredictArgs {
    std::string model_path;
    std::string series_path;
    std::string out;
};

void run_predict(const PredictArgs& args) {
    ModelFile model = load_model(args.model_path);
    EnergySeries series = load_series(args.series_path);
    WindowedDataset ds = build_windows(series, model.scaler, model.seasons, model.window);

    ForecastResult result;
    result.mode = ForecastMode::one_step;
    result.months = ds.target_months;
    if (model.kind == NetworkKind::mlp) {
        Mlp net = model.as_mlp();
        for (const auto& input : ds.inputs) {
            result.scaled.push_back(forward_mlp(net, input));
        }
    } else {
        ElmanNet net = model.as_elman();  // sequential pass from a reset context
        for (const auto& input : ds.inputs) {
            ElmanStep step = forward_elman(net, input);
            net.context = std::move(step.new_context);
            result.scaled.push_back(step.output);
        }
    }
    for (double s : result.scaled) {
        result.mwh.push_back(unscale(s, model.scaler));
    }
    save_forecast(result, args.out);
    std::cout << "one_step_mse=" << format_double(mse(result.scaled, ds.targets))
              << " rows=" << result.size() << '\n';
}

// ---- multistep ---------------------------------------------------------------

struct MultistepArgs {
    std::string model_path;
    std::string series_path;
    std::string out;
    int horizon = 0;
};

void run_multistep(const MultistepArgs& args) {
    ModelFile model = load_model(args.model_path);
    EnergySeries series = load_series(args.series_path);
    if (series.size() < model.window) {
        throw std::runtime_error("series has " + std::to_string(series.size()) +
                                 " months but the model needs " + std::to_string(model.window) +
                                 " seed lags");
    }

    std::vector<double> seed_lags;
    for (std::size_t i = 0; i < model.window; ++i) {
        seed_lags.push_back(scale(series.values[i], model.scaler));
    }
    MonthIndex start = series.start.plus(static_cast<int>(model.window));
    PredictConfig cfg{model.seasons, model.scaler};

    ForecastResult result;
    if (model.kind == NetworkKind::mlp) {
        Mlp net = model.as_mlp();
        result = predict_multistep(net, seed_lags, start, args.horizon, cfg);
    } else {
        ElmanNet net = model.as_elman();  // context starts reset
        result = predict_multistep(net, seed_lags, start, args.horizon, cfg);
    }
    save_forecast(result, args.out);
    std::cout << "wrote " << args.out << " (" << result.size() << " months from "
              << result.months.front().year() << '-' << result.months.front().calendar_month()
              << ")\n";
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
    std::string series_path;
    std::string out;
    std::vector<std::string> hidden_sizes;
    PipelineFlags flags;
};

void run_sweep(const CLI::App* cmd, const SweepArgs& args) {
    if (args.hidden_sizes.size() < 2) {
        throw std::invalid_argument("sweep needs at least 2 topologies via --hidden-sizes");
    }
    PipelineConfig cfg = resolve_config(cmd, args.flags);
    EnergySeries series = load_series(args.series_path);
    WindowedDataset ds = build_windows(series, cfg.scaler, cfg.seasons, cfg.window);
    auto [train_ds, test_ds] = split_train_test(ds, cfg.train_targets);

    std::vector<std::vector<std::size_t>> topologies;
    for (const std::string& text : args.hidden_sizes) {
        topologies.push_back(parse_hidden_sizes(text));
    }

    struct Row {
        std::string label;
        double train_mse;
        double test_mse;
    };

    // independent networks, trained concurrently; results keep input order
    std::vector<std::future<FitResult>> futures;
    futures.reserve(topologies.size());
    for (const auto& hidden : topologies) {
        futures.push_back(std::async(std::launch::async, [&cfg, &train_ds, &test_ds, hidden] {
            return fit_split(cfg, hidden, train_ds, test_ds);
        }));
    }

    std::vector<Row> rows;
    for (std::size_t i = 0; i < topologies.size(); ++i) {
        FitResult fit = futures[i].get();
        std::string label;
        for (std::size_t k = 0; k < topologies[i].size(); ++k) {
            if (k) label += 'x';
            label += std::to_string(topologies[i][k]);
        }
        rows.push_back(Row{label, fit.train_mse, fit.test_mse});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.test_mse < b.test_mse; });

    std::ofstream out(args.out, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open sweep output for writing: " + args.out);
    }
    out << "hidden,train_mse,test_mse\n";
    for (const Row& row : rows) {
        out << row.label << ',' << format_double(row.train_mse) << ','
            << format_double(row.test_mse) << '\n';
        std::cout << row.label << " train_mse=" << format_double(row.train_mse)
                  << " test_mse=" << format_double(row.test_mse) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monthly energy forecasting with seasonal fuzzy inputs"};
    app.require_subcommand(1);

    SynthArgs synth;
    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic monthly series");
    synth_cmd->add_option("--out", synth.out, "output series CSV")->required();
    synth_cmd->add_option("--base", synth.cfg.base_mwh, "base level in MWh");
    synth_cmd->add_option("--amplitude", synth.cfg.amplitude_mwh, "seasonal amplitude in MWh");
    synth_cmd->add_option("--trend", synth.cfg.trend_mwh_per_month, "linear trend per month");
    synth_cmd->add_option("--noise-sd", synth.cfg.noise_sd_mwh, "gaussian noise sd in MWh");
    synth_cmd->add_option("--months", synth.cfg.months, "series length")
        ->check(CLI::PositiveNumber);
    synth_cmd->add_option("--seed", synth.cfg.seed, "noise seed");
    synth_cmd->add_option("--start-year", synth.start_year, "first year");
    synth_cmd->add_option("--start-month", synth.start_month, "first calendar month");
    synth_cmd->callback([&] { run_synth(synth); });

    TrainArgs train_args;
    CLI::App* train_cmd = app.add_subcommand("train", "train a network on a series");
    train_cmd->add_option("--series", train_args.series_path, "input series CSV")->required();
    train_cmd->add_option("--out-model", train_args.out_model, "output model file")->required();
    train_cmd->add_option("--report", train_args.report_path, "training report CSV");
    train_cmd->add_option("--hidden", train_args.flags.hidden, "hidden layer sizes, e.g. 8,4");
    add_pipeline_options(train_cmd, train_args.flags);
    train_cmd->callback([&] { run_train(train_cmd, train_args); });

    PredictArgs predict_args;
    CLI::App* predict_cmd =
        app.add_subcommand("predict", "one-step predictions over a measured series");
    predict_cmd->add_option("--model", predict_args.model_path, "model file")->required();
    predict_cmd->add_option("--series", predict_args.series_path, "input series CSV")->required();
    predict_cmd->add_option("--out", predict_args.out, "output forecast CSV")->required();
    predict_cmd->callback([&] { run_predict(predict_args); });

    MultistepArgs multi_args;
    CLI::App* multi_cmd =
        app.add_subcommand("multistep", "closed-loop forecast seeded from a series");
    multi_cmd->add_option("--model", multi_args.model_path, "model file")->required();
    multi_cmd->add_option("--series", multi_args.series_path, "series providing the seed lags")
        ->required();
    multi_cmd->add_option("--horizon", multi_args.horizon, "months to forecast")
        ->required()
        ->check(CLI::Range(1, 100000));
    multi_cmd->add_option("--out", multi_args.out, "output forecast CSV")->required();
    multi_cmd->callback([&] { run_multistep(multi_args); });

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "compare hidden-layer topologies");
    sweep_cmd->add_option("--series", sweep_args.series_path, "input series CSV")->required();
    sweep_cmd->add_option("--out", sweep_args.out, "output comparison CSV")->required();
    sweep_cmd->add_option("--hidden-sizes", sweep_args.hidden_sizes,
                          "topologies to try, e.g. --hidden-sizes 8,4 32,16")
        ->required();
    add_pipeline_options(sweep_cmd, sweep_args.flags);
    sweep_cmd->callback([&] { run_sweep(sweep_cmd, sweep_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
