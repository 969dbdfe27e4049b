#include "seasoncast/forecast.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "seasoncast/rng.hpp"
#include "seasoncast/trainer.hpp"

namespace seasoncast {

void EnergySeries::validate() const {
    if (values.empty()) {
        throw std::invalid_argument("energy series is empty");
    }
    if (start.absolute < 1) {
        throw std::invalid_argument("series start month is invalid");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw std::invalid_argument("series value at month " +
                                        std::to_string(start.absolute + static_cast<int>(i)) +
                                        " must be finite and nonnegative");
        }
    }
}

std::string to_string(ForecastMode mode) {
    return mode == ForecastMode::one_step ? "one-step" : "multi-step";
}

WindowedDataset build_windows(const EnergySeries& series, const ScalerConfig& scaler,
                              const SeasonConfig& seasons, std::size_t window) {
    series.validate();
    if (window == 0) {
        throw std::invalid_argument("lag window must be positive");
    }
    if (series.size() <= window) {
        throw std::invalid_argument("series of length " + std::to_string(series.size()) +
                                    " is too short for a lag window of " +
                                    std::to_string(window));
    }

    WindowedDataset ds;
    std::size_t count = series.size() - window;
    ds.inputs.reserve(count);
    ds.targets.reserve(count);
    ds.target_months.reserve(count);

    for (std::size_t t = window; t < series.size(); ++t) {
        std::vector<double> input;
        input.reserve(window + (seasons.enabled ? 2 : 0));
        for (std::size_t k = t - window; k < t; ++k) {
            input.push_back(scale(series.values[k], scaler));
        }
        MonthIndex target_month = series.month_at(t);
        if (seasons.enabled) {
            SeasonEncoding enc = seasons.encode(target_month);
            input.push_back(enc.winter);
            input.push_back(enc.summer);
        }
        ds.inputs.push_back(std::move(input));
        ds.targets.push_back(scale(series.values[t], scaler));
        ds.target_months.push_back(target_month);
    }
    return ds;
}

std::pair<WindowedDataset, WindowedDataset> split_train_test(const WindowedDataset& ds,
                                                             std::size_t train_targets) {
    if (train_targets == 0 || train_targets >= ds.size()) {
        throw std::invalid_argument("split point " + std::to_string(train_targets) +
                                    " must lie strictly inside the dataset of size " +
                                    std::to_string(ds.size()));
    }
    WindowedDataset train, test;
    train.inputs.assign(ds.inputs.begin(), ds.inputs.begin() + train_targets);
    train.targets.assign(ds.targets.begin(), ds.targets.begin() + train_targets);
    train.target_months.assign(ds.target_months.begin(), ds.target_months.begin() + train_targets);
    test.inputs.assign(ds.inputs.begin() + train_targets, ds.inputs.end());
    test.targets.assign(ds.targets.begin() + train_targets, ds.targets.end());
    test.target_months.assign(ds.target_months.begin() + train_targets, ds.target_months.end());
    return {std::move(train), std::move(test)};
}

namespace {

std::vector<double> assemble_input(std::span<const double> lags,
                                   const std::optional<SeasonEncoding>& season) {
    std::vector<double> input(lags.begin(), lags.end());
    if (season) {
        input.push_back(season->winter);
        input.push_back(season->summer);
    }
    return input;
}

}  // namespace

double predict_one_step(const Mlp& net, std::span<const double> lags,
                        const std::optional<SeasonEncoding>& season) {
    return forward_mlp(net, assemble_input(lags, season));
}

double predict_one_step(ElmanNet& net, std::span<const double> lags,
                        const std::optional<SeasonEncoding>& season) {
    ElmanStep step = forward_elman(net, assemble_input(lags, season));
    net.context = std::move(step.new_context);
    return step.output;
}

namespace {

template <typename Net>
ForecastResult multistep_impl(Net& net, std::span<const double> seed_lags, MonthIndex start,
                              int horizon, const PredictConfig& cfg) {
    if (horizon < 1) {
        throw std::invalid_argument("forecast horizon must be at least 1");
    }
    if (seed_lags.empty()) {
        throw std::invalid_argument("multi-step prediction needs seed lags");
    }
    std::size_t expected = seed_lags.size() + (cfg.seasons.enabled ? 2 : 0);
    if (expected != net.input_size()) {
        throw std::invalid_argument("seed lags plus season inputs (" + std::to_string(expected) +
                                    ") do not match network input size " +
                                    std::to_string(net.input_size()));
    }

    ForecastResult result;
    result.mode = ForecastMode::multi_step;
    result.months.reserve(horizon);
    result.scaled.reserve(horizon);
    result.mwh.reserve(horizon);

    std::vector<double> lags(seed_lags.begin(), seed_lags.end());
    MonthIndex month = start;
    for (int step = 0; step < horizon; ++step) {
        std::optional<SeasonEncoding> season;
        if (cfg.seasons.enabled) {
            season = cfg.seasons.encode(month);
        }
        double predicted = predict_one_step(net, lags, season);
        result.months.push_back(month);
        result.scaled.push_back(predicted);
        result.mwh.push_back(unscale(predicted, cfg.scaler));
        lags.erase(lags.begin());
        lags.push_back(predicted);
        month = month.plus(1);
    }
    return result;
}

template <typename Net>
Evaluation evaluate_impl(Net& net, const WindowedDataset& ds) {
    if (ds.size() == 0) {
        throw std::invalid_argument("cannot evaluate on an empty dataset");
    }
    std::vector<double> predictions;
    predictions.reserve(ds.size());
    for (const auto& input : ds.inputs) {
        if constexpr (std::is_same_v<Net, ElmanNet>) {
            ElmanStep step = forward_elman(net, input);
            net.context = std::move(step.new_context);
            predictions.push_back(step.output);
        } else {
            predictions.push_back(forward_mlp(net, input));
        }
    }
    Evaluation eval;
    eval.mse = mse(predictions, ds.targets);
    eval.residuals.reserve(ds.size());
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        eval.residuals.push_back(predictions[i] - ds.targets[i]);
    }
    return eval;
}

}  // namespace

ForecastResult predict_multistep(const Mlp& net, std::span<const double> seed_lags,
                                 MonthIndex start, int horizon, const PredictConfig& cfg) {
    return multistep_impl(net, seed_lags, start, horizon, cfg);
}

ForecastResult predict_multistep(ElmanNet& net, std::span<const double> seed_lags,
                                 MonthIndex start, int horizon, const PredictConfig& cfg) {
    return multistep_impl(net, seed_lags, start, horizon, cfg);
}

Evaluation evaluate(const Mlp& net, const WindowedDataset& ds) { return evaluate_impl(net, ds); }

Evaluation evaluate(ElmanNet& net, const WindowedDataset& ds) { return evaluate_impl(net, ds); }

void SyntheticConfig::validate() const {
    if (!(base_mwh > amplitude_mwh) || !(amplitude_mwh >= 0.0)) {
        throw std::invalid_argument("synthetic series needs base > amplitude >= 0");
    }
    if (noise_sd_mwh < 0.0) {
        throw std::invalid_argument("noise standard deviation must be nonnegative");
    }
    if (months < 6) {
        throw std::invalid_argument("synthetic series needs at least 6 months");
    }
    if (start.absolute < 1) {
        throw std::invalid_argument("synthetic series start month is invalid");
    }
}

EnergySeries generate_synthetic(const SyntheticConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    EnergySeries series;
    series.start = cfg.start;
    series.values.reserve(cfg.months);
    for (int i = 0; i < cfg.months; ++i) {
        int calendar = cfg.start.plus(i).calendar_month();
        double seasonal =
            cfg.amplitude_mwh * std::cos(2.0 * M_PI * static_cast<double>(calendar - 1) / 12.0);
        double value = cfg.base_mwh + seasonal + cfg.trend_mwh_per_month * static_cast<double>(i);
        if (cfg.noise_sd_mwh > 0.0) {
            value += cfg.noise_sd_mwh * gaussian01(rng);
        }
        series.values.push_back(std::max(0.0, value));
    }
    return series;
}

}  // namespace seasoncast
