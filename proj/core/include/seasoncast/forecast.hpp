#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "seasoncast/nn.hpp"
#include "seasoncast/preproc.hpp"
#include "seasoncast/series.hpp"

namespace seasoncast {

// One training pair per month t >= window: inputs are the scaled lags
// v[t-window .. t-1] oldest-first plus the target month's season encoding.
WindowedDataset build_windows(const EnergySeries& series, const ScalerConfig& scaler,
                              const SeasonConfig& seasons, std::size_t window = 4);

// First `train_targets` samples and the rest, order preserved.
std::pair<WindowedDataset, WindowedDataset> split_train_test(const WindowedDataset& ds,
                                                             std::size_t train_targets = 14);

// Forward pass on (lags, season) assembled into one input vector. The Elman
// overload commits the new context, so calls must follow time order.
double predict_one_step(const Mlp& net, std::span<const double> lags,
                        const std::optional<SeasonEncoding>& season);
double predict_one_step(ElmanNet& net, std::span<const double> lags,
                        const std::optional<SeasonEncoding>& season);

struct PredictConfig {
    SeasonConfig seasons;
    ScalerConfig scaler;
};

// Closed-loop forecast: each prediction is shifted into the lag buffer and
// the month advances, so after the first `window` steps the buffer holds
// predictions only. `start` is the month of the first prediction.
ForecastResult predict_multistep(const Mlp& net, std::span<const double> seed_lags,
                                 MonthIndex start, int horizon, const PredictConfig& cfg);
ForecastResult predict_multistep(ElmanNet& net, std::span<const double> seed_lags,
                                 MonthIndex start, int horizon, const PredictConfig& cfg);

struct Evaluation {
    double mse = 0.0;
    std::vector<double> residuals;  // prediction - target, scaled domain
};

// One-step predictions against the dataset targets. The Elman overload runs
// sequentially and commits context sample by sample; evaluating the training
// split and then the test split leaves the context warm at the boundary.
Evaluation evaluate(const Mlp& net, const WindowedDataset& ds);
Evaluation evaluate(ElmanNet& net, const WindowedDataset& ds);

struct SyntheticConfig {
    double base_mwh = 250000.0;
    double amplitude_mwh = 60000.0;       // base > amplitude >= 0
    double trend_mwh_per_month = 0.0;
    double noise_sd_mwh = 0.0;
    int months = 22;                      // >= 6
    std::uint64_t seed = 0;
    MonthIndex start{1};                  // January 2002

    void validate() const;
};

// value(i) = base + amplitude * cos(2 pi (calendar-1) / 12) + trend * i
//            + gaussian(0, noise_sd), clamped at zero.
EnergySeries generate_synthetic(const SyntheticConfig& cfg);

}  // namespace seasoncast
