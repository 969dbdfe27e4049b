#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seasoncast/preproc.hpp"

namespace seasoncast {

// Consecutive monthly observations in MWh.
struct EnergySeries {
    MonthIndex start;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    MonthIndex month_at(std::size_t i) const { return start.plus(static_cast<int>(i)); }

    // Nonempty, finite, nonnegative values and a valid start month.
    void validate() const;
};

// Scaled training pairs: each input is `window` lags oldest-first, plus the
// (winter, summer) pair of the target month when seasons are enabled.
struct WindowedDataset {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;              // scaled
    std::vector<MonthIndex> target_months;

    std::size_t size() const { return targets.size(); }
    std::size_t input_width() const { return inputs.empty() ? 0 : inputs.front().size(); }
};

enum class ForecastMode { one_step, multi_step };

std::string to_string(ForecastMode mode);

struct ForecastResult {
    std::vector<MonthIndex> months;
    std::vector<double> scaled;
    std::vector<double> mwh;  // unscale(scaled), elementwise
    ForecastMode mode = ForecastMode::one_step;

    std::size_t size() const { return months.size(); }
};

}  // namespace seasoncast
