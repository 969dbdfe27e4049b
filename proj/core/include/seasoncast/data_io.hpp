#pragma once

#include <filesystem>
#include <vector>

#include "seasoncast/nn.hpp"
#include "seasoncast/preproc.hpp"
#include "seasoncast/series.hpp"
#include "seasoncast/trainer.hpp"

namespace seasoncast {

enum class NetworkKind { mlp, elman };

std::string to_string(NetworkKind kind);

// Self-contained snapshot of a trained pipeline: the network parameters plus
// the preprocessing setup they were trained with.
struct ModelFile {
    int format_version = 1;
    NetworkKind kind = NetworkKind::mlp;
    std::vector<std::size_t> layer_sizes;
    std::vector<double> params;  // flat order of nn.hpp
    ScalerConfig scaler;
    SeasonConfig seasons;        // enabled flag + winter table
    std::size_t window = 4;
    TrainerConfig trainer;       // echo of the training run

    static ModelFile from(const Mlp& net, const ScalerConfig& scaler, const SeasonConfig& seasons,
                          std::size_t window, const TrainerConfig& trainer);
    static ModelFile from(const ElmanNet& net, const ScalerConfig& scaler,
                          const SeasonConfig& seasons, std::size_t window,
                          const TrainerConfig& trainer);

    // Throw std::runtime_error on a kind mismatch. Elman context is runtime
    // state, not a parameter, and comes back reset to zero.
    Mlp as_mlp() const;
    ElmanNet as_elman() const;
};

// Series CSV, header `year,month,value_mwh`. Months must be strictly
// consecutive, values nonnegative; failures name the offending line.
EnergySeries load_series(const std::filesystem::path& path);
void save_series(const EnergySeries& series, const std::filesystem::path& path);

// Forecast CSV, header `year,month,scaled,mwh,mode`.
void save_forecast(const ForecastResult& result, const std::filesystem::path& path);
ForecastResult load_forecast(const std::filesystem::path& path);

// JSON model file; doubles round-trip exactly.
void save_model(const ModelFile& model, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace seasoncast
