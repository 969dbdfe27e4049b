#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "seasoncast/nn.hpp"
#include "seasoncast/series.hpp"

namespace seasoncast {

// Defaults calibrated on the synthetic suite: at 1000 full-batch epochs the
// season inputs still carry clear value over raw lags, while much longer
// runs let the lag window absorb the seasonal pattern on clean data.
struct TrainerConfig {
    double lr = 0.05;        // learning rate, > 0
    double mc = 0.9;         // momentum constant, in [0, 1]
    int epochs = 1000;       // >= 1
    double goal_mse = 0.0;   // early stop once batch MSE <= goal
    std::uint64_t seed = 1;  // weight initialization seed

    void validate() const;
};

// Previous update dX_prev per parameter, flat order of nn.hpp.
struct MomentumState {
    std::vector<double> prev_update;

    static MomentumState zeros(std::size_t parameter_count) {
        return MomentumState{std::vector<double>(parameter_count, 0.0)};
    }
};

// dX = mc * dX_prev + lr * (1 - mc) * g, evaluated in exactly this order.
inline double momentum_update(double prev_dx, double g, double lr, double mc) {
    return mc * prev_dx + lr * (1.0 - mc) * g;
}

// Applies the update above to every parameter and stores the new dX as the
// next previous update. `descent` is the descent direction, i.e. the
// negative MSE gradient when minimizing.
void momentum_step(std::span<double> params, std::span<const double> descent,
                   MomentumState& state, double lr, double mc);

struct TrainingReport {
    std::vector<double> mse_per_epoch;  // batch MSE before each update
    int epochs_run = 0;
    bool stopped_early = false;
};

// Full-batch gradient descent with momentum. Stops at cfg.epochs or as soon
// as the pre-update batch MSE drops to cfg.goal_mse. Throws on an empty
// dataset, input-width mismatch, or non-finite MSE (reporting the epoch).
// Elman context is left untouched; gradients treat it as a frozen input.
TrainingReport train(Mlp& net, const WindowedDataset& ds, const TrainerConfig& cfg);
TrainingReport train(ElmanNet& net, const WindowedDataset& ds, const TrainerConfig& cfg);

// Mean squared residual; throws on empty or mismatched lengths.
double mse(std::span<const double> predictions, std::span<const double> targets);

}  // namespace seasoncast
