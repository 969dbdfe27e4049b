#include "seasoncast/trainer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seasoncast {

void TrainerConfig::validate() const {
    if (!(lr > 0.0) || !std::isfinite(lr)) {
        throw std::invalid_argument("learning rate must be positive");
    }
    if (!(mc >= 0.0 && mc <= 1.0)) {
        throw std::invalid_argument("momentum constant must lie in [0,1]");
    }
    if (epochs < 1) {
        throw std::invalid_argument("epochs must be at least 1");
    }
    if (!(goal_mse >= 0.0)) {
        throw std::invalid_argument("goal MSE must be nonnegative");
    }
}

void momentum_step(std::span<double> params, std::span<const double> descent,
                   MomentumState& state, double lr, double mc) {
    if (params.size() != descent.size() || params.size() != state.prev_update.size()) {
        throw std::invalid_argument("parameters, descent direction and momentum state "
                                    "must have congruent shapes");
    }
    if (!(lr > 0.0) || !(mc >= 0.0 && mc <= 1.0)) {
        throw std::invalid_argument("momentum step needs lr > 0 and mc in [0,1]");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        double dx = momentum_update(state.prev_update[i], descent[i], lr, mc);
        params[i] += dx;
        state.prev_update[i] = dx;
    }
}

double mse(std::span<const double> predictions, std::span<const double> targets) {
    if (predictions.empty()) {
        throw std::invalid_argument("mse of empty sequences");
    }
    if (predictions.size() != targets.size()) {
        throw std::invalid_argument("mse needs equal lengths, got " +
                                    std::to_string(predictions.size()) + " and " +
                                    std::to_string(targets.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        double r = predictions[i] - targets[i];
        sum += r * r;
    }
    return sum / static_cast<double>(predictions.size());
}

namespace {

template <typename Net>
TrainingReport train_impl(Net& net, const WindowedDataset& ds, const TrainerConfig& cfg) {
    cfg.validate();
    if (ds.size() == 0) {
        throw std::invalid_argument("cannot train on an empty dataset");
    }
    if (ds.input_width() != net.input_size()) {
        throw std::invalid_argument("dataset input width " + std::to_string(ds.input_width()) +
                                    " does not match network input size " +
                                    std::to_string(net.input_size()));
    }

    TrainingReport report;
    MomentumState state = MomentumState::zeros(net.parameter_count());
    std::vector<double> params = flatten_params(net);
    std::vector<double> descent(params.size(), 0.0);

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        double batch = batch_mse(net, ds.inputs, ds.targets);
        if (!std::isfinite(batch)) {
            throw std::runtime_error("training diverged at epoch " + std::to_string(epoch) +
                                     ": batch MSE is not finite");
        }
        report.mse_per_epoch.push_back(batch);
        report.epochs_run = epoch;
        if (batch <= cfg.goal_mse) {
            report.stopped_early = true;
            break;
        }

        Gradients grads = backprop(net, ds.inputs, ds.targets);
        std::vector<double> flat_grads = flatten(grads);
        for (std::size_t i = 0; i < descent.size(); ++i) {
            descent[i] = -flat_grads[i];
        }
        momentum_step(params, descent, state, cfg.lr, cfg.mc);
        set_params(net, params);
    }
    return report;
}

}  // namespace

TrainingReport train(Mlp& net, const WindowedDataset& ds, const TrainerConfig& cfg) {
    return train_impl(net, ds, cfg);
}

TrainingReport train(ElmanNet& net, const WindowedDataset& ds, const TrainerConfig& cfg) {
    return train_impl(net, ds, cfg);
}

}  // namespace seasoncast
