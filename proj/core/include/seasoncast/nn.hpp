#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace seasoncast {

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }
};

enum class Activation { tanh, linear };

double tanh_act(double x);

struct Layer {
    Matrix weights;              // out x in
    std::vector<double> biases;  // out
    Activation activation = Activation::tanh;
};

// Feed-forward network: tanh hidden layers, one linear output unit.
struct Mlp {
    std::vector<std::size_t> layer_sizes;  // e.g. {6, 8, 4, 1}
    std::vector<Layer> layers;

    // Weights uniform in [-0.5, 0.5) from the given seed, biases zero.
    static Mlp create(std::span<const std::size_t> sizes, std::uint64_t seed);

    std::size_t input_size() const { return layer_sizes.front(); }
    std::size_t parameter_count() const;

    // Throws std::invalid_argument if sizes, shapes and activation tags
    // are not mutually consistent or any parameter is non-finite.
    void validate() const;
};

// Elman variant: the first hidden layer additionally receives its own
// previous activations through a square recurrent matrix.
struct ElmanNet {
    Mlp base;
    Matrix recurrent_weights;     // h1 x h1
    std::vector<double> context;  // previous first-hidden activations

    // Layer draws match Mlp::create for the same seed; the recurrent
    // matrix is drawn afterwards. Context starts at zero.
    static ElmanNet create(std::span<const std::size_t> sizes, std::uint64_t seed);

    std::size_t input_size() const { return base.input_size(); }
    std::size_t parameter_count() const;
    void reset_context();
    void validate() const;
};

// Post-activation values per layer; activations[0] is the input itself.
struct ForwardTrace {
    std::vector<std::vector<double>> activations;
};

double forward_mlp(const Mlp& net, std::span<const double> input, ForwardTrace* trace = nullptr);

struct ElmanStep {
    double output = 0.0;
    std::vector<double> new_context;  // first-hidden activations of this step
};

// Does not touch net.context; committing the returned context is the
// caller's call (commit when stepping through time, keep when probing).
ElmanStep forward_elman(const ElmanNet& net, std::span<const double> input,
                        ForwardTrace* trace = nullptr);

// dMSE/dparameter, shape-congruent with the source network.
struct Gradients {
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
    Matrix recurrent;  // empty for plain MLPs

    static Gradients zeros_like(const Mlp& net);
    static Gradients zeros_like(const ElmanNet& net);
};

// Batch MSE of the network outputs against targets. The Elman overload
// holds the stored context fixed for every sample, so this is exactly the
// function backprop and numeric_gradient differentiate.
double batch_mse(const Mlp& net, const std::vector<std::vector<double>>& inputs,
                 const std::vector<double>& targets);
double batch_mse(const ElmanNet& net, const std::vector<std::vector<double>>& inputs,
                 const std::vector<double>& targets);

// Analytic gradient of the batch MSE. Context units of an Elman network are
// frozen inputs here (truncated one-step gradient).
Gradients backprop(const Mlp& net, const std::vector<std::vector<double>>& inputs,
                   const std::vector<double>& targets);
Gradients backprop(const ElmanNet& net, const std::vector<std::vector<double>>& inputs,
                   const std::vector<double>& targets);

// Central-difference oracle, (mse(X+eps) - mse(X-eps)) / (2 eps) per parameter.
Gradients numeric_gradient(const Mlp& net, const std::vector<std::vector<double>>& inputs,
                           const std::vector<double>& targets, double eps);
Gradients numeric_gradient(const ElmanNet& net, const std::vector<std::vector<double>>& inputs,
                           const std::vector<double>& targets, double eps);

// Flat parameter order, used by the momentum state, the numeric oracle and
// the model file: per layer weights row-major then biases, and for Elman
// networks the recurrent matrix row-major at the end. Context is state,
// not a parameter, and is never part of the flat vector.
std::vector<double> flatten_params(const Mlp& net);
std::vector<double> flatten_params(const ElmanNet& net);
void set_params(Mlp& net, std::span<const double> flat);
void set_params(ElmanNet& net, std::span<const double> flat);
std::vector<double> flatten(const Gradients& grads);

}  // namespace seasoncast
