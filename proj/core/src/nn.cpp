#include "seasoncast/nn.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "seasoncast/rng.hpp"

namespace seasoncast {

// std::tanh rounds to exactly +-1 for |x| beyond ~19; nudge those back so
// the output range stays the open interval (-1, 1).
double tanh_act(double x) {
    double y = std::tanh(x);
    if (y >= 1.0) return std::nextafter(1.0, 0.0);
    if (y <= -1.0) return std::nextafter(-1.0, 0.0);
    return y;
}

namespace {

void check_batch(std::size_t input_size, const std::vector<std::vector<double>>& inputs,
                 const std::vector<double>& targets) {
    if (inputs.empty()) {
        throw std::invalid_argument("empty batch");
    }
    if (inputs.size() != targets.size()) {
        throw std::invalid_argument("batch has " + std::to_string(inputs.size()) +
                                    " inputs but " + std::to_string(targets.size()) + " targets");
    }
    for (const auto& in : inputs) {
        if (in.size() != input_size) {
            throw std::invalid_argument("input width " + std::to_string(in.size()) +
                                        " does not match network input size " +
                                        std::to_string(input_size));
        }
    }
}

std::vector<Layer> init_layers(std::span<const std::size_t> sizes, std::mt19937_64& rng) {
    std::vector<Layer> layers;
    layers.reserve(sizes.size() - 1);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        Layer layer;
        layer.weights = Matrix(sizes[l + 1], sizes[l]);
        for (double& w : layer.weights.data) {
            w = uniform_in(rng, -0.5, 0.5);
        }
        layer.biases.assign(sizes[l + 1], 0.0);
        layer.activation = (l + 2 == sizes.size()) ? Activation::linear : Activation::tanh;
        layers.push_back(std::move(layer));
    }
    return layers;
}

void check_sizes(std::span<const std::size_t> sizes) {
    if (sizes.size() < 2) {
        throw std::invalid_argument("layer_sizes needs at least input and output");
    }
    for (std::size_t s : sizes) {
        if (s == 0) {
            throw std::invalid_argument("layer sizes must be positive");
        }
    }
    if (sizes.back() != 1) {
        throw std::invalid_argument("output layer must have exactly one unit");
    }
}

// Shared by both network kinds; `recurrent`/`context` are null for the MLP.
double forward_pass(const std::vector<Layer>& layers, std::span<const double> input,
                    const Matrix* recurrent, const std::vector<double>* context,
                    ForwardTrace* trace) {
    if (trace) {
        trace->activations.clear();
        trace->activations.emplace_back(input.begin(), input.end());
    }
    std::vector<double> current(input.begin(), input.end());
    std::vector<double> next;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const Layer& layer = layers[l];
        next.assign(layer.weights.rows, 0.0);
        for (std::size_t i = 0; i < layer.weights.rows; ++i) {
            double z = layer.biases[i];
            for (std::size_t j = 0; j < layer.weights.cols; ++j) {
                z += layer.weights(i, j) * current[j];
            }
            if (l == 0 && recurrent) {
                for (std::size_t j = 0; j < recurrent->cols; ++j) {
                    z += (*recurrent)(i, j) * (*context)[j];
                }
            }
            next[i] = layer.activation == Activation::tanh ? tanh_act(z) : z;
        }
        current = next;
        if (trace) {
            trace->activations.push_back(current);
        }
    }
    return current.front();
}

}  // namespace

Mlp Mlp::create(std::span<const std::size_t> sizes, std::uint64_t seed) {
    check_sizes(sizes);
    std::mt19937_64 rng(seed);
    Mlp net;
    net.layer_sizes.assign(sizes.begin(), sizes.end());
    net.layers = init_layers(sizes, rng);
    return net;
}

std::size_t Mlp::parameter_count() const {
    std::size_t n = 0;
    for (const Layer& layer : layers) {
        n += layer.weights.size() + layer.biases.size();
    }
    return n;
}

void Mlp::validate() const {
    check_sizes(layer_sizes);
    if (layers.size() + 1 != layer_sizes.size()) {
        throw std::invalid_argument("layer count does not match layer_sizes");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const Layer& layer = layers[l];
        if (layer.weights.rows != layer_sizes[l + 1] || layer.weights.cols != layer_sizes[l]) {
            throw std::invalid_argument("weight matrix shape mismatch at layer " +
                                        std::to_string(l));
        }
        if (layer.biases.size() != layer_sizes[l + 1]) {
            throw std::invalid_argument("bias length mismatch at layer " + std::to_string(l));
        }
        Activation expected =
            (l + 1 == layers.size()) ? Activation::linear : Activation::tanh;
        if (layer.activation != expected) {
            throw std::invalid_argument("activation tag mismatch at layer " + std::to_string(l));
        }
        for (double w : layer.weights.data) {
            if (!std::isfinite(w)) throw std::invalid_argument("non-finite weight");
        }
        for (double b : layer.biases) {
            if (!std::isfinite(b)) throw std::invalid_argument("non-finite bias");
        }
    }
}

ElmanNet ElmanNet::create(std::span<const std::size_t> sizes, std::uint64_t seed) {
    check_sizes(sizes);
    if (sizes.size() < 3) {
        throw std::invalid_argument("an Elman network needs at least one hidden layer");
    }
    std::mt19937_64 rng(seed);
    ElmanNet net;
    net.base.layer_sizes.assign(sizes.begin(), sizes.end());
    net.base.layers = init_layers(sizes, rng);
    std::size_t h1 = sizes[1];
    net.recurrent_weights = Matrix(h1, h1);
    for (double& w : net.recurrent_weights.data) {
        w = uniform_in(rng, -0.5, 0.5);
    }
    net.context.assign(h1, 0.0);
    return net;
}

std::size_t ElmanNet::parameter_count() const {
    return base.parameter_count() + recurrent_weights.size();
}

void ElmanNet::reset_context() { context.assign(context.size(), 0.0); }

void ElmanNet::validate() const {
    base.validate();
    std::size_t h1 = base.layer_sizes[1];
    if (recurrent_weights.rows != h1 || recurrent_weights.cols != h1) {
        throw std::invalid_argument("recurrent matrix must be square of first hidden size");
    }
    if (context.size() != h1) {
        throw std::invalid_argument("context length must equal first hidden size");
    }
    for (double w : recurrent_weights.data) {
        if (!std::isfinite(w)) throw std::invalid_argument("non-finite recurrent weight");
    }
}

double forward_mlp(const Mlp& net, std::span<const double> input, ForwardTrace* trace) {
    if (input.size() != net.input_size()) {
        throw std::invalid_argument("input width " + std::to_string(input.size()) +
                                    " does not match network input size " +
                                    std::to_string(net.input_size()));
    }
    return forward_pass(net.layers, input, nullptr, nullptr, trace);
}

ElmanStep forward_elman(const ElmanNet& net, std::span<const double> input, ForwardTrace* trace) {
    if (input.size() != net.input_size()) {
        throw std::invalid_argument("input width " + std::to_string(input.size()) +
                                    " does not match network input size " +
                                    std::to_string(net.input_size()));
    }
    ForwardTrace local;
    ForwardTrace* t = trace ? trace : &local;
    ElmanStep step;
    step.output = forward_pass(net.base.layers, input, &net.recurrent_weights, &net.context, t);
    step.new_context = t->activations[1];
    return step;
}

Gradients Gradients::zeros_like(const Mlp& net) {
    Gradients g;
    for (const Layer& layer : net.layers) {
        g.weights.emplace_back(layer.weights.rows, layer.weights.cols);
        g.biases.emplace_back(layer.biases.size(), 0.0);
    }
    return g;
}

Gradients Gradients::zeros_like(const ElmanNet& net) {
    Gradients g = zeros_like(net.base);
    g.recurrent = Matrix(net.recurrent_weights.rows, net.recurrent_weights.cols);
    return g;
}

namespace {

double batch_mse_impl(const std::vector<Layer>& layers, const Matrix* recurrent,
                      const std::vector<double>* context,
                      const std::vector<std::vector<double>>& inputs,
                      const std::vector<double>& targets) {
    double sum = 0.0;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        double y = forward_pass(layers, inputs[s], recurrent, context, nullptr);
        double r = y - targets[s];
        sum += r * r;
    }
    return sum / static_cast<double>(inputs.size());
}

// Accumulates dMSE/dX for one sample into `grads`; `delta` scratch reused.
void accumulate_sample(const std::vector<Layer>& layers, const ForwardTrace& trace,
                       double residual_scale, const std::vector<double>* context,
                       Gradients& grads) {
    std::vector<double> delta{residual_scale};  // output layer is linear, width 1
    for (std::size_t l = layers.size(); l-- > 0;) {
        const Layer& layer = layers[l];
        const std::vector<double>& below = trace.activations[l];
        for (std::size_t i = 0; i < layer.weights.rows; ++i) {
            for (std::size_t j = 0; j < layer.weights.cols; ++j) {
                grads.weights[l](i, j) += delta[i] * below[j];
            }
            grads.biases[l][i] += delta[i];
        }
        if (l == 0 && context) {
            for (std::size_t i = 0; i < grads.recurrent.rows; ++i) {
                for (std::size_t j = 0; j < grads.recurrent.cols; ++j) {
                    grads.recurrent(i, j) += delta[i] * (*context)[j];
                }
            }
        }
        if (l > 0) {
            // below is the tanh output of layer l-1, so tanh' = 1 - below^2.
            std::vector<double> prev(layer.weights.cols, 0.0);
            for (std::size_t j = 0; j < layer.weights.cols; ++j) {
                double back = 0.0;
                for (std::size_t i = 0; i < layer.weights.rows; ++i) {
                    back += layer.weights(i, j) * delta[i];
                }
                prev[j] = back * (1.0 - below[j] * below[j]);
            }
            delta = std::move(prev);
        }
    }
}

template <typename Net>
Gradients backprop_impl(const Net& net, const std::vector<Layer>& layers,
                        const Matrix* recurrent, const std::vector<double>* context,
                        const std::vector<std::vector<double>>& inputs,
                        const std::vector<double>& targets) {
    Gradients grads = Gradients::zeros_like(net);
    ForwardTrace trace;
    double inv_n = 1.0 / static_cast<double>(inputs.size());
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        double y = forward_pass(layers, inputs[s], recurrent, context, &trace);
        double residual_scale = 2.0 * (y - targets[s]) * inv_n;
        accumulate_sample(layers, trace, residual_scale, context, grads);
    }
    return grads;
}

Gradients gradients_from_flat(const Gradients& shape, std::span<const double> flat) {
    Gradients g = shape;
    std::size_t k = 0;
    for (std::size_t l = 0; l < g.weights.size(); ++l) {
        for (double& w : g.weights[l].data) w = flat[k++];
        for (double& b : g.biases[l]) b = flat[k++];
    }
    for (double& r : g.recurrent.data) r = flat[k++];
    return g;
}

// Extended-precision batch MSE over a flat parameter vector, same layout as
// flatten_params. Keeps the central-difference noise floor far below the
// 1e-6 gradient-check tolerance even where true gradients are tiny.
long double batch_mse_ld(std::span<const std::size_t> sizes, bool elman,
                         const std::vector<long double>& flat,
                         const std::vector<double>& context,
                         const std::vector<std::vector<double>>& inputs,
                         const std::vector<double>& targets) {
    std::size_t recurrent_base = elman ? flat.size() - sizes[1] * sizes[1] : 0;
    long double sum = 0.0L;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        std::vector<long double> current(inputs[s].begin(), inputs[s].end());
        std::vector<long double> next;
        std::size_t k = 0;
        for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
            std::size_t weight_base = k;
            k += sizes[l + 1] * sizes[l];
            std::size_t bias_base = k;
            k += sizes[l + 1];
            next.assign(sizes[l + 1], 0.0L);
            for (std::size_t i = 0; i < sizes[l + 1]; ++i) {
                long double z = flat[bias_base + i];
                for (std::size_t j = 0; j < sizes[l]; ++j) {
                    z += flat[weight_base + i * sizes[l] + j] * current[j];
                }
                if (l == 0 && elman) {
                    for (std::size_t j = 0; j < sizes[1]; ++j) {
                        z += flat[recurrent_base + i * sizes[1] + j] * (long double)context[j];
                    }
                }
                next[i] = (l + 2 == sizes.size()) ? z : std::tanh(z);
            }
            current = next;
        }
        long double r = current.front() - (long double)targets[s];
        sum += r * r;
    }
    return sum / (long double)inputs.size();
}

template <typename Net>
Gradients numeric_gradient_impl(const Net& net, const std::vector<std::vector<double>>& inputs,
                                const std::vector<double>& targets, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    constexpr bool elman = std::is_same_v<Net, ElmanNet>;
    std::span<const std::size_t> sizes;
    const std::vector<double>* context = nullptr;
    static const std::vector<double> no_context;
    if constexpr (elman) {
        sizes = net.base.layer_sizes;
        context = &net.context;
    } else {
        sizes = net.layer_sizes;
        context = &no_context;
    }

    std::vector<double> flat_d = flatten_params(net);
    std::vector<long double> flat(flat_d.begin(), flat_d.end());
    std::vector<double> grad(flat.size(), 0.0);
    const long double step = eps;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        long double original = flat[i];
        flat[i] = original + step;
        long double up = batch_mse_ld(sizes, elman, flat, *context, inputs, targets);
        flat[i] = original - step;
        long double down = batch_mse_ld(sizes, elman, flat, *context, inputs, targets);
        flat[i] = original;
        grad[i] = static_cast<double>((up - down) / (2.0L * step));
    }
    return gradients_from_flat(Gradients::zeros_like(net), grad);
}

}  // namespace

double batch_mse(const Mlp& net, const std::vector<std::vector<double>>& inputs,
                 const std::vector<double>& targets) {
    check_batch(net.input_size(), inputs, targets);
    return batch_mse_impl(net.layers, nullptr, nullptr, inputs, targets);
}

double batch_mse(const ElmanNet& net, const std::vector<std::vector<double>>& inputs,
                 const std::vector<double>& targets) {
    check_batch(net.input_size(), inputs, targets);
    return batch_mse_impl(net.base.layers, &net.recurrent_weights, &net.context, inputs, targets);
}

Gradients backprop(const Mlp& net, const std::vector<std::vector<double>>& inputs,
                   const std::vector<double>& targets) {
    check_batch(net.input_size(), inputs, targets);
    return backprop_impl(net, net.layers, nullptr, nullptr, inputs, targets);
}

Gradients backprop(const ElmanNet& net, const std::vector<std::vector<double>>& inputs,
                   const std::vector<double>& targets) {
    check_batch(net.input_size(), inputs, targets);
    return backprop_impl(net, net.base.layers, &net.recurrent_weights, &net.context, inputs,
                         targets);
}

Gradients numeric_gradient(const Mlp& net, const std::vector<std::vector<double>>& inputs,
                           const std::vector<double>& targets, double eps) {
    check_batch(net.input_size(), inputs, targets);
    return numeric_gradient_impl(net, inputs, targets, eps);
}

Gradients numeric_gradient(const ElmanNet& net, const std::vector<std::vector<double>>& inputs,
                           const std::vector<double>& targets, double eps) {
    check_batch(net.input_size(), inputs, targets);
    return numeric_gradient_impl(net, inputs, targets, eps);
}

std::vector<double> flatten_params(const Mlp& net) {
    std::vector<double> flat;
    flat.reserve(net.parameter_count());
    for (const Layer& layer : net.layers) {
        flat.insert(flat.end(), layer.weights.data.begin(), layer.weights.data.end());
        flat.insert(flat.end(), layer.biases.begin(), layer.biases.end());
    }
    return flat;
}

std::vector<double> flatten_params(const ElmanNet& net) {
    std::vector<double> flat = flatten_params(net.base);
    flat.insert(flat.end(), net.recurrent_weights.data.begin(), net.recurrent_weights.data.end());
    return flat;
}

namespace {

std::size_t set_layer_params(std::vector<Layer>& layers, std::span<const double> flat) {
    std::size_t k = 0;
    for (Layer& layer : layers) {
        for (double& w : layer.weights.data) w = flat[k++];
        for (double& b : layer.biases) b = flat[k++];
    }
    return k;
}

}  // namespace

void set_params(Mlp& net, std::span<const double> flat) {
    if (flat.size() != net.parameter_count()) {
        throw std::invalid_argument("flat parameter vector has wrong length");
    }
    set_layer_params(net.layers, flat);
}

void set_params(ElmanNet& net, std::span<const double> flat) {
    if (flat.size() != net.parameter_count()) {
        throw std::invalid_argument("flat parameter vector has wrong length");
    }
    std::size_t k = set_layer_params(net.base.layers, flat);
    for (double& r : net.recurrent_weights.data) r = flat[k++];
}

std::vector<double> flatten(const Gradients& grads) {
    std::vector<double> flat;
    for (std::size_t l = 0; l < grads.weights.size(); ++l) {
        flat.insert(flat.end(), grads.weights[l].data.begin(), grads.weights[l].data.end());
        flat.insert(flat.end(), grads.biases[l].begin(), grads.biases[l].end());
    }
    flat.insert(flat.end(), grads.recurrent.data.begin(), grads.recurrent.data.end());
    return flat;
}

}  // namespace seasoncast
