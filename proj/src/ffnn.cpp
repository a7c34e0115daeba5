#include "sigmanet/ffnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sigmanet/errors.hpp"
#include "sigmanet/grnn.hpp"
#include "sigmanet/rng.hpp"

namespace sigmanet {

void MlpNetwork::validate() const {
    if (layers.size() < 2) throw NotInitialized("network needs at least one hidden layer");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& layer = layers[l];
        if (layer.weights.rows() == 0 || layer.weights.cols() == 0 || layer.bias.size() != layer.weights.rows()) {
            throw NotInitialized("layer " + std::to_string(l) + " is empty or inconsistent");
        }
        if (l > 0 && layer.weights.cols() != layers[l - 1].weights.rows()) {
            throw NotInitialized("layer " + std::to_string(l) + " does not chain with its predecessor");
        }
    }
    if (layers.back().weights.rows() != 1) throw NotInitialized("network must have a single output");
}

void MlpConfig::validate() const {
    if (hidden_layers < 1) throw InvalidConfig("ffnn hidden_layers must be >= 1");
    if (units_per_layer < 1) throw InvalidConfig("ffnn units_per_layer must be >= 1");
    if (!(lr >= 0.0)) throw InvalidConfig("ffnn lr must be >= 0");
    if (!(momentum_alpha >= 0.0 && momentum_alpha < 1.0)) throw InvalidConfig("ffnn momentum must lie in [0, 1)");
}

bool is_sweep_depth(std::size_t hidden_layers) noexcept {
    return std::find(std::begin(kSweepDepths), std::end(kSweepDepths), hidden_layers) != std::end(kSweepDepths);
}

double sigmoid(double z) noexcept { return 1.0 / (1.0 + std::exp(-z)); }

MlpNetwork mlp_init(std::size_t input_dim, const MlpConfig& cfg) {
    cfg.validate();
    if (input_dim == 0) throw InvalidConfig("ffnn input dimension must be positive");
    Rng rng(cfg.seed);
    MlpNetwork net;
    std::size_t fan_in = input_dim;
    for (std::size_t l = 0; l <= cfg.hidden_layers; ++l) {
        const std::size_t out = l == cfg.hidden_layers ? 1 : cfg.units_per_layer;
        const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
        MlpLayer layer{Matrix(out, fan_in), Vector(out)};
        for (double& w : layer.weights.data()) w = rng.uniform(-0.5, 0.5) * scale;
        for (double& b : layer.bias) b = rng.uniform(-0.5, 0.5) * scale;
        net.layers.push_back(std::move(layer));
        fan_in = out;
    }
    return net;
}

namespace {

// Activations of every layer; element 0 is the input itself.
std::vector<Vector> forward_all(const MlpNetwork& net, std::span<const double> x) {
    if (x.size() != net.input_dim()) throw DimensionMismatch(net.input_dim(), x.size());
    std::vector<Vector> acts;
    acts.reserve(net.layers.size() + 1);
    acts.emplace_back(x.begin(), x.end());
    for (const auto& layer : net.layers) {
        const Vector& in = acts.back();
        Vector out(layer.weights.rows());
        for (std::size_t r = 0; r < out.size(); ++r) {
            const auto w = layer.weights.row(r);
            double z = layer.bias[r];
            for (std::size_t c = 0; c < in.size(); ++c) z += w[c] * in[c];
            out[r] = sigmoid(z);
        }
        acts.push_back(std::move(out));
    }
    return acts;
}

}  // namespace

double mlp_forward(const MlpNetwork& net, std::span<const double> x) { return forward_all(net, x).back()[0]; }

double mlp_loss(const MlpNetwork& net, std::span<const double> x, double target) {
    const double e = target - mlp_forward(net, x);
    return 0.5 * e * e;
}

MlpGradient mlp_gradient(const MlpNetwork& net, std::span<const double> x, double target) {
    const auto acts = forward_all(net, x);
    MlpGradient grad(net.layers.size());

    const double o = acts.back()[0];
    Vector delta{-(target - o) * o * (1.0 - o)};
    for (std::size_t l = net.layers.size(); l-- > 0;) {
        const auto& layer = net.layers[l];
        const Vector& in = acts[l];
        auto& g = grad[l];
        g.weights = Matrix(layer.weights.rows(), layer.weights.cols());
        g.bias = delta;
        for (std::size_t r = 0; r < delta.size(); ++r) {
            auto gw = g.weights.row(r);
            for (std::size_t c = 0; c < in.size(); ++c) gw[c] = delta[r] * in[c];
        }
        if (l == 0) break;
        Vector prev(in.size(), 0.0);
        for (std::size_t r = 0; r < delta.size(); ++r) {
            const auto w = layer.weights.row(r);
            for (std::size_t c = 0; c < in.size(); ++c) prev[c] += w[c] * delta[r];
        }
        for (std::size_t c = 0; c < in.size(); ++c) prev[c] *= in[c] * (1.0 - in[c]);
        delta = std::move(prev);
    }
    return grad;
}

Vector mlp_targets(const Dataset& d) {
    Vector t = d.targets();
    if (d.label_space() == LabelSpace::SignedBinary) {
        for (double& v : t) v = 0.5 * (v + 1.0);
        return t;
    }
    for (double v : t) {
        if (v < 0.0 || v > 1.0) throw InvalidConfig("ffnn continuous targets must lie in [0, 1]");
    }
    return t;
}

MlpNetwork mlp_train(const Dataset& train, const MlpConfig& cfg, TrainLog* log) {
    if (train.empty()) throw EmptyDataset("ffnn training needs patterns");
    return mlp_train(mlp_init(train.dim(), cfg), train, cfg, log);
}

MlpNetwork mlp_train(MlpNetwork net, const Dataset& train, const MlpConfig& cfg, TrainLog* log) {
    cfg.validate();
    net.validate();
    if (train.empty()) throw EmptyDataset("ffnn training needs patterns");
    if (train.dim() != net.input_dim()) throw DimensionMismatch(net.input_dim(), train.dim());
    const Vector targets = mlp_targets(train);

    std::vector<MomentumBuffer> m_weights;
    std::vector<MomentumBuffer> m_bias;
    for (const auto& layer : net.layers) {
        m_weights.emplace_back(layer.weights.data().size());
        m_bias.emplace_back(layer.bias.size());
    }

    // Shuffling draws from a stream distinct from the initializer's.
    Rng rng(cfg.seed ^ 0xd1b54a32d192ed03ULL);
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    double previous_mse = 0.0;
    MlpNetwork best = net;
    double best_mse = std::numeric_limits<double>::infinity();

    std::size_t epoch = 0;
    for (; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(std::span(order));
        for (auto p : order) {
            const auto grad = mlp_gradient(net, train.pattern(p), targets[p]);
            for (std::size_t l = 0; l < net.layers.size(); ++l) {
                m_weights[l].step(net.layers[l].weights.data(), grad[l].weights.data(), cfg.lr, cfg.momentum_alpha);
                m_bias[l].step(net.layers[l].bias, grad[l].bias, cfg.lr, cfg.momentum_alpha);
            }
        }
        double sq_err = 0.0;
        for (std::size_t p = 0; p < train.size(); ++p) {
            const double e = targets[p] - mlp_forward(net, train.pattern(p));
            sq_err += e * e;
        }
        const double mse = sq_err / static_cast<double>(train.size());
        if (log) log->epoch_mse.push_back(mse);
        if (mse < best_mse) {
            best_mse = mse;
            best = net;
        }
        if (epoch > 0 && std::abs(previous_mse - mse) < cfg.min_improvement) {
            ++epoch;
            break;
        }
        previous_mse = mse;
    }
    if (log) log->epochs_run = epoch;
    return best;
}

double mlp_classify(const MlpNetwork& net, std::span<const double> x, double threshold) {
    return threshold_label(mlp_forward(net, x), threshold);
}

}  // namespace sigmanet
