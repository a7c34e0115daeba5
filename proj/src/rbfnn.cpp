#include "sigmanet/rbfnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sigmanet/errors.hpp"
#include "sigmanet/grnn.hpp"
#include "sigmanet/kernelmath.hpp"
#include "sigmanet/rng.hpp"

namespace sigmanet {

void RbfNetwork::validate() const {
    const std::size_t j = hidden_units();
    if (j == 0 || dim() == 0) throw NotInitialized("RBF network has no hidden units");
    if (widths.size() != j || out_weights.size() != j) {
        throw NotInitialized("RBF network parameter blocks disagree on the hidden unit count");
    }
    for (double w : widths) {
        if (!(w > 0.0)) throw NotInitialized("RBF widths must be positive");
    }
}

void RbfTrainConfig::validate() const {
    if (hidden_units < 1) throw InvalidConfig("rbfnn hidden_units must be >= 1");
    if (!(lr_weights > 0.0) || !(lr_centers > 0.0) || !(lr_widths > 0.0)) {
        throw InvalidConfig("rbfnn learning rates must be positive");
    }
    if (!(momentum_alpha >= 0.0 && momentum_alpha < 1.0)) throw InvalidConfig("rbfnn momentum must lie in [0, 1)");
}

RbfForward rbf_forward(const RbfNetwork& net, std::span<const double> x) {
    if (x.size() != net.dim()) throw DimensionMismatch(net.dim(), x.size());
    RbfForward f{Vector(net.hidden_units()), net.bias};
    for (std::size_t j = 0; j < net.hidden_units(); ++j) {
        f.hidden[j] = gaussian_from_sq(sq_euclidean(x, net.centers.row(j)), net.widths[j]);
        f.output += net.out_weights[j] * f.hidden[j];
    }
    return f;
}

double rbf_output(const RbfNetwork& net, std::span<const double> x) { return rbf_forward(net, x).output; }

double rbf_loss(const RbfNetwork& net, std::span<const double> x, double target) {
    const double e = target - rbf_output(net, x);
    return 0.5 * e * e;
}

RbfGradient rbf_gradient(const RbfNetwork& net, std::span<const double> x, double target) {
    const auto f = rbf_forward(net, x);
    const double err = target - f.output;
    const std::size_t units = net.hidden_units();
    RbfGradient g{Matrix(units, net.dim()), Vector(units), Vector(units), -err};
    for (std::size_t j = 0; j < units; ++j) {
        const double h = f.hidden[j];
        const double s = net.widths[j];
        const double s2 = s * s;
        const auto mu = net.centers.row(j);
        g.out_weights[j] = -err * h;
        // dh/dmu_i = h (x_i - mu_i) / s^2 ; dh/ds = h ||x - mu||^2 / s^3
        const double common = -err * net.out_weights[j] * h;
        auto gc = g.centers.row(j);
        double sq = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            const double d = x[i] - mu[i];
            gc[i] = common * d / s2;
            sq += d * d;
        }
        g.widths[j] = common * sq / (s2 * s);
    }
    return g;
}

namespace {

struct InputStats {
    double mean;
    double stddev;
};

// Mean and population stddev over every input value of the set.
InputStats all_input_stats(const Dataset& d) {
    const auto values = d.features().data();
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::max(std::sqrt(ss / n), kMinWidth)};
}

void init_output_layer(RbfNetwork& net, Rng& rng) {
    net.out_weights.resize(net.hidden_units());
    for (double& w : net.out_weights) w = rng.uniform(-0.1, 0.1);
    net.bias = rng.uniform(-0.1, 0.1);
}

}  // namespace

RbfNetwork init_mode_a(const Dataset& train, std::size_t hidden_units, std::uint64_t seed) {
    if (hidden_units < 1) throw InvalidConfig("rbfnn hidden_units must be >= 1");
    if (hidden_units > train.size()) {
        throw TooFewPatterns("fixed-center RBF network needs at least " + std::to_string(hidden_units) +
                             " patterns, got " + std::to_string(train.size()));
    }
    Rng rng(seed);
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span(order));
    order.resize(hidden_units);

    RbfNetwork net;
    net.centers = train.features().select_rows(order);
    net.widths.assign(hidden_units, all_input_stats(train).stddev);
    init_output_layer(net, rng);
    return net;
}

RbfNetwork init_mode_b(const Dataset& train, const RbfTrainConfig& cfg) {
    cfg.validate();
    if (cfg.hidden_units > train.size()) {
        throw TooFewPatterns("Kohonen RBF initialization needs at least " + std::to_string(cfg.hidden_units) +
                             " patterns, got " + std::to_string(train.size()));
    }
    const auto stats = all_input_stats(train);
    const std::size_t units = cfg.hidden_units;

    Codebook start{Matrix(units, train.dim(), stats.mean), std::vector<std::size_t>(units, 0), std::nullopt};
    Vector widths(units, stats.stddev);

    auto recompute_widths = [&](const Codebook& cb, std::size_t) {
        Vector dist_sum(units, 0.0);
        std::vector<std::size_t> wins(units, 0);
        for (std::size_t p = 0; p < train.size(); ++p) {
            const auto x = train.pattern(p);
            const std::size_t w = winner(cb, x, 0.0);
            dist_sum[w] += std::sqrt(sq_euclidean(x, cb.centers.row(w)));
            ++wins[w];
        }
        for (std::size_t j = 0; j < units; ++j) {
            if (wins[j] > 0) widths[j] = std::max(dist_sum[j] / static_cast<double>(wins[j]), kMinWidth);
        }
    };

    LvqConfig lvq = cfg.lvq;
    lvq.k = units;
    lvq.seed = cfg.seed;
    const Codebook cb = train_lvq1(train, lvq, std::move(start), recompute_widths);

    RbfNetwork net;
    net.centers = cb.centers;
    net.widths = widths;
    Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    init_output_layer(net, rng);
    return net;
}

RbfNetwork rbf_train(RbfNetwork net, const Dataset& train, const RbfTrainConfig& cfg, TrainLog* log) {
    net.validate();
    cfg.validate();
    if (train.empty()) throw EmptyDataset("rbf training needs patterns");
    if (train.dim() != net.dim()) throw DimensionMismatch(net.dim(), train.dim());

    const bool adapt_hidden = cfg.mode == RbfMode::KohonenBackprop;
    const std::size_t units = net.hidden_units();
    MomentumBuffer m_weights(units);
    MomentumBuffer m_bias(1);
    MomentumBuffer m_centers(units * net.dim());
    MomentumBuffer m_widths(units);

    Rng rng(cfg.seed);
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    double previous_mse = 0.0;
    RbfNetwork best = net;
    double best_mse = std::numeric_limits<double>::infinity();

    std::size_t epoch = 0;
    for (; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(std::span(order));
        for (auto p : order) {
            const auto x = train.pattern(p);
            const auto g = rbf_gradient(net, x, train.target(p));
            m_weights.step(net.out_weights, g.out_weights, cfg.lr_weights, cfg.momentum_alpha);
            m_bias.step(std::span(&net.bias, 1), std::span(&g.bias, 1), cfg.lr_weights, cfg.momentum_alpha);
            if (adapt_hidden) {
                m_centers.step(net.centers.data(), g.centers.data(), cfg.lr_centers, cfg.momentum_alpha);
                m_widths.step(net.widths, g.widths, cfg.lr_widths, cfg.momentum_alpha);
                for (double& w : net.widths) w = std::max(w, kMinWidth);
            }
        }
        // Scored at the end of the epoch; the lowest-error state is returned.
        const double mse = rbf_mse(net, train);
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

RbfNetwork rbf_fit(const Dataset& train, const RbfTrainConfig& cfg, TrainLog* log) {
    RbfNetwork net = cfg.mode == RbfMode::FixedCenters ? init_mode_a(train, cfg.hidden_units, cfg.seed)
                                                       : init_mode_b(train, cfg);
    return rbf_train(std::move(net), train, cfg, log);
}

double rbf_classify(const RbfNetwork& net, std::span<const double> x, double threshold) {
    return threshold_label(rbf_output(net, x), threshold);
}

double rbf_mse(const RbfNetwork& net, const Dataset& d) {
    if (d.empty()) throw EmptyDataset("mse of an empty dataset");
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double e = d.target(i) - rbf_output(net, d.pattern(i));
        s += e * e;
    }
    return s / static_cast<double>(d.size());
}

}  // namespace sigmanet
