#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "sigmanet/data.hpp"
#include "sigmanet/lvq.hpp"
#include "sigmanet/matrix.hpp"
#include "sigmanet/momentum.hpp"

namespace sigmanet {

/// Gaussian hidden layer (one center and width per unit) feeding a single
/// linear output with a bias unit.
struct RbfNetwork {
    Matrix centers;     // J x dim
    Vector widths;      // J, all > 0
    Vector out_weights; // J
    double bias = 0.0;

    std::size_t hidden_units() const noexcept { return centers.rows(); }
    std::size_t dim() const noexcept { return centers.cols(); }

    /// Throws NotInitialized when the network is empty or inconsistent.
    void validate() const;

    bool operator==(const RbfNetwork&) const = default;
};

/// Gradient of E = 1/2 (y - output)^2, shaped like the network.
struct RbfGradient {
    Matrix centers;
    Vector widths;
    Vector out_weights;
    double bias = 0.0;
};

struct RbfForward {
    Vector hidden;
    double output = 0.0;
};

enum class RbfMode { FixedCenters, KohonenBackprop };

struct RbfTrainConfig {
    std::size_t hidden_units = 10;
    RbfMode mode = RbfMode::FixedCenters;
    double lr_weights = 0.05;
    double lr_centers = 0.01;
    double lr_widths = 0.01;
    double momentum_alpha = 0.9;
    std::size_t epochs = 500;
    double min_improvement = 1e-9;  // stop when the epoch MSE changes by less than this
    LvqConfig lvq;                  // k is overridden by hidden_units
    std::uint64_t seed = 0;

    void validate() const;
};

constexpr double kMinWidth = 1e-6;

RbfForward rbf_forward(const RbfNetwork& net, std::span<const double> x);
double rbf_output(const RbfNetwork& net, std::span<const double> x);

double rbf_loss(const RbfNetwork& net, std::span<const double> x, double target);
RbfGradient rbf_gradient(const RbfNetwork& net, std::span<const double> x, double target);

/// Fixed centers: J training patterns sampled without replacement, every width
/// set to the population stddev of all training input values, small random
/// output weights and bias in [-0.1, 0.1].
RbfNetwork init_mode_a(const Dataset& train, std::size_t hidden_units, std::uint64_t seed);

/// Kohonen initialization. All centers start at the mean of all training input
/// values and all widths at their stddev; LVQ-I then places the centers and,
/// after every LVQ epoch, each width becomes the mean distance from its center
/// to the patterns it wins. Units that win nothing keep their width.
RbfNetwork init_mode_b(const Dataset& train, const RbfTrainConfig& cfg);

/// Stochastic gradient descent with momentum on 1/2 (y - output)^2. FixedCenters
/// adapts output weights and bias only; KohonenBackprop also adapts centers and
/// widths. Widths are clamped to kMinWidth. Training stops when the end-of-epoch
/// MSE changes by less than min_improvement; the lowest-MSE epoch state is returned.
RbfNetwork rbf_train(RbfNetwork net, const Dataset& train, const RbfTrainConfig& cfg, TrainLog* log = nullptr);

/// Convenience: initialize per cfg.mode, then train.
RbfNetwork rbf_fit(const Dataset& train, const RbfTrainConfig& cfg, TrainLog* log = nullptr);

double rbf_classify(const RbfNetwork& net, std::span<const double> x, double threshold);

double rbf_mse(const RbfNetwork& net, const Dataset& d);

}  // namespace sigmanet
