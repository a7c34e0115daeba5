#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sigmanet/data.hpp"
#include "sigmanet/matrix.hpp"
#include "sigmanet/momentum.hpp"

namespace sigmanet {

/// Affine map out = W in + b; W is (outputs x inputs).
struct MlpLayer {
    Matrix weights;
    Vector bias;

    bool operator==(const MlpLayer&) const = default;
};

/// Fully connected network, sigmoid on every hidden and output unit, one output.
struct MlpNetwork {
    std::vector<MlpLayer> layers;

    std::size_t input_dim() const noexcept { return layers.empty() ? 0 : layers.front().weights.cols(); }
    std::size_t hidden_layers() const noexcept { return layers.empty() ? 0 : layers.size() - 1; }

    /// Throws NotInitialized when layer shapes do not chain or there is no hidden layer.
    void validate() const;

    bool operator==(const MlpNetwork&) const = default;
};

using MlpGradient = std::vector<MlpLayer>;

struct MlpConfig {
    std::size_t hidden_layers = 1;
    std::size_t units_per_layer = 10;
    double lr = 0.1;
    double momentum_alpha = 0.9;
    std::size_t epochs = 1000;
    double min_improvement = 1e-9;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Depths of the reference depth sweep.
inline constexpr std::size_t kSweepDepths[] = {1, 2, 4};
bool is_sweep_depth(std::size_t hidden_layers) noexcept;

double sigmoid(double z) noexcept;

/// Weights and biases uniform in [-0.5, 0.5] / sqrt(fan_in).
MlpNetwork mlp_init(std::size_t input_dim, const MlpConfig& cfg);

double mlp_forward(const MlpNetwork& net, std::span<const double> x);

double mlp_loss(const MlpNetwork& net, std::span<const double> x, double target);

/// Backpropagated gradient of 1/2 (target - output)^2.
MlpGradient mlp_gradient(const MlpNetwork& net, std::span<const double> x, double target);

/// Training target in [0, 1]: continuous targets as given, signed ones via (y + 1) / 2.
Vector mlp_targets(const Dataset& d);

/// Per-pattern backpropagation with momentum from a fresh mlp_init. Stopping and
/// the returned state follow rbf_train.
MlpNetwork mlp_train(const Dataset& train, const MlpConfig& cfg, TrainLog* log = nullptr);
MlpNetwork mlp_train(MlpNetwork net, const Dataset& train, const MlpConfig& cfg, TrainLog* log = nullptr);

double mlp_classify(const MlpNetwork& net, std::span<const double> x, double threshold = 0.5);

}  // namespace sigmanet
