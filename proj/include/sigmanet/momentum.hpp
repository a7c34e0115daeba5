#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sigmanet {

/// Previous-step memory for one parameter block:
/// delta(t) = -lr * grad + alpha * delta(t-1).
class MomentumBuffer {
public:
    MomentumBuffer() = default;
    explicit MomentumBuffer(std::size_t size) : previous_(size, 0.0) {}

    /// Applies one step to `params` in place and remembers the deltas.
    void step(std::span<double> params, std::span<const double> grad, double lr, double alpha) {
        for (std::size_t i = 0; i < params.size(); ++i) {
            const double delta = -lr * grad[i] + alpha * previous_[i];
            params[i] += delta;
            previous_[i] = delta;
        }
    }

    std::span<const double> previous() const noexcept { return previous_; }

private:
    std::vector<double> previous_;
};

/// Per-epoch record kept by the gradient trainers.
struct TrainLog {
    std::vector<double> epoch_mse;  // training-set MSE at the end of each epoch
    std::size_t epochs_run = 0;
};

}  // namespace sigmanet
