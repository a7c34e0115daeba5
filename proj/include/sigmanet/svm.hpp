#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sigmanet/data.hpp"
#include "sigmanet/kernelmath.hpp"
#include "sigmanet/matrix.hpp"

namespace sigmanet {

enum class KernelKind { Linear, Gaussian };

struct SvmKernel {
    KernelKind kind = KernelKind::Linear;
    double sigma = 1.0;  // Gaussian only

    static SvmKernel linear() { return {KernelKind::Linear, 1.0}; }
    static SvmKernel gaussian(GaussianKernelParams p) { return {KernelKind::Gaussian, p.sigma()}; }

    double operator()(std::span<const double> x, std::span<const double> y) const;

    bool operator==(const SvmKernel&) const = default;
};

struct SvmConfig {
    double c = 1.0;
    double tol = 1e-3;
    std::size_t max_passes = 10;      // consecutive passes without a change before stopping
    std::size_t max_iterations = 20000;  // hard cap on passes over the data
    SvmKernel kernel;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Trained model. Only rows with a positive multiplier are kept;
/// `support_indices` points back into the training set.
struct SvmModel {
    Matrix support_vectors;
    Vector support_targets;
    Vector alphas;
    std::vector<std::size_t> support_indices;
    double bias_b = 0.0;
    SvmKernel kernel;
    double c = 1.0;

    std::size_t dim() const noexcept { return support_vectors.cols(); }

    bool operator==(const SvmModel&) const = default;
};

/// Simplified SMO on the dual: for every multiplier violating the KKT
/// conditions a random partner is tried first (then every other index), and
/// the solver stops after `max_passes` sweeps without change. The bias is
/// finally re-estimated from the free support vectors.
SvmModel svm_train(const Dataset& train, const SvmConfig& cfg);

/// f(x) = sum_i alpha_i y_i k(x_i, x) + b
double svm_decision(const SvmModel& m, std::span<const double> x);

/// sign(f(x)) with f(x) = 0 mapped to +1.
double svm_classify(const SvmModel& m, std::span<const double> x);

/// Explicit primal weights sum_i alpha_i y_i x_i (linear kernel only).
Vector svm_linear_weights(const SvmModel& m);

/// Full multiplier vector over the training set (zeros for non-support rows).
Vector svm_full_alphas(const SvmModel& m, std::size_t n_train);

/// sum alpha - 1/2 sum_ij alpha_i alpha_j y_i y_j k(x_i, x_j)
double svm_dual_objective(const SvmModel& m);

}  // namespace sigmanet
