#pragma once

#include <span>

namespace sigmanet {

/// Width of a Gaussian kernel. Construction rejects non-positive or non-finite values.
class GaussianKernelParams {
public:
    explicit GaussianKernelParams(double sigma);

    double sigma() const noexcept { return sigma_; }

private:
    double sigma_;
};

/// Sum of squared coordinate differences. Throws DimensionMismatch.
double sq_euclidean(std::span<const double> x, std::span<const double> y);

/// exp(-||x - y||^2 / (2 sigma^2))
double gaussian(std::span<const double> x, std::span<const double> y, const GaussianKernelParams& p);

/// Kernel value from an already computed squared distance.
double gaussian_from_sq(double sq_distance, double sigma);

}  // namespace sigmanet
