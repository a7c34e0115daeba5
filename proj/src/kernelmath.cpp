#include "sigmanet/kernelmath.hpp"

#include <cmath>
#include <string>

#include "sigmanet/errors.hpp"

namespace sigmanet {

GaussianKernelParams::GaussianKernelParams(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidConfig("kernel width must be positive and finite, got " + std::to_string(sigma));
    }
}

double sq_euclidean(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

double gaussian_from_sq(double sq_distance, double sigma) {
    return std::exp(-sq_distance / (2.0 * sigma * sigma));
}

double gaussian(std::span<const double> x, std::span<const double> y, const GaussianKernelParams& p) {
    return gaussian_from_sq(sq_euclidean(x, y), p.sigma());
}

}  // namespace sigmanet
