#pragma once

#include <span>

#include "sigmanet/data.hpp"
#include "sigmanet/kernelmath.hpp"

namespace sigmanet {

/// Default decision threshold for a regressor trained on the given label space:
/// 0.5 for continuous [0,1] targets, 0 for signed targets.
double default_threshold(LabelSpace space) noexcept;

/// +1 when score > threshold, otherwise -1.
double threshold_label(double score, double threshold) noexcept;

/// General regression network: a kernel-weighted average of the stored training
/// targets (Nadaraya-Watson form with a Gaussian kernel).
class GrnnModel {
public:
    GrnnModel(Dataset train, GaussianKernelParams params);

    const Dataset& train() const noexcept { return train_; }
    const GaussianKernelParams& params() const noexcept { return params_; }

    /// sum_i y_i k(x, x_i) / sum_i k(x, x_i).
    ///
    /// Contributions are accumulated in a canonical order (by distance, then
    /// target) so the result does not depend on the row order of the training
    /// set. Weights are shifted by the nearest distance before exponentiation;
    /// when sigma is so small that the shifted exponent is undefined the
    /// prediction falls back to the nearest stored pattern.
    double predict(std::span<const double> x) const;

    /// threshold_label(predict(x), threshold).
    double classify(std::span<const double> x, double threshold) const;
    double classify(std::span<const double> x) const;

private:
    Dataset train_;
    GaussianKernelParams params_;
};

double grnn_predict(const GrnnModel& m, std::span<const double> x);
double grnn_classify(const GrnnModel& m, std::span<const double> x, double threshold);

}  // namespace sigmanet
