#include "sigmanet/grnn.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "sigmanet/errors.hpp"

namespace sigmanet {

double default_threshold(LabelSpace space) noexcept { return space == LabelSpace::Continuous ? 0.5 : 0.0; }

double threshold_label(double score, double threshold) noexcept { return score > threshold ? 1.0 : -1.0; }

GrnnModel::GrnnModel(Dataset train, GaussianKernelParams params) : train_(std::move(train)), params_(params) {
    if (train_.empty()) throw EmptyDataset("GRNN needs at least one stored pattern");
}

double GrnnModel::predict(std::span<const double> x) const {
    if (x.size() != train_.dim()) throw DimensionMismatch(train_.dim(), x.size());

    const std::size_t n = train_.size();
    std::vector<std::pair<double, double>> terms(n);  // (squared distance, target)
    for (std::size_t i = 0; i < n; ++i) terms[i] = {sq_euclidean(x, train_.pattern(i)), train_.target(i)};
    std::sort(terms.begin(), terms.end());

    const double nearest = terms.front().first;
    const double two_var = 2.0 * params_.sigma() * params_.sigma();
    if (!(two_var > 0.0)) return terms.front().second;

    double num = 0.0;
    double den = 0.0;
    double lo = terms.front().second;
    double hi = lo;
    for (const auto& [d, y] : terms) {
        const double w = std::exp(-(d - nearest) / two_var);
        num += w * y;
        den += w;
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    if (!(den > 0.0) || !std::isfinite(num / den)) return terms.front().second;
    // Rounding must not push the weighted mean outside the target range.
    return std::clamp(num / den, lo, hi);
}

double GrnnModel::classify(std::span<const double> x, double threshold) const {
    return threshold_label(predict(x), threshold);
}

double GrnnModel::classify(std::span<const double> x) const {
    return classify(x, default_threshold(train_.label_space()));
}

double grnn_predict(const GrnnModel& m, std::span<const double> x) { return m.predict(x); }

double grnn_classify(const GrnnModel& m, std::span<const double> x, double threshold) {
    return m.classify(x, threshold);
}

}  // namespace sigmanet
