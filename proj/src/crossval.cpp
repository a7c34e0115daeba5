#include "sigmanet/crossval.hpp"

#include <algorithm>
#include <string>

#include "sigmanet/errors.hpp"
#include "sigmanet/metrics.hpp"
#include "sigmanet/rng.hpp"

namespace sigmanet {

std::string_view to_string(FitnessMetric m) { return m == FitnessMetric::F1 ? "f1" : "accuracy"; }

std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t folds, std::uint64_t seed) {
    if (folds < 2) throw InvalidConfig("cross-validation needs at least 2 folds");
    if (n < folds) {
        throw TooFewPatterns(std::to_string(folds) + "-fold cross-validation needs at least " +
                             std::to_string(folds) + " patterns, got " + std::to_string(n));
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(std::span(order));
    std::vector<std::vector<std::size_t>> parts(folds);
    for (std::size_t i = 0; i < n; ++i) parts[i % folds].push_back(order[i]);
    return parts;
}

CvScores cross_validate(const Dataset& data, std::size_t folds, std::uint64_t seed, const FoldClassifier& classify) {
    const auto parts = kfold_partition(data.size(), folds, seed);
    std::vector<char> held(data.size());
    CvScores sum;
    for (const auto& part : parts) {
        std::fill(held.begin(), held.end(), 0);
        for (auto i : part) held[i] = 1;
        std::vector<std::size_t> fit_idx;
        fit_idx.reserve(data.size() - part.size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (!held[i]) fit_idx.push_back(i);
        }
        const Dataset fit = data.subset(fit_idx);
        const Dataset test = data.subset(part);
        const Vector predicted = classify(fit, test);
        const auto r = report(confusion(predicted, signed_labels(test)));
        sum.f1 += r.f1;
        sum.accuracy += r.accuracy;
    }
    const auto k = static_cast<double>(parts.size());
    return {sum.f1 / k, sum.accuracy / k};
}

}  // namespace sigmanet
