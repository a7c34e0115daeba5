#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "sigmanet/data.hpp"

namespace sigmanet {

enum class FitnessMetric { F1, Accuracy };

std::string_view to_string(FitnessMetric m);

/// Seeded k-fold partition of [0, n): a shuffled order dealt round-robin into
/// `folds` held-out sets. Throws TooFewPatterns when n < folds or folds < 2.
std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t folds, std::uint64_t seed);

struct CvScores {
    double f1 = 0.0;
    double accuracy = 0.0;

    double get(FitnessMetric m) const noexcept { return m == FitnessMetric::F1 ? f1 : accuracy; }
};

/// Fits on the training part of a fold and returns +/-1 predictions for the held-out part.
using FoldClassifier = std::function<Vector(const Dataset& fit, const Dataset& held_out)>;

/// Mean per-fold F1 and accuracy against the signed labels of each held-out fold.
CvScores cross_validate(const Dataset& data, std::size_t folds, std::uint64_t seed, const FoldClassifier& classify);

}  // namespace sigmanet
