#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sigmanet/data.hpp"
#include "sigmanet/matrix.hpp"

namespace sigmanet {

/// Competitive-layer state: one center per row plus how often each has won.
/// `class_labels` is present only for codebooks trained with labels (LVQ-II).
struct Codebook {
    Matrix centers;
    std::vector<std::size_t> win_counts;
    std::optional<Vector> class_labels;

    std::size_t size() const noexcept { return centers.rows(); }
    std::size_t total_wins() const noexcept;
};

enum class LvqInit { FirstPatterns, UniformRandom };

struct LvqConfig {
    std::size_t k = 2;
    std::size_t epochs = 50;
    double lr0 = 0.1;              // decays linearly: lr(t) = lr0 * (1 - t / epochs)
    double conscience_bias = 0.0;  // C >= 0; 0 disables the conscience
    std::uint64_t seed = 0;
    LvqInit init = LvqInit::FirstPatterns;
    double min_displacement = 1e-6;  // stop once an epoch moves no center further than this

    void validate() const;
};

/// Index minimizing ||x - c_j||^2 - C (1/K - f_j), with f_j the share of wins
/// held by center j. Ties go to the lowest index. Does not touch win counts.
std::size_t winner(const Codebook& cb, std::span<const double> x, double conscience_bias);

/// Called after every completed epoch with the current codebook.
using EpochObserver = std::function<void(const Codebook&, std::size_t epoch)>;

/// Unsupervised winner-take-all training. Only the winner moves, toward the pattern.
Codebook train_lvq1(const Dataset& d, const LvqConfig& cfg);
Codebook train_lvq1(const Dataset& d, const LvqConfig& cfg, Codebook initial, const EpochObserver& observer = {});

/// Supervised reward/punish training on signed data. Centers are sampled per
/// class and take the label of the pattern they were sampled from.
Codebook train_lvq2(const Dataset& d, const LvqConfig& cfg);

/// Label of the nearest labeled center.
double codebook_classify(const Codebook& cb, std::span<const double> x);

/// One row per center: label (0 when unlabeled), win_count, coordinates.
void write_codebook_tsv(std::ostream& out, const Codebook& cb);
Codebook read_codebook_tsv(std::istream& in);

}  // namespace sigmanet
