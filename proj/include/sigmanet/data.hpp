#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sigmanet/matrix.hpp"

namespace sigmanet {

enum class LabelSpace { Continuous, SignedBinary };

std::string_view to_string(LabelSpace space);

/// Feature matrix plus one target per row. Immutable once constructed; the
/// constructor enforces the row-count, label-space and finiteness invariants.
class Dataset {
public:
    Dataset() = default;
    Dataset(Matrix features, Vector targets, LabelSpace label_space = LabelSpace::Continuous);

    const Matrix& features() const noexcept { return features_; }
    const Vector& targets() const noexcept { return targets_; }
    LabelSpace label_space() const noexcept { return label_space_; }

    std::size_t size() const noexcept { return targets_.size(); }
    std::size_t dim() const noexcept { return features_.cols(); }
    bool empty() const noexcept { return targets_.empty(); }

    std::span<const double> pattern(std::size_t i) const { return features_.row(i); }
    double target(std::size_t i) const { return targets_[i]; }

    Dataset subset(std::span<const std::size_t> indices) const;

private:
    Matrix features_;
    Vector targets_;
    LabelSpace label_space_ = LabelSpace::Continuous;
};

struct SplitSpec {
    double train_fraction = 0.9;
    std::uint64_t seed = 0;
    bool stratified = true;
};

struct Split {
    Dataset train;
    Dataset test;
};

struct CsvOptions {
    bool skip_header = false;
};

/// Parses a headerless (or header-skipped) numeric CSV. Row order is preserved.
Dataset load_csv(const std::filesystem::path& path, std::size_t target_column, CsvOptions options = {});
Dataset parse_csv(std::string_view text, std::size_t target_column, CsvOptions options = {});

void write_csv(const std::filesystem::path& path, const Dataset& d);

/// Sign label of a continuous target: > 0.5 is +1, < 0.5 is -1, exactly 0.5 is +1.
double signed_label(double continuous_target);

/// Signed labels for evaluation regardless of label space.
Vector signed_labels(const Dataset& d);

/// Maps continuous targets onto {+1, -1}. Rejects data that is already signed.
Dataset relabel_signed(const Dataset& d);

struct SplitIndices {
    std::vector<std::size_t> train;  // ascending
    std::vector<std::size_t> test;   // ascending
};

/// Row indices of a seeded split; see split().
SplitIndices split_indices(const Dataset& d, const SplitSpec& spec);

/// Seeded Fisher-Yates split. With `stratified` on signed data the class
/// proportions of both sides are preserved within one pattern.
Split split(const Dataset& d, const SplitSpec& spec);

/// Per-column population statistics of a training set.
struct Standardizer {
    Vector means;
    Vector stddevs;
};

Standardizer fit_standardizer(const Dataset& d);
Dataset apply_standardizer(const Standardizer& s, const Dataset& d);

enum class SynthKind { TwoGaussians, Ring, Xor };

std::string_view to_string(SynthKind kind);
SynthKind parse_synth_kind(std::string_view name);

/// Two-dimensional synthetic problems with continuous targets in [0, 1].
/// The sampled class is recoverable by the 0.5 threshold.
Dataset synth_dataset(SynthKind kind, std::size_t n, std::uint64_t seed);

}  // namespace sigmanet
