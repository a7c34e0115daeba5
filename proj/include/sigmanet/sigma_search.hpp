#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sigmanet/crossval.hpp"
#include "sigmanet/data.hpp"
#include "sigmanet/ssga.hpp"
#include "sigmanet/svm.hpp"

namespace sigmanet {

enum class SweepModel { Grnn, RbfSvm };

std::string_view to_string(SweepModel m);

struct GridSpec {
    double low = 1e-2;
    double high = 10.0;
    std::size_t points = 50;
    bool log_spaced = true;

    /// Throws InvalidGrid.
    void validate() const;
    std::vector<double> values() const;
};

struct SweepPoint {
    double sigma = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
};

struct SigmaSweepResult {
    SweepModel model = SweepModel::Grnn;
    std::vector<SweepPoint> grid;
    double best_sigma_f1 = 0.0;
    double best_f1 = 0.0;
    double best_sigma_accuracy = 0.0;
    double best_accuracy = 0.0;
    bool coincide = false;
    double tolerance_used = 0.0;
};

/// Cross-validated Gaussian-kernel SVM scores; continuous data is relabeled first.
CvScores rbf_svm_cv_scores(const Dataset& train, double sigma, const SvmConfig& base, std::size_t folds,
                           std::uint64_t seed);

/// Scores every grid sigma on both metrics with one shared fold partition.
/// Argmax ties go to the smaller sigma. The two optima coincide when they are
/// at most one grid step apart (relative step for log grids).
SigmaSweepResult sweep(const Dataset& train, SweepModel model, const GridSpec& grid, std::size_t folds,
                       std::uint64_t seed, const SvmConfig& svm_base = {});

/// TSV with columns sigma, f1, accuracy.
void write_sweep_tsv(std::ostream& out, const SigmaSweepResult& r);

/// Verdict line for the headline question.
std::string sweep_verdict(const SigmaSweepResult& r);

/// Grid optimum versus GA optimum for each metric as a TSV table followed by
/// the verdict. Throws EmptyInput if a GA result carries no history.
std::string format_comparison(const SigmaSweepResult& grid, const SsgaResult& ga_f1, const SsgaResult& ga_accuracy);

/// Runs the GA for both metrics (GRNN fitness) and formats the comparison.
std::string compare_with_ssga(const Dataset& train, const SsgaConfig& cfg, const SigmaSweepResult& grid);

}  // namespace sigmanet
