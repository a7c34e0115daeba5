#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sigmanet/crossval.hpp"
#include "sigmanet/data.hpp"

namespace sigmanet {

/// Knobs of the steady-state GA. Individuals are real-coded log(sigma) values.
struct SsgaConfig {
    std::size_t population_size = 20;
    std::size_t generations = 200;  // replacement steps
    double sigma_low = 1e-3;
    double sigma_high = 10.0;
    std::size_t tournament_size = 3;
    double crossover_blend_alpha = 0.5;
    double mutation_stddev = 0.2;  // in log(sigma)
    std::size_t folds = 5;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SsgaHistoryEntry {
    std::size_t step = 0;
    double best_fitness = 0.0;
    double worst_fitness = 0.0;  // population minimum after the step
};

struct SsgaTraceRow {
    std::size_t step = 0;
    double candidate_sigma = 0.0;
    double fitness = 0.0;
    double best_sigma = 0.0;
};

struct SsgaResult {
    double best_sigma = 0.0;
    double best_fitness = 0.0;
    FitnessMetric metric = FitnessMetric::F1;
    std::vector<SsgaHistoryEntry> history;  // step 0 is the initial population
    std::vector<SsgaTraceRow> trace;        // one row per fitness evaluation
};

/// Cross-validated GRNN classification score at one sigma.
/// Throws TooFewPatterns when the set has fewer than `folds` patterns.
double cv_fitness(const Dataset& train, double sigma, FitnessMetric metric, std::size_t folds, std::uint64_t seed);

/// Both metrics from a single cross-validation run.
CvScores grnn_cv_scores(const Dataset& train, double sigma, std::size_t folds, std::uint64_t seed);

/// Fitness used by the GA: cv_fitness with folds clamped to the set size;
/// a single-pattern set is scored by resubstitution.
double ga_fitness(const Dataset& train, double sigma, FitnessMetric metric, std::size_t folds, std::uint64_t seed);

/// Steady-state GA over sigma. Each step selects two parents by tournament,
/// blends them (BLX-alpha) and mutates in log space, clamps to the range,
/// scores the child and replaces the current worst individual when the child
/// is at least as fit. Deterministic per seed; only the training data is used.
SsgaResult evolve_sigma(const Dataset& train, FitnessMetric metric, const SsgaConfig& cfg);

/// TSV with columns step, candidate_sigma, fitness, best_sigma.
void write_trace_tsv(std::ostream& out, const SsgaResult& r);

}  // namespace sigmanet
