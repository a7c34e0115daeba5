#include "sigmanet/ssga.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "sigmanet/errors.hpp"
#include "sigmanet/grnn.hpp"
#include "sigmanet/metrics.hpp"
#include "sigmanet/rng.hpp"

namespace sigmanet {

void SsgaConfig::validate() const {
    if (!(sigma_low > 0.0) || !(sigma_low < sigma_high) || !std::isfinite(sigma_high)) {
        throw InvalidConfig("ssga sigma range must satisfy 0 < low < high");
    }
    if (population_size < 2) throw InvalidConfig("ssga population_size must be >= 2");
    if (tournament_size < 1 || tournament_size > population_size) {
        throw InvalidConfig("ssga tournament_size must lie in [1, population_size]");
    }
    if (!(crossover_blend_alpha >= 0.0)) throw InvalidConfig("ssga crossover_blend_alpha must be >= 0");
    if (!(mutation_stddev >= 0.0)) throw InvalidConfig("ssga mutation_stddev must be >= 0");
    if (folds < 2) throw InvalidConfig("ssga folds must be >= 2");
}

CvScores grnn_cv_scores(const Dataset& train, double sigma, std::size_t folds, std::uint64_t seed) {
    const GaussianKernelParams params(sigma);
    return cross_validate(train, folds, seed, [&](const Dataset& fit, const Dataset& held_out) {
        const GrnnModel model(fit, params);
        Vector out(held_out.size());
        for (std::size_t i = 0; i < held_out.size(); ++i) out[i] = model.classify(held_out.pattern(i));
        return out;
    });
}

double cv_fitness(const Dataset& train, double sigma, FitnessMetric metric, std::size_t folds, std::uint64_t seed) {
    return grnn_cv_scores(train, sigma, folds, seed).get(metric);
}

double ga_fitness(const Dataset& train, double sigma, FitnessMetric metric, std::size_t folds, std::uint64_t seed) {
    if (train.empty()) throw EmptyDataset("cannot score sigma on an empty training set");
    if (train.size() == 1) {
        const GrnnModel model(train, GaussianKernelParams(sigma));
        const double predicted = model.classify(train.pattern(0));
        const double actual = signed_labels(train)[0];
        const auto r = report(confusion(std::span(&predicted, 1), std::span(&actual, 1)));
        return metric == FitnessMetric::F1 ? r.f1 : r.accuracy;
    }
    return cv_fitness(train, sigma, metric, std::min(folds, train.size()), seed);
}

namespace {

struct Individual {
    double log_sigma;
    double fitness;
};

std::size_t tournament(const std::vector<Individual>& pop, std::size_t size, Rng& rng) {
    std::size_t best = rng.index(pop.size());
    for (std::size_t t = 1; t < size; ++t) {
        const std::size_t c = rng.index(pop.size());
        if (pop[c].fitness > pop[best].fitness) best = c;
    }
    return best;
}

std::size_t worst_index(const std::vector<Individual>& pop) {
    std::size_t w = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (pop[i].fitness < pop[w].fitness) w = i;
    }
    return w;
}

}  // namespace

SsgaResult evolve_sigma(const Dataset& train, FitnessMetric metric, const SsgaConfig& cfg) {
    cfg.validate();
    if (train.empty()) throw EmptyDataset("evolve_sigma needs training data");

    Rng rng(cfg.seed);
    const double lo = std::log(cfg.sigma_low);
    const double hi = std::log(cfg.sigma_high);
    // The CV partition is fixed for the whole run so fitness is a function of sigma alone.
    const std::uint64_t cv_seed = cfg.seed;

    SsgaResult result;
    result.metric = metric;
    result.best_fitness = -1.0;

    auto evaluate = [&](double log_sigma, std::size_t step) {
        const double sigma = std::clamp(std::exp(log_sigma), cfg.sigma_low, cfg.sigma_high);
        const double f = ga_fitness(train, sigma, metric, cfg.folds, cv_seed);
        if (f > result.best_fitness || (f == result.best_fitness && sigma < result.best_sigma)) {
            result.best_fitness = f;
            result.best_sigma = sigma;
        }
        result.trace.push_back({step, sigma, f, result.best_sigma});
        return f;
    };

    // Initial population: one draw per equal-width stratum of log(sigma).
    std::vector<Individual> pop(cfg.population_size);
    const double width = (hi - lo) / static_cast<double>(cfg.population_size);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const double g = std::clamp(lo + width * (static_cast<double>(i) + rng.uniform()), lo, hi);
        pop[i] = {g, evaluate(g, 0)};
    }
    result.history.push_back({0, result.best_fitness, pop[worst_index(pop)].fitness});

    for (std::size_t step = 1; step <= cfg.generations; ++step) {
        const auto& a = pop[tournament(pop, cfg.tournament_size, rng)];
        const auto& b = pop[tournament(pop, cfg.tournament_size, rng)];
        const double pmin = std::min(a.log_sigma, b.log_sigma);
        const double pmax = std::max(a.log_sigma, b.log_sigma);
        const double spread = cfg.crossover_blend_alpha * (pmax - pmin);
        double child = rng.uniform(pmin - spread, pmax + spread);
        child += cfg.mutation_stddev * rng.normal();
        child = std::clamp(child, lo, hi);

        const double f = evaluate(child, step);
        const std::size_t w = worst_index(pop);
        if (f >= pop[w].fitness) pop[w] = {child, f};
        result.history.push_back({step, result.best_fitness, pop[worst_index(pop)].fitness});
    }
    return result;
}

void write_trace_tsv(std::ostream& out, const SsgaResult& r) {
    out << "step\tcandidate_sigma\tfitness\tbest_sigma\n";
    const auto old_flags = out.flags();
    const auto old_prec = out.precision();
    out << std::setprecision(10);
    for (const auto& row : r.trace) {
        out << row.step << '\t' << row.candidate_sigma << '\t' << row.fitness << '\t' << row.best_sigma << '\n';
    }
    out.flags(old_flags);
    out.precision(old_prec);
}

}  // namespace sigmanet
