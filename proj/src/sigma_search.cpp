#include "sigmanet/sigma_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "sigmanet/errors.hpp"
#include "sigmanet/svm.hpp"

namespace sigmanet {

std::string_view to_string(SweepModel m) { return m == SweepModel::Grnn ? "grnn" : "rbf_svm"; }

void GridSpec::validate() const {
    if (points < 1) throw InvalidGrid("grid needs at least one point");
    if (!(low > 0.0) || !std::isfinite(high) || high < low) throw InvalidGrid("grid needs 0 < low <= high");
    if (points > 1 && !(low < high)) throw InvalidGrid("multi-point grid needs low < high");
}

std::vector<double> GridSpec::values() const {
    validate();
    std::vector<double> v(points);
    if (points == 1) {
        v[0] = low;
        return v;
    }
    const double steps = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / steps;
        v[i] = log_spaced ? std::exp(std::log(low) + t * (std::log(high) - std::log(low))) : low + t * (high - low);
    }
    v.front() = low;
    v.back() = high;
    return v;
}

CvScores rbf_svm_cv_scores(const Dataset& train, double sigma, const SvmConfig& base, std::size_t folds,
                           std::uint64_t seed) {
    const Dataset signed_train = train.label_space() == LabelSpace::SignedBinary ? train : relabel_signed(train);
    SvmConfig cfg = base;
    cfg.kernel = SvmKernel::gaussian(GaussianKernelParams(sigma));
    return cross_validate(signed_train, folds, seed, [&](const Dataset& fit, const Dataset& held_out) {
        Vector out(held_out.size());
        const auto pos = std::count_if(fit.targets().begin(), fit.targets().end(), [](double t) { return t > 0; });
        if (pos == 0 || static_cast<std::size_t>(pos) == fit.size()) {
            // A single-class fold predicts its only class.
            std::fill(out.begin(), out.end(), pos == 0 ? -1.0 : 1.0);
            return out;
        }
        const SvmModel m = svm_train(fit, cfg);
        for (std::size_t i = 0; i < held_out.size(); ++i) out[i] = svm_classify(m, held_out.pattern(i));
        return out;
    });
}

SigmaSweepResult sweep(const Dataset& train, SweepModel model, const GridSpec& grid, std::size_t folds,
                       std::uint64_t seed, const SvmConfig& svm_base) {
    const auto sigmas = grid.values();
    if (train.size() < folds) {
        throw TooFewPatterns("sweep needs at least " + std::to_string(folds) + " patterns for " +
                             std::to_string(folds) + "-fold cross-validation");
    }

    SigmaSweepResult r;
    r.model = model;
    r.grid.reserve(sigmas.size());
    for (double s : sigmas) {
        const CvScores sc = model == SweepModel::Grnn ? grnn_cv_scores(train, s, folds, seed)
                                                      : rbf_svm_cv_scores(train, s, svm_base, folds, seed);
        r.grid.push_back({s, sc.f1, sc.accuracy});
    }

    // Grid is ascending in sigma, so strict '>' keeps the smaller sigma on ties.
    std::size_t bf = 0;
    std::size_t ba = 0;
    for (std::size_t i = 1; i < r.grid.size(); ++i) {
        if (r.grid[i].f1 > r.grid[bf].f1) bf = i;
        if (r.grid[i].accuracy > r.grid[ba].accuracy) ba = i;
    }
    r.best_sigma_f1 = r.grid[bf].sigma;
    r.best_f1 = r.grid[bf].f1;
    r.best_sigma_accuracy = r.grid[ba].sigma;
    r.best_accuracy = r.grid[ba].accuracy;

    if (sigmas.size() > 1) {
        const double slack = 1.0 + 1e-9;
        if (grid.log_spaced) {
            const double ratio = std::pow(grid.high / grid.low, 1.0 / static_cast<double>(sigmas.size() - 1));
            r.tolerance_used = (ratio - 1.0) * std::min(r.best_sigma_f1, r.best_sigma_accuracy) * slack;
        } else {
            r.tolerance_used = (grid.high - grid.low) / static_cast<double>(sigmas.size() - 1) * slack;
        }
    }
    r.coincide = std::abs(r.best_sigma_f1 - r.best_sigma_accuracy) <= r.tolerance_used;
    return r;
}

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

void write_sweep_tsv(std::ostream& out, const SigmaSweepResult& r) {
    out << "sigma\tf1\taccuracy\n";
    for (const auto& p : r.grid) out << fmt("%.10g", p.sigma) << '\t' << fmt("%.6f", p.f1) << '\t' << fmt("%.6f", p.accuracy) << '\n';
}

std::string sweep_verdict(const SigmaSweepResult& r) {
    return "sigma_f1=" + fmt("%.6g", r.best_sigma_f1) + " (f1 " + fmt("%.4f", r.best_f1) + ")  sigma_accuracy=" +
           fmt("%.6g", r.best_sigma_accuracy) + " (accuracy " + fmt("%.4f", r.best_accuracy) + ")  coincide=" +
           (r.coincide ? "yes" : "no") + " (tolerance " + fmt("%.6g", r.tolerance_used) + ")";
}

std::string format_comparison(const SigmaSweepResult& grid, const SsgaResult& ga_f1, const SsgaResult& ga_accuracy) {
    if (ga_f1.history.empty() || ga_accuracy.history.empty()) {
        throw EmptyInput("ssga result has an empty history");
    }
    std::ostringstream out;
    out << "method\tmetric\tbest_sigma\tfitness\n";
    out << "grid\tf1\t" << fmt("%.6g", grid.best_sigma_f1) << '\t' << fmt("%.4f", grid.best_f1) << '\n';
    out << "grid\taccuracy\t" << fmt("%.6g", grid.best_sigma_accuracy) << '\t' << fmt("%.4f", grid.best_accuracy)
        << '\n';
    out << "ssga\tf1\t" << fmt("%.6g", ga_f1.best_sigma) << '\t' << fmt("%.4f", ga_f1.best_fitness) << '\n';
    out << "ssga\taccuracy\t" << fmt("%.6g", ga_accuracy.best_sigma) << '\t' << fmt("%.4f", ga_accuracy.best_fitness)
        << '\n';
    out << "grid verdict: " << sweep_verdict(grid) << '\n';
    out << "ssga verdict: sigma_f1=" << fmt("%.6g", ga_f1.best_sigma)
        << "  sigma_accuracy=" << fmt("%.6g", ga_accuracy.best_sigma) << '\n';
    return out.str();
}

std::string compare_with_ssga(const Dataset& train, const SsgaConfig& cfg, const SigmaSweepResult& grid) {
    const auto ga_f1 = evolve_sigma(train, FitnessMetric::F1, cfg);
    const auto ga_acc = evolve_sigma(train, FitnessMetric::Accuracy, cfg);
    return format_comparison(grid, ga_f1, ga_acc);
}

}  // namespace sigmanet
