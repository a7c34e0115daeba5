#include "sigmanet/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sigmanet/errors.hpp"
#include "sigmanet/rng.hpp"

namespace sigmanet {

double SvmKernel::operator()(std::span<const double> x, std::span<const double> y) const {
    if (kind == KernelKind::Gaussian) return gaussian_from_sq(sq_euclidean(x, y), sigma);
    if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

void SvmConfig::validate() const {
    if (!(c > 0.0)) throw InvalidConfig("svm c must be positive");
    if (!(tol > 0.0)) throw InvalidConfig("svm tol must be positive");
    if (max_passes < 1) throw InvalidConfig("svm max_passes must be >= 1");
    if (kernel.kind == KernelKind::Gaussian) GaussianKernelParams{kernel.sigma};
}

namespace {

class SmoSolver {
public:
    SmoSolver(const Dataset& d, const SvmConfig& cfg)
        : n_(d.size()), y_(d.targets()), c_(cfg.c), tol_(cfg.tol), gram_(n_, n_), alpha_(n_, 0.0),
          f_(n_, 0.0), rng_(cfg.seed) {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                gram_(i, j) = gram_(j, i) = cfg.kernel(d.pattern(i), d.pattern(j));
            }
        }
    }

    void solve(std::size_t max_passes, std::size_t max_iterations) {
        std::size_t passes = 0;
        for (std::size_t iter = 0; passes < max_passes && iter < max_iterations; ++iter) {
            std::size_t changed = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                if (!violates(i)) continue;
                std::size_t j = rng_.index(n_ - 1);
                if (j >= i) ++j;
                if (take_step(i, j)) {
                    ++changed;
                    continue;
                }
                const std::size_t start = rng_.index(n_);
                for (std::size_t t = 0; t < n_; ++t) {
                    const std::size_t k = (start + t) % n_;
                    if (k != i && take_step(i, k)) {
                        ++changed;
                        break;
                    }
                }
            }
            passes = changed == 0 ? passes + 1 : 0;
        }
        refit_bias();
    }

    const Vector& alphas() const { return alpha_; }
    double bias() const { return b_; }

private:
    double error(std::size_t i) const { return f_[i] + b_ - y_[i]; }

    bool violates(std::size_t i) const {
        const double r = y_[i] * error(i);
        return (r < -tol_ && alpha_[i] < c_) || (r > tol_ && alpha_[i] > 0.0);
    }

    bool take_step(std::size_t i, std::size_t j) {
        const double ai = alpha_[i];
        const double aj = alpha_[j];
        const double yi = y_[i];
        const double yj = y_[j];
        double lo = 0.0;
        double hi = 0.0;
        if (yi != yj) {
            lo = std::max(0.0, aj - ai);
            hi = std::min(c_, c_ + aj - ai);
        } else {
            lo = std::max(0.0, ai + aj - c_);
            hi = std::min(c_, ai + aj);
        }
        if (hi - lo <= 0.0) return false;
        const double eta = 2.0 * gram_(i, j) - gram_(i, i) - gram_(j, j);
        if (eta >= 0.0) return false;

        const double ei = error(i);
        const double ej = error(j);
        double aj_new = std::clamp(aj - yj * (ei - ej) / eta, lo, hi);
        if (std::abs(aj_new - aj) < kMinStep * (1.0 + aj)) return false;
        double ai_new = ai + yi * yj * (aj - aj_new);
        // Snap values that rounding leaves just outside the box.
        ai_new = std::clamp(ai_new, 0.0, c_);

        const double dai = ai_new - ai;
        const double daj = aj_new - aj;
        const double b1 = b_ - ei - yi * dai * gram_(i, i) - yj * daj * gram_(i, j);
        const double b2 = b_ - ej - yi * dai * gram_(i, j) - yj * daj * gram_(j, j);
        double b_new = 0.0;
        if (ai_new > 0.0 && ai_new < c_) {
            b_new = b1;
        } else if (aj_new > 0.0 && aj_new < c_) {
            b_new = b2;
        } else {
            b_new = 0.5 * (b1 + b2);
        }

        for (std::size_t k = 0; k < n_; ++k) f_[k] += yi * dai * gram_(i, k) + yj * daj * gram_(j, k);
        alpha_[i] = ai_new;
        alpha_[j] = aj_new;
        b_ = b_new;
        return true;
    }

    // Bias from the free multipliers; with none free, the middle of the
    // interval the bound multipliers allow.
    void refit_bias() {
        for (std::size_t k = 0; k < n_; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < n_; ++i) s += alpha_[i] * y_[i] * gram_(i, k);
            f_[k] = s;
        }
        const double free_eps = 1e-9 * c_;
        double sum = 0.0;
        std::size_t free = 0;
        double lower = -std::numeric_limits<double>::infinity();
        double upper = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n_; ++k) {
            const double gap = y_[k] - f_[k];
            if (alpha_[k] > free_eps && alpha_[k] < c_ - free_eps) {
                sum += gap;
                ++free;
            } else if ((alpha_[k] <= free_eps) == (y_[k] > 0)) {
                lower = std::max(lower, gap);  // y f >= 1 at alpha = 0, y = +1 (or alpha = C, y = -1)
            } else {
                upper = std::min(upper, gap);
            }
        }
        if (free > 0) {
            b_ = sum / static_cast<double>(free);
        } else if (std::isfinite(lower) && std::isfinite(upper)) {
            b_ = 0.5 * (lower + upper);
        } else if (std::isfinite(lower)) {
            b_ = lower;
        } else if (std::isfinite(upper)) {
            b_ = upper;
        }
    }

    static constexpr double kMinStep = 1e-10;

    std::size_t n_;
    Vector y_;
    double c_;
    double tol_;
    Matrix gram_;
    Vector alpha_;
    Vector f_;  // sum_i alpha_i y_i K(i, k), without the bias
    double b_ = 0.0;
    Rng rng_;
};

}  // namespace

SvmModel svm_train(const Dataset& train, const SvmConfig& cfg) {
    cfg.validate();
    if (train.empty()) throw EmptyDataset("svm training needs patterns");
    if (train.label_space() != LabelSpace::SignedBinary) throw UnlabeledData("svm training needs signed labels");
    const bool has_pos = std::any_of(train.targets().begin(), train.targets().end(), [](double t) { return t > 0; });
    const bool has_neg = std::any_of(train.targets().begin(), train.targets().end(), [](double t) { return t < 0; });
    if (!has_pos || !has_neg) throw SingleClass("svm training needs both classes present");

    SmoSolver solver(train, cfg);
    solver.solve(cfg.max_passes, cfg.max_iterations);

    SvmModel m;
    m.kernel = cfg.kernel;
    m.c = cfg.c;
    m.bias_b = solver.bias();
    for (std::size_t i = 0; i < train.size(); ++i) {
        const double a = solver.alphas()[i];
        if (a > 0.0) {
            m.support_vectors.append_row(train.pattern(i));
            m.support_targets.push_back(train.target(i));
            m.alphas.push_back(a);
            m.support_indices.push_back(i);
        }
    }
    if (m.support_vectors.cols() == 0) m.support_vectors = Matrix(0, train.dim());
    return m;
}

double svm_decision(const SvmModel& m, std::span<const double> x) {
    if (x.size() != m.dim()) throw DimensionMismatch(m.dim(), x.size());
    double f = m.bias_b;
    for (std::size_t i = 0; i < m.alphas.size(); ++i) {
        f += m.alphas[i] * m.support_targets[i] * m.kernel(m.support_vectors.row(i), x);
    }
    return f;
}

double svm_classify(const SvmModel& m, std::span<const double> x) { return svm_decision(m, x) >= 0.0 ? 1.0 : -1.0; }

Vector svm_linear_weights(const SvmModel& m) {
    if (m.kernel.kind != KernelKind::Linear) throw InvalidConfig("explicit weights exist only for the linear kernel");
    Vector w(m.dim(), 0.0);
    for (std::size_t i = 0; i < m.alphas.size(); ++i) {
        const auto sv = m.support_vectors.row(i);
        for (std::size_t c = 0; c < w.size(); ++c) w[c] += m.alphas[i] * m.support_targets[i] * sv[c];
    }
    return w;
}

Vector svm_full_alphas(const SvmModel& m, std::size_t n_train) {
    Vector a(n_train, 0.0);
    for (std::size_t i = 0; i < m.support_indices.size(); ++i) a.at(m.support_indices[i]) = m.alphas[i];
    return a;
}

double svm_dual_objective(const SvmModel& m) {
    double linear = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < m.alphas.size(); ++i) {
        linear += m.alphas[i];
        for (std::size_t j = 0; j < m.alphas.size(); ++j) {
            quad += m.alphas[i] * m.alphas[j] * m.support_targets[i] * m.support_targets[j] *
                    m.kernel(m.support_vectors.row(i), m.support_vectors.row(j));
        }
    }
    return linear - 0.5 * quad;
}

}  // namespace sigmanet
