#include "sigmanet/lvq.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "sigmanet/errors.hpp"
#include "sigmanet/kernelmath.hpp"
#include "sigmanet/rng.hpp"

namespace sigmanet {

std::size_t Codebook::total_wins() const noexcept {
    return std::accumulate(win_counts.begin(), win_counts.end(), std::size_t{0});
}

void LvqConfig::validate() const {
    if (k < 1) throw InvalidConfig("lvq k must be >= 1");
    if (epochs < 1) throw InvalidConfig("lvq epochs must be >= 1");
    if (!(lr0 >= 0.0 && lr0 <= 1.0)) throw InvalidConfig("lvq lr0 must lie in [0, 1]");
    if (!(conscience_bias >= 0.0)) throw InvalidConfig("lvq conscience_bias must be >= 0");
}

std::size_t winner(const Codebook& cb, std::span<const double> x, double conscience_bias) {
    const std::size_t k = cb.size();
    if (k == 0) throw EmptyInput("codebook has no centers");
    if (x.size() != cb.centers.cols()) throw DimensionMismatch(cb.centers.cols(), x.size());

    const double total = static_cast<double>(std::max<std::size_t>(1, cb.total_wins()));
    const double fair_share = 1.0 / static_cast<double>(k);
    std::size_t best = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
        double score = sq_euclidean(x, cb.centers.row(j));
        if (conscience_bias > 0.0) {
            const double share = static_cast<double>(cb.win_counts[j]) / total;
            score -= conscience_bias * (fair_share - share);
        }
        if (score < best_score) {
            best_score = score;
            best = j;
        }
    }
    return best;
}

namespace {

// Moves `c` by lr * (x - c) (sign = +1) or away by the same step (sign = -1).
// Returns the length of the move.
double move_center(std::span<double> c, std::span<const double> x, double lr, double sign) {
    double sq = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double step = sign * lr * (x[i] - c[i]);
        c[i] += step;
        sq += step * step;
    }
    return std::sqrt(sq);
}

Codebook initial_codebook(const Dataset& d, const LvqConfig& cfg, Rng& rng) {
    Codebook cb{Matrix(cfg.k, d.dim()), std::vector<std::size_t>(cfg.k, 0), std::nullopt};
    if (cfg.k > d.size()) {
        std::clog << "sigmanet: lvq k=" << cfg.k << " exceeds the " << d.size() << " training patterns\n";
    }
    if (cfg.init == LvqInit::FirstPatterns) {
        for (std::size_t j = 0; j < cfg.k; ++j) {
            auto src = d.pattern(j % d.size());
            std::copy(src.begin(), src.end(), cb.centers.row(j).begin());
        }
    } else {
        Vector lo(d.dim(), std::numeric_limits<double>::infinity());
        Vector hi(d.dim(), -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < d.size(); ++i) {
            auto p = d.pattern(i);
            for (std::size_t c = 0; c < d.dim(); ++c) {
                lo[c] = std::min(lo[c], p[c]);
                hi[c] = std::max(hi[c], p[c]);
            }
        }
        for (std::size_t j = 0; j < cfg.k; ++j) {
            for (std::size_t c = 0; c < d.dim(); ++c) cb.centers(j, c) = rng.uniform(lo[c], hi[c]);
        }
    }
    return cb;
}

// Shared epoch loop. `direction` returns +1 to pull the winner toward the
// pattern and -1 to push it away.
template <typename Direction>
void run_epochs(const Dataset& d, const LvqConfig& cfg, Codebook& cb, Rng& rng, Direction direction,
                const EpochObserver& observer) {
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double lr = cfg.lr0 * (1.0 - static_cast<double>(epoch) / static_cast<double>(cfg.epochs));
        rng.shuffle(std::span(order));
        double max_move = 0.0;
        for (auto p : order) {
            const auto x = d.pattern(p);
            const std::size_t w = winner(cb, x, cfg.conscience_bias);
            ++cb.win_counts[w];
            max_move = std::max(max_move, move_center(cb.centers.row(w), x, lr, direction(w, p)));
        }
        if (observer) observer(cb, epoch);
        if (max_move < cfg.min_displacement) break;
    }
}

}  // namespace

Codebook train_lvq1(const Dataset& d, const LvqConfig& cfg) {
    cfg.validate();
    if (d.empty()) throw EmptyDataset("lvq training needs patterns");
    Rng rng(cfg.seed);
    Codebook cb = initial_codebook(d, cfg, rng);
    run_epochs(d, cfg, cb, rng, [](std::size_t, std::size_t) { return 1.0; }, {});
    return cb;
}

Codebook train_lvq1(const Dataset& d, const LvqConfig& cfg, Codebook initial, const EpochObserver& observer) {
    cfg.validate();
    if (d.empty()) throw EmptyDataset("lvq training needs patterns");
    if (initial.size() == 0) throw InvalidConfig("initial codebook has no centers");
    if (initial.centers.cols() != d.dim()) throw DimensionMismatch(d.dim(), initial.centers.cols());
    initial.win_counts.resize(initial.size(), 0);
    Rng rng(cfg.seed);
    run_epochs(d, cfg, initial, rng, [](std::size_t, std::size_t) { return 1.0; }, observer);
    return initial;
}

Codebook train_lvq2(const Dataset& d, const LvqConfig& cfg) {
    cfg.validate();
    if (d.empty()) throw EmptyDataset("lvq training needs patterns");
    if (d.label_space() != LabelSpace::SignedBinary) {
        throw UnlabeledData("LVQ-II needs signed class labels");
    }
    if (cfg.k < 2) throw InvalidConfig("LVQ-II needs k >= 2");

    Rng rng(cfg.seed);
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < d.size(); ++i) (d.target(i) > 0 ? pos : neg).push_back(i);
    rng.shuffle(std::span(pos));
    rng.shuffle(std::span(neg));

    std::size_t k_pos = 0;
    if (neg.empty()) {
        k_pos = cfg.k;
    } else if (!pos.empty()) {
        const double share = static_cast<double>(pos.size()) / static_cast<double>(d.size());
        k_pos = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::llround(share * static_cast<double>(cfg.k))), 1, cfg.k - 1);
    }

    Codebook cb{Matrix(cfg.k, d.dim()), std::vector<std::size_t>(cfg.k, 0), Vector(cfg.k)};
    for (std::size_t j = 0; j < cfg.k; ++j) {
        const bool positive = j < k_pos;
        const auto& pool = positive ? pos : neg;
        const std::size_t src = pool[(positive ? j : j - k_pos) % pool.size()];
        auto p = d.pattern(src);
        std::copy(p.begin(), p.end(), cb.centers.row(j).begin());
        (*cb.class_labels)[j] = d.target(src);
    }

    const Vector& labels = *cb.class_labels;
    run_epochs(
        d, cfg, cb, rng, [&](std::size_t w, std::size_t p) { return labels[w] == d.target(p) ? 1.0 : -1.0; }, {});
    return cb;
}

double codebook_classify(const Codebook& cb, std::span<const double> x) {
    if (!cb.class_labels) throw UnlabeledData("codebook has no class labels");
    return (*cb.class_labels)[winner(cb, x, 0.0)];
}

void write_codebook_tsv(std::ostream& out, const Codebook& cb) {
    out << std::setprecision(17);
    for (std::size_t j = 0; j < cb.size(); ++j) {
        out << (cb.class_labels ? (*cb.class_labels)[j] : 0.0) << '\t' << cb.win_counts[j];
        for (double v : cb.centers.row(j)) out << '\t' << v;
        out << '\n';
    }
}

Codebook read_codebook_tsv(std::istream& in) {
    Codebook cb;
    Vector labels;
    bool any_label = false;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double label = 0.0;
        std::size_t wins = 0;
        if (!(ls >> label >> wins)) throw ParseError("malformed codebook row", row, 0);
        Vector coords;
        double v = 0.0;
        while (ls >> v) coords.push_back(v);
        cb.centers.append_row(coords);
        cb.win_counts.push_back(wins);
        labels.push_back(label);
        any_label = any_label || label != 0.0;
        ++row;
    }
    if (any_label) cb.class_labels = std::move(labels);
    return cb;
}

}  // namespace sigmanet
