#include "sigmanet/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "sigmanet/errors.hpp"
#include "sigmanet/rng.hpp"

namespace sigmanet {

std::string_view to_string(LabelSpace space) {
    return space == LabelSpace::Continuous ? "continuous" : "signed";
}

Dataset::Dataset(Matrix features, Vector targets, LabelSpace label_space)
    : features_(std::move(features)), targets_(std::move(targets)), label_space_(label_space) {
    if (features_.rows() != targets_.size()) {
        throw ShapeError("dataset has " + std::to_string(features_.rows()) + " rows but " +
                         std::to_string(targets_.size()) + " targets");
    }
    for (double v : features_.data()) {
        if (!std::isfinite(v)) throw ShapeError("dataset features must be finite");
    }
    for (double t : targets_) {
        if (!std::isfinite(t)) throw ShapeError("dataset targets must be finite");
        if (label_space_ == LabelSpace::SignedBinary && t != 1.0 && t != -1.0) {
            throw LabelSpaceError("signed dataset target must be +1 or -1");
        }
    }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    Vector t;
    t.reserve(indices.size());
    for (auto i : indices) t.push_back(targets_[i]);
    return Dataset(features_.select_rows(indices), std::move(t), label_space_);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_field(std::string_view field, std::size_t row, std::size_t col) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError("non-numeric field '" + std::string(field) + "'", row, col);
    }
    if (!std::isfinite(value)) throw ParseError("non-finite field", row, col);
    return value;
}

}  // namespace

Dataset parse_csv(std::string_view text, std::size_t target_column, CsvOptions options) {
    Matrix features;
    Vector targets;
    std::size_t expected_fields = 0;
    std::size_t row = 0;
    bool header_pending = options.skip_header;
    Vector values;

    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (trim(line).empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }

        values.clear();
        std::size_t col = 0;
        while (true) {
            const auto comma = line.find(',');
            values.push_back(parse_field(line.substr(0, comma), row, col));
            ++col;
            if (comma == std::string_view::npos) break;
            line.remove_prefix(comma + 1);
        }
        if (row == 0) {
            expected_fields = values.size();
            if (target_column >= expected_fields) {
                throw ShapeError("target column " + std::to_string(target_column) + " out of range for " +
                                 std::to_string(expected_fields) + " fields");
            }
        } else if (values.size() != expected_fields) {
            throw ShapeError("row " + std::to_string(row) + " has " + std::to_string(values.size()) +
                             " fields, expected " + std::to_string(expected_fields));
        }
        targets.push_back(values[target_column]);
        values.erase(values.begin() + static_cast<std::ptrdiff_t>(target_column));
        features.append_row(values);
        ++row;
    }
    if (row == 0) throw ParseError("no data rows", 0, 0);
    return Dataset(std::move(features), std::move(targets), LabelSpace::Continuous);
}

Dataset load_csv(const std::filesystem::path& path, std::size_t target_column, CsvOptions options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading " + path.string());
    return parse_csv(buf.str(), target_column, options);
}

void write_csv(const std::filesystem::path& path, const Dataset& d) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << std::setprecision(17);
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (double v : d.pattern(i)) out << v << ',';
        out << d.target(i) << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

// ---------------------------------------------------------------------------
// Labels

double signed_label(double continuous_target) { return continuous_target < 0.5 ? -1.0 : 1.0; }

Vector signed_labels(const Dataset& d) {
    if (d.label_space() == LabelSpace::SignedBinary) return d.targets();
    Vector out(d.size());
    std::transform(d.targets().begin(), d.targets().end(), out.begin(), signed_label);
    return out;
}

Dataset relabel_signed(const Dataset& d) {
    if (d.label_space() != LabelSpace::Continuous) {
        throw LabelSpaceError("relabel_signed expects continuous targets");
    }
    return Dataset(d.features(), signed_labels(d), LabelSpace::SignedBinary);
}

// ---------------------------------------------------------------------------
// Split

SplitIndices split_indices(const Dataset& d, const SplitSpec& spec) {
    const std::size_t n = d.size();
    if (n < 2) throw TooFewPatterns("split needs at least 2 patterns, got " + std::to_string(n));
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw InvalidConfig("train_fraction must lie in (0, 1)");
    }
    const auto n_train = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(n))), 1, n - 1);

    Rng rng(spec.seed);
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> test_idx;

    if (spec.stratified && d.label_space() == LabelSpace::SignedBinary) {
        std::vector<std::size_t> pos;
        std::vector<std::size_t> neg;
        for (std::size_t i = 0; i < n; ++i) (d.target(i) > 0 ? pos : neg).push_back(i);
        rng.shuffle(std::span(pos));
        rng.shuffle(std::span(neg));
        auto pos_train = static_cast<std::size_t>(
            std::llround(spec.train_fraction * static_cast<double>(pos.size())));
        pos_train = std::min(pos_train, pos.size());
        if (n_train < pos_train) pos_train = n_train;
        std::size_t neg_train = n_train - pos_train;
        if (neg_train > neg.size()) {
            pos_train += neg_train - neg.size();
            neg_train = neg.size();
        }
        train_idx.assign(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(pos_train));
        train_idx.insert(train_idx.end(), neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(neg_train));
        test_idx.assign(pos.begin() + static_cast<std::ptrdiff_t>(pos_train), pos.end());
        test_idx.insert(test_idx.end(), neg.begin() + static_cast<std::ptrdiff_t>(neg_train), neg.end());
    } else {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        rng.shuffle(std::span(order));
        train_idx.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
        test_idx.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    }
    // Both sides keep the original row order.
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    return {std::move(train_idx), std::move(test_idx)};
}

Split split(const Dataset& d, const SplitSpec& spec) {
    const auto idx = split_indices(d, spec);
    return {d.subset(idx.train), d.subset(idx.test)};
}

// ---------------------------------------------------------------------------
// Standardization

Standardizer fit_standardizer(const Dataset& d) {
    if (d.empty()) throw EmptyDataset("cannot fit a standardizer on an empty dataset");
    const std::size_t n = d.size();
    const std::size_t dim = d.dim();
    Standardizer s{Vector(dim, 0.0), Vector(dim, 0.0)};
    for (std::size_t c = 0; c < dim; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < n; ++r) sum += d.features()(r, c);
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double dv = d.features()(r, c) - mean;
            ss += dv * dv;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n));
        s.means[c] = mean;
        // Constant columns map to zero.
        s.stddevs[c] = sd > 1e-12 * (1.0 + std::abs(mean)) ? sd : 1.0;
    }
    return s;
}

Dataset apply_standardizer(const Standardizer& s, const Dataset& d) {
    if (s.means.size() != d.dim()) throw DimensionMismatch(s.means.size(), d.dim());
    Matrix f = d.features();
    for (std::size_t r = 0; r < f.rows(); ++r) {
        auto row = f.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) row[c] = (row[c] - s.means[c]) / s.stddevs[c];
    }
    return Dataset(std::move(f), d.targets(), d.label_space());
}

// ---------------------------------------------------------------------------
// Synthetic data

std::string_view to_string(SynthKind kind) {
    switch (kind) {
        case SynthKind::TwoGaussians: return "two_gaussians";
        case SynthKind::Ring: return "ring";
        case SynthKind::Xor: return "xor";
    }
    return "unknown";
}

SynthKind parse_synth_kind(std::string_view name) {
    if (name == "two_gaussians" || name == "twogaussians") return SynthKind::TwoGaussians;
    if (name == "ring") return SynthKind::Ring;
    if (name == "xor") return SynthKind::Xor;
    throw InvalidConfig("unknown synthetic dataset '" + std::string(name) + "'");
}

namespace {

// Continuous target that thresholds back to the sampled class.
double class_target(bool positive, Rng& rng) {
    const double u = rng.uniform();
    return positive ? 0.55 + 0.45 * u : 0.45 - 0.45 * u;
}

}  // namespace

Dataset synth_dataset(SynthKind kind, std::size_t n, std::uint64_t seed) {
    if (n < 4) throw TooFewPatterns("synthetic datasets need n >= 4");
    Rng rng(seed);
    Matrix features(n, 2);
    Vector targets(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = 0.0;
        double y = 0.0;
        bool positive = false;
        switch (kind) {
            case SynthKind::TwoGaussians: {
                positive = i % 2 == 0;
                const double m = positive ? 1.5 : -1.5;
                x = rng.normal(m, 1.0);
                y = rng.normal(m, 1.0);
                break;
            }
            case SynthKind::Ring: {
                positive = i % 2 == 0;
                if (positive) {
                    const double r = rng.normal(2.0, 0.25);
                    const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
                    x = r * std::cos(a);
                    y = r * std::sin(a);
                } else {
                    x = rng.normal(0.0, 0.5);
                    y = rng.normal(0.0, 0.5);
                }
                break;
            }
            case SynthKind::Xor: {
                x = rng.uniform(-1.0, 1.0);
                y = rng.uniform(-1.0, 1.0);
                positive = x * y > 0.0;
                break;
            }
        }
        features(i, 0) = x;
        features(i, 1) = y;
        targets[i] = class_target(positive, rng);
    }
    return Dataset(std::move(features), std::move(targets), LabelSpace::Continuous);
}

}  // namespace sigmanet
