#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace sigmanet {

/// Binary confusion counts. The positive class is +1.
struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + fp + tn + fn; }

    ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept {
        tp += o.tp;
        fp += o.fp;
        tn += o.tn;
        fn += o.fn;
        return *this;
    }
    bool operator==(const ConfusionCounts&) const = default;
};

struct EvalReport {
    std::string model_name;
    ConfusionCounts counts;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Throws LengthMismatch / EmptyInput; entries must be exactly +1 or -1.
ConfusionCounts confusion(std::span<const double> predicted, std::span<const double> actual);

/// Precision, recall and F1 are 0 when their denominator is 0.
EvalReport report(const ConfusionCounts& c, std::string model_name = {});

/// model_name, accuracy, precision, recall, f1 (four decimals), tab separated, no newline.
std::string tsv_row(const EvalReport& r);
std::string tsv_header();

/// Markdown table row in the same column order.
std::string markdown_row(const EvalReport& r);
std::string markdown_header();

}  // namespace sigmanet
