#include "sigmanet/metrics.hpp"

#include <cstdio>

#include "sigmanet/errors.hpp"

namespace sigmanet {

ConfusionCounts confusion(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size()) {
        throw LengthMismatch("predicted has " + std::to_string(predicted.size()) + " entries, actual has " +
                             std::to_string(actual.size()));
    }
    if (predicted.empty()) throw EmptyInput("confusion of empty label vectors");

    ConfusionCounts c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double p = predicted[i];
        const double a = actual[i];
        if ((p != 1.0 && p != -1.0) || (a != 1.0 && a != -1.0)) {
            throw LabelSpaceError("labels must be +1 or -1 (index " + std::to_string(i) + ")");
        }
        if (p > 0) {
            (a > 0 ? c.tp : c.fp) += 1;
        } else {
            (a > 0 ? c.fn : c.tn) += 1;
        }
    }
    return c;
}

namespace {

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

EvalReport report(const ConfusionCounts& c, std::string model_name) {
    EvalReport r;
    r.model_name = std::move(model_name);
    r.counts = c;
    r.accuracy = ratio(c.tp + c.tn, c.total());
    r.precision = ratio(c.tp, c.tp + c.fp);
    r.recall = ratio(c.tp, c.tp + c.fn);
    const double denom = r.precision + r.recall;
    r.f1 = denom == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / denom;
    return r;
}

std::string tsv_header() { return "model\taccuracy\tprecision\trecall\tf1"; }

std::string tsv_row(const EvalReport& r) {
    return r.model_name + '\t' + fixed4(r.accuracy) + '\t' + fixed4(r.precision) + '\t' + fixed4(r.recall) +
           '\t' + fixed4(r.f1);
}

std::string markdown_header() {
    return "| Algorithm | Accuracy | Precision | Recall | F1 |\n|---|---|---|---|---|";
}

std::string markdown_row(const EvalReport& r) {
    return "| " + r.model_name + " | " + fixed4(r.accuracy) + " | " + fixed4(r.precision) + " | " +
           fixed4(r.recall) + " | " + fixed4(r.f1) + " |";
}

}  // namespace sigmanet
