#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sigmanet/config.hpp"
#include "sigmanet/crossval.hpp"
#include "sigmanet/data.hpp"
#include "sigmanet/ffnn.hpp"
#include "sigmanet/metrics.hpp"
#include "sigmanet/rbfnn.hpp"
#include "sigmanet/sigma_search.hpp"
#include "sigmanet/ssga.hpp"
#include "sigmanet/svm.hpp"

namespace sigmanet {

enum class ModelKind { Grnn, Egrnn, Rbfnn, Svm, Ffnn };
enum class OutputFormat { Tsv, Markdown };

struct DataSource {
    enum class Kind { Synth, Csv } kind = Kind::Synth;
    SynthKind synth = SynthKind::TwoGaussians;
    std::size_t synth_n = 200;
    std::filesystem::path csv_path;
    std::size_t target_column = 0;
    bool skip_header = false;
};

/// One table row. Only the block matching `kind` is used.
struct ModelSpec {
    std::string name;
    ModelKind kind = ModelKind::Grnn;
    LabelSpace eval_labels = LabelSpace::Continuous;

    // GRNN: fixed sigma, or chosen on a cross-validated grid when unset.
    std::optional<double> sigma;
    GridSpec grid{1e-2, 10.0, 50, true};
    FitnessMetric select = FitnessMetric::F1;
    std::size_t folds = 5;

    SsgaConfig ssga;       // EGRNN
    RbfTrainConfig rbf;    // RBFNN
    SvmConfig svm;         // SVM; Gaussian sigma from `sigma` or a grid sweep
    MlpConfig mlp;         // FFNN
    bool depth_sweep = false;  // FFNN: choose hidden layers among 1, 2, 4
};

struct RunConfig {
    DataSource data;
    SplitSpec split;
    bool standardize = true;
    std::vector<ModelSpec> models;
    OutputFormat format = OutputFormat::Tsv;
    std::uint64_t seed = 42;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Builds a RunConfig from a parsed `key = value` file. Throws ConfigError.
RunConfig parse_run_config(const KvFile& file);
RunConfig load_run_config(const std::filesystem::path& path);

/// Loads the data source and produces the (standardized) train/test split.
Split prepare_data(const RunConfig& cfg);

/// A fitted row: a classifier mapping a pattern to +/-1 plus the
/// hyperparameters that training settled on.
struct TrainedRow {
    std::string name;
    std::function<double(std::span<const double>)> classify;
    std::vector<std::pair<std::string, std::string>> chosen;  // manifest entries
};

/// Fits one row using only `train`.
TrainedRow train_row(const ModelSpec& spec, const Dataset& train, std::uint64_t seed);

/// Confusion statistics of a fitted row on held-out data.
EvalReport evaluate_row(const TrainedRow& row, const Dataset& test);

struct BenchResult {
    std::vector<EvalReport> rows;
    std::string table;
    std::string manifest;
};

/// Trains every row on the train split and evaluates on the test split.
/// Outputs depend only on the configuration (seed included).
BenchResult run_benchmark(const RunConfig& cfg);

std::string format_table(const std::vector<EvalReport>& rows, OutputFormat format);

/// Per-row seed derived from the run seed.
std::uint64_t row_seed(std::uint64_t run_seed, std::size_t row_index);

/// The seven reference rows: GRNN, EGRNN, RBFNN without and with Kohonen
/// initialization, linear and Gaussian SVM, FFNN.
std::vector<ModelSpec> default_models();

}  // namespace sigmanet
