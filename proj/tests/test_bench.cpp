#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sigmanet/bench.hpp"
#include "sigmanet/errors.hpp"

using namespace sigmanet;

namespace {

std::string field_of(const std::string& text) {
    try {
        parse_run_config(parse_kv(text)).validate();
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<no error>";
}

const char* kTwoRbf =
    "seed = 11\nsynth_kind = ring\nsynth_n = 120\n"
    "[model]\ntype = rbfnn\nname = A\nmode = fixed\nepochs = 60\n"
    "[model]\ntype = rbfnn\nname = B\nmode = kohonen\nepochs = 60\n";

// Manifest lines produced by training (everything but the test-set counts).
std::string training_lines(const std::string& manifest) {
    std::istringstream in(manifest);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.rfind("chosen.", 0) == 0) out += line + '\n';
    }
    return out;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("config parsing") {
    const auto cfg = parse_run_config(parse_kv(
        "seed = 3\ndataset = synth\nsynth_kind = xor\nformat = markdown\n# comment\n"
        "[model]\ntype = grnn\nsigma = 0.4\n[model]\ntype = svm\nkernel = rbf\nsigma = grid\ngrid_points = 4\n"
        "[model]\ntype = ffnn\nhidden_layers = sweep\n"));
    CHECK(cfg.seed == 3);
    CHECK(cfg.data.synth == SynthKind::Xor);
    CHECK(cfg.format == OutputFormat::Markdown);
    REQUIRE(cfg.models.size() == 3);
    CHECK(cfg.models[0].sigma == 0.4);
    CHECK(cfg.models[1].kind == ModelKind::Svm);
    CHECK(cfg.models[1].svm.kernel.kind == KernelKind::Gaussian);
    CHECK(!cfg.models[1].sigma);
    CHECK(cfg.models[1].grid.points == 4);
    CHECK(cfg.models[1].eval_labels == LabelSpace::SignedBinary);
    CHECK(cfg.models[2].depth_sweep);
}

TEST_CASE("config errors name the field") {
    CHECK(field_of("seed = 1\n") == "models");
    CHECK(field_of("bogus = 1\n[model]\ntype = grnn\n") == "bogus");
    CHECK(field_of("[model]\ntype = grnn\nmode = fixed\n") == "model[0].mode");
    CHECK(field_of("[model]\ntype = grnn\n[model]\ntype = svm\nc = -1\n") == "model[1].svm");
    CHECK(field_of("[model]\ntype = perceptron\n") == "model[0].type");
    CHECK(field_of("[model]\nname = x\n") == "model[0].type");
    CHECK(field_of("seed = abc\n[model]\ntype = grnn\n") == "seed");
    CHECK(field_of("dataset = csv\n[model]\ntype = grnn\n") == "csv_path");
    CHECK(field_of("[other]\n") == "line 1");
    CHECK_THROWS_AS(load_run_config("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("two-row table schema and determinism") {
    const auto cfg = parse_run_config(parse_kv(kTwoRbf));
    const auto a = run_benchmark(cfg);
    REQUIRE(a.rows.size() == 2);
    CHECK(a.rows[0].model_name == "A");
    CHECK(a.rows[1].model_name == "B");
    std::istringstream in(a.table);
    std::string line;
    std::getline(in, line);
    CHECK(line == tsv_header());
    std::getline(in, line);
    CHECK(line == tsv_row(a.rows[0]));
    std::getline(in, line);
    CHECK(line == tsv_row(a.rows[1]));
    CHECK(!std::getline(in, line));

    const auto b = run_benchmark(cfg);
    CHECK(a.table == b.table);
    CHECK(a.manifest == b.manifest);
    CHECK(a.manifest.find("seed = 11\n") != std::string::npos);

    auto other = cfg;
    other.seed = 12;
    CHECK(run_benchmark(other).manifest != a.manifest);
    CHECK(row_seed(11, 0) != row_seed(11, 1));
    CHECK(row_seed(11, 0) != row_seed(12, 0));
}

TEST_CASE("perturbing test rows leaves training untouched") {
    const auto dir = std::filesystem::temp_directory_path() / "sigmanet_test_bench";
    std::filesystem::create_directories(dir);
    const auto raw = synth_dataset(SynthKind::TwoGaussians, 100, 21);
    write_csv(dir / "clean.csv", raw);

    RunConfig cfg = parse_run_config(parse_kv(
        "[model]\ntype = grnn\nsigma = grid\ngrid_points = 6\n"
        "[model]\ntype = rbfnn\nmode = kohonen\nepochs = 40\n"
        "[model]\ntype = svm\nkernel = linear\n"));
    cfg.seed = 21;
    cfg.data.kind = DataSource::Kind::Csv;
    cfg.data.csv_path = dir / "clean.csv";
    cfg.data.target_column = raw.dim();

    // Same split as prepare_data: it only looks at the sign labels, which stay put.
    SplitSpec spec = cfg.split;
    spec.seed = cfg.seed;
    const auto idx = split_indices(relabel_signed(raw), spec);
    REQUIRE(!idx.test.empty());
    Matrix f = raw.features();
    for (std::size_t i : idx.test) {
        for (std::size_t c = 0; c < f.cols(); ++c) f(i, c) = -3.0 * f(i, c) + 50.0;
    }
    write_csv(dir / "dirty.csv", Dataset(f, raw.targets()));

    const auto clean = run_benchmark(cfg);
    cfg.data.csv_path = dir / "dirty.csv";
    const auto dirty = run_benchmark(cfg);
    CHECK(training_lines(clean.manifest) == training_lines(dirty.manifest));
    CHECK(!training_lines(clean.manifest).empty());
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
