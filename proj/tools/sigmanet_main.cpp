// sigmanet command line: benchmark tables, sigma sweeps, GA runs, synthetic
// data and gradient checks.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "sigmanet/bench.hpp"
#include "sigmanet/errors.hpp"
#include "sigmanet/gradcheck.hpp"
#include "sigmanet/sigma_search.hpp"
#include "sigmanet/ssga.hpp"

namespace {

using namespace sigmanet;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

// Data selection shared by sweep and evolve.
struct DataFlags {
    std::string config;
    std::string synth = "two_gaussians";
    std::size_t n = 200;
    std::string csv;
    std::size_t target_column = 0;
    bool skip_header = false;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config, "Run config; its data and split settings are used");
        cmd->add_option("--synth", synth, "Synthetic dataset: two_gaussians, ring, xor");
        cmd->add_option("--n", n, "Synthetic dataset size");
        cmd->add_option("--csv", csv, "CSV data file (overrides --synth)");
        cmd->add_option("--target-column", target_column, "Target column of the CSV file");
        cmd->add_flag("--skip-header", skip_header, "Skip the first CSV line");
        cmd->add_option("--seed", seed, "Run seed");
    }

    RunConfig run_config() const {
        RunConfig cfg;
        if (!config.empty()) {
            cfg = load_run_config(config);
        } else if (!csv.empty()) {
            cfg.data.kind = DataSource::Kind::Csv;
            cfg.data.csv_path = csv;
            cfg.data.target_column = target_column;
            cfg.data.skip_header = skip_header;
        } else {
            try {
                cfg.data.synth = parse_synth_kind(synth);
            } catch (const Error& e) {
                throw ConfigError("--synth", e.what());
            }
            cfg.data.synth_n = n;
        }
        if (seed) cfg.seed = *seed;
        return cfg;
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

FitnessMetric parse_metric(const std::string& s) {
    if (s == "f1") return FitnessMetric::F1;
    if (s == "accuracy") return FitnessMetric::Accuracy;
    throw ConfigError("--metric", "expected f1 or accuracy, got '" + s + "'");
}

int run_bench(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out_path,
              const std::string& format) {
    if (config.empty()) throw ConfigError("--config", "bench needs a config file");
    RunConfig cfg = load_run_config(config);
    if (seed) cfg.seed = *seed;
    if (format == "tsv") {
        cfg.format = OutputFormat::Tsv;
    } else if (format == "markdown") {
        cfg.format = OutputFormat::Markdown;
    } else if (!format.empty()) {
        throw ConfigError("--format", "expected tsv or markdown, got '" + format + "'");
    }
    cfg.validate();
    const auto result = run_benchmark(cfg);
    if (out_path.empty()) {
        std::cout << result.table;
    } else {
        open_out(out_path) << result.table;
        open_out(out_path + ".manifest") << result.manifest;
    }
    return 0;
}

int run_sweep(const DataFlags& data, const std::string& model_name, const GridSpec& grid, std::size_t folds,
              bool with_ssga, const SsgaConfig& ga_base, const std::string& out_path) {
    SweepModel model;
    if (model_name == "grnn") {
        model = SweepModel::Grnn;
    } else if (model_name == "rbf_svm") {
        model = SweepModel::RbfSvm;
    } else {
        throw ConfigError("--model", "expected grnn or rbf_svm, got '" + model_name + "'");
    }
    try {
        grid.validate();
    } catch (const InvalidGrid& e) {
        throw ConfigError("grid", e.what());
    }
    const RunConfig cfg = data.run_config();
    const Dataset train = prepare_data(cfg).train;
    const auto r = sweep(train, model, grid, folds, cfg.seed);

    std::ostringstream report;
    report << "# " << to_string(model) << " sweep on " << train.size() << " training patterns\n";
    report << "# " << sweep_verdict(r) << '\n';
    if (with_ssga) {
        SsgaConfig ga = ga_base;
        ga.seed = cfg.seed;
        ga.folds = folds;
        report << compare_with_ssga(train, ga, r);
    }
    if (out_path.empty()) {
        write_sweep_tsv(std::cout, r);
        std::cout << report.str();
    } else {
        auto out = open_out(out_path);
        write_sweep_tsv(out, r);
        std::cout << report.str();
    }
    return 0;
}

int run_evolve(const DataFlags& data, SsgaConfig ga, const std::string& metric_name, const std::string& trace_path) {
    const FitnessMetric metric = parse_metric(metric_name);
    const RunConfig cfg = data.run_config();
    ga.seed = cfg.seed;
    try {
        ga.validate();
    } catch (const InvalidConfig& e) {
        throw ConfigError("ssga", e.what());
    }
    const Dataset train = prepare_data(cfg).train;
    const auto r = evolve_sigma(train, metric, ga);
    std::cout << "metric\t" << (metric == FitnessMetric::F1 ? "f1" : "accuracy") << '\n'
              << "best_sigma\t" << std::setprecision(6) << r.best_sigma << '\n'
              << "best_fitness\t" << std::fixed << std::setprecision(4) << r.best_fitness << '\n'
              << "evaluations\t" << r.trace.size() << '\n';
    if (!trace_path.empty()) {
        auto out = open_out(trace_path);
        write_trace_tsv(out, r);
    }
    return 0;
}

int run_synth(const std::string& kind_name, std::size_t n, std::uint64_t seed, const std::string& out_path) {
    SynthKind kind;
    try {
        kind = parse_synth_kind(kind_name);
    } catch (const Error& e) {
        throw ConfigError("--kind", e.what());
    }
    if (n < 4) throw ConfigError("--n", "must be >= 4");
    const Dataset d = synth_dataset(kind, n, seed);
    if (!out_path.empty()) {
        write_csv(out_path, d);
        return 0;
    }
    std::cout << std::setprecision(17);
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (double v : d.pattern(i)) std::cout << v << ',';
        std::cout << d.target(i) << '\n';
    }
    return 0;
}

int run_gradcheck_cmd(std::size_t seeds, bool inject_fault) {
    GradcheckOptions opt;
    opt.seeds = seeds;
    opt.inject_fault = inject_fault;
    const auto rep = run_gradcheck(opt);
    std::cout << "checked " << rep.checked << " gradient entries, " << rep.failed << " failed, max relative error "
              << std::scientific << std::setprecision(3) << rep.max_rel_error << '\n';
    if (!rep.ok()) {
        std::cerr << "gradcheck: first failure at " << rep.first_failure << '\n';
        return kExitRuntime;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sigmanet: kernel-width experiments for GRNN, RBFNN, SVM and FFNN classifiers"};
    app.require_subcommand(1);

    // bench
    std::string bench_config;
    std::optional<std::uint64_t> bench_seed;
    std::string bench_out;
    std::string bench_format;
    auto* bench = app.add_subcommand("bench", "Train every configured model row and print the comparison table");
    bench->add_option("--config", bench_config, "Run config file");
    bench->add_option("--seed", bench_seed, "Override the config seed");
    bench->add_option("--out", bench_out, "Write the table here and the manifest to <out>.manifest");
    bench->add_option("--format", bench_format, "tsv or markdown");

    // sweep
    DataFlags sweep_data;
    std::string sweep_model = "grnn";
    GridSpec grid;
    bool linear_grid = false;
    std::size_t sweep_folds = 5;
    bool sweep_ssga = false;
    SsgaConfig sweep_ga;
    std::string sweep_out;
    std::string sweep_format;
    auto* sweep_cmd = app.add_subcommand("sweep", "Grid search of sigma for F1 and accuracy");
    sweep_data.attach(sweep_cmd);
    sweep_cmd->add_option("--model", sweep_model, "grnn or rbf_svm");
    sweep_cmd->add_option("--low", grid.low, "Smallest grid sigma");
    sweep_cmd->add_option("--high", grid.high, "Largest grid sigma");
    sweep_cmd->add_option("--points", grid.points, "Grid size");
    sweep_cmd->add_flag("--linear", linear_grid, "Linear instead of log spacing");
    sweep_cmd->add_option("--folds", sweep_folds, "Cross-validation folds");
    sweep_cmd->add_flag("--ssga", sweep_ssga, "Also evolve sigma with the GA and compare");
    sweep_cmd->add_option("--generations", sweep_ga.generations, "GA replacement steps (with --ssga)");
    sweep_cmd->add_option("--population", sweep_ga.population_size, "GA population (with --ssga)");
    sweep_cmd->add_option("--out", sweep_out, "Write the sigma/f1/accuracy TSV here");
    sweep_cmd->add_option("--format", sweep_format, "Only tsv is supported")->check(CLI::IsMember({"tsv"}));

    // evolve
    DataFlags evolve_data;
    SsgaConfig evolve_ga;
    std::string evolve_metric = "f1";
    std::string evolve_trace;
    auto* evolve = app.add_subcommand("evolve", "Evolve the GRNN sigma with the steady-state GA");
    evolve_data.attach(evolve);
    evolve->add_option("--metric", evolve_metric, "f1 or accuracy");
    evolve->add_option("--population", evolve_ga.population_size, "Population size");
    evolve->add_option("--generations", evolve_ga.generations, "Replacement steps");
    evolve->add_option("--sigma-low", evolve_ga.sigma_low, "Lower sigma bound");
    evolve->add_option("--sigma-high", evolve_ga.sigma_high, "Upper sigma bound");
    evolve->add_option("--tournament", evolve_ga.tournament_size, "Tournament size");
    evolve->add_option("--mutation", evolve_ga.mutation_stddev, "Mutation stddev in log sigma");
    evolve->add_option("--folds", evolve_ga.folds, "Cross-validation folds");
    evolve->add_option("--out,--trace", evolve_trace, "Write the per-evaluation trace TSV here");

    // synth
    std::string synth_kind = "two_gaussians";
    std::size_t synth_n = 200;
    std::uint64_t synth_seed = 42;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "Write a synthetic dataset as CSV (features then target)");
    synth->add_option("--kind", synth_kind, "two_gaussians, ring or xor");
    synth->add_option("--n", synth_n, "Number of patterns");
    synth->add_option("--seed", synth_seed, "Generator seed");
    synth->add_option("--out", synth_out, "Output CSV path (stdout when omitted)");

    // gradcheck
    std::size_t gc_seeds = 100;
    bool gc_fault = false;
    auto* gradcheck = app.add_subcommand("gradcheck", "Compare analytic gradients with finite differences");
    gradcheck->add_option("--seeds", gc_seeds, "Random networks per model family");
    gradcheck->add_flag("--inject-fault", gc_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (bench->parsed()) return run_bench(bench_config, bench_seed, bench_out, bench_format);
        if (sweep_cmd->parsed()) {
            grid.log_spaced = !linear_grid;
            return run_sweep(sweep_data, sweep_model, grid, sweep_folds, sweep_ssga, sweep_ga, sweep_out);
        }
        if (evolve->parsed()) return run_evolve(evolve_data, evolve_ga, evolve_metric, evolve_trace);
        if (synth->parsed()) return run_synth(synth_kind, synth_n, synth_seed, synth_out);
        if (gradcheck->parsed()) return run_gradcheck_cmd(gc_seeds, gc_fault);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
