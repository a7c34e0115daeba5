#include "sigmanet/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "sigmanet/errors.hpp"
#include "sigmanet/grnn.hpp"

namespace sigmanet {

namespace {

// ---------------------------------------------------------------------------
// Value formatting and parsing

std::string real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string boolean(bool b) { return b ? "true" : "false"; }

std::string_view kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::Grnn: return "grnn";
        case ModelKind::Egrnn: return "egrnn";
        case ModelKind::Rbfnn: return "rbfnn";
        case ModelKind::Svm: return "svm";
        case ModelKind::Ffnn: return "ffnn";
    }
    return "unknown";
}

double to_real(const KvEntry& e, const std::string& field) {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (e.value.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ConfigError(field, "expected a number, got '" + e.value + "'");
    }
    return v;
}

std::uint64_t to_uint(const KvEntry& e, const std::string& field) {
    std::uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (e.value.empty() || ec != std::errc() || ptr != last) {
        throw ConfigError(field, "expected a non-negative integer, got '" + e.value + "'");
    }
    return v;
}

std::size_t to_size(const KvEntry& e, const std::string& field) { return static_cast<std::size_t>(to_uint(e, field)); }

bool to_bool(const KvEntry& e, const std::string& field) {
    if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
    if (e.value == "false" || e.value == "no" || e.value == "0") return false;
    throw ConfigError(field, "expected true or false, got '" + e.value + "'");
}

FitnessMetric to_metric(const KvEntry& e, const std::string& field) {
    if (e.value == "f1") return FitnessMetric::F1;
    if (e.value == "accuracy") return FitnessMetric::Accuracy;
    throw ConfigError(field, "expected f1 or accuracy, got '" + e.value + "'");
}

LabelSpace to_labels(const KvEntry& e, const std::string& field) {
    if (e.value == "continuous") return LabelSpace::Continuous;
    if (e.value == "signed") return LabelSpace::SignedBinary;
    throw ConfigError(field, "expected continuous or signed, got '" + e.value + "'");
}

// ---------------------------------------------------------------------------
// Model sections

const std::set<std::string>& allowed_keys(ModelKind kind) {
    static const std::set<std::string> common = {"name", "type", "eval_labels"};
    static const std::map<ModelKind, std::set<std::string>> by_kind = {
        {ModelKind::Grnn, {"sigma", "grid_low", "grid_high", "grid_points", "grid_log", "select", "folds"}},
        {ModelKind::Egrnn,
         {"fitness", "population", "generations", "sigma_low", "sigma_high", "tournament", "blend_alpha",
          "mutation_stddev", "folds"}},
        {ModelKind::Rbfnn,
         {"mode", "hidden_units", "lr_weights", "lr_centers", "lr_widths", "momentum", "epochs", "lvq_epochs",
          "lvq_lr", "conscience"}},
        {ModelKind::Svm,
         {"kernel", "c", "tol", "max_passes", "sigma", "grid_low", "grid_high", "grid_points", "grid_log", "select",
          "folds"}},
        {ModelKind::Ffnn, {"hidden_layers", "units", "lr", "momentum", "epochs"}},
    };
    static std::map<ModelKind, std::set<std::string>> merged;
    auto& m = merged[kind];
    if (m.empty()) {
        m = by_kind.at(kind);
        m.insert(common.begin(), common.end());
    }
    return m;
}

ModelKind to_kind(const std::string& value, const std::string& field) {
    if (value == "grnn") return ModelKind::Grnn;
    if (value == "egrnn") return ModelKind::Egrnn;
    if (value == "rbfnn") return ModelKind::Rbfnn;
    if (value == "svm") return ModelKind::Svm;
    if (value == "ffnn") return ModelKind::Ffnn;
    throw ConfigError(field, "unknown model type '" + value + "'");
}

ModelSpec default_spec(ModelKind kind) {
    ModelSpec s;
    s.kind = kind;
    switch (kind) {
        case ModelKind::Grnn: s.name = "GRNN"; break;
        case ModelKind::Egrnn: s.name = "EGRNN"; break;
        case ModelKind::Rbfnn: s.name = "RBFNN"; break;
        case ModelKind::Svm:
            s.name = "SVM";
            s.eval_labels = LabelSpace::SignedBinary;
            s.grid = GridSpec{1e-2, 10.0, 20, true};
            break;
        case ModelKind::Ffnn: s.name = "FFNN"; break;
    }
    return s;
}

ModelSpec parse_model(const KvSection& section, std::size_t index) {
    const std::string path = "model[" + std::to_string(index) + "]";
    const KvEntry* type = nullptr;
    for (const auto& e : section.entries) {
        if (e.key == "type") type = &e;
    }
    if (!type) throw ConfigError(path + ".type", "missing model type");
    const ModelKind kind = to_kind(type->value, path + ".type");
    ModelSpec s = default_spec(kind);
    const auto& allowed = allowed_keys(kind);
    bool named = false;

    for (const auto& e : section.entries) {
        const std::string field = path + "." + e.key;
        if (!allowed.count(e.key)) throw ConfigError(field, "unknown key for type " + type->value);
        const auto& k = e.key;
        if (k == "type") continue;
        if (k == "name") {
            if (e.value.empty()) throw ConfigError(field, "empty name");
            s.name = e.value;
            named = true;
        } else if (k == "eval_labels") {
            s.eval_labels = to_labels(e, field);
        } else if (k == "sigma") {
            if (e.value == "grid") {
                s.sigma.reset();
            } else {
                s.sigma = to_real(e, field);
            }
        } else if (k == "grid_low") {
            s.grid.low = to_real(e, field);
        } else if (k == "grid_high") {
            s.grid.high = to_real(e, field);
        } else if (k == "grid_points") {
            s.grid.points = to_size(e, field);
        } else if (k == "grid_log") {
            s.grid.log_spaced = to_bool(e, field);
        } else if (k == "select") {
            s.select = to_metric(e, field);
        } else if (k == "folds") {
            s.folds = to_size(e, field);
            s.ssga.folds = s.folds;
        } else if (k == "fitness") {
            s.select = to_metric(e, field);
        } else if (k == "population") {
            s.ssga.population_size = to_size(e, field);
        } else if (k == "generations") {
            s.ssga.generations = to_size(e, field);
        } else if (k == "sigma_low") {
            s.ssga.sigma_low = to_real(e, field);
        } else if (k == "sigma_high") {
            s.ssga.sigma_high = to_real(e, field);
        } else if (k == "tournament") {
            s.ssga.tournament_size = to_size(e, field);
        } else if (k == "blend_alpha") {
            s.ssga.crossover_blend_alpha = to_real(e, field);
        } else if (k == "mutation_stddev") {
            s.ssga.mutation_stddev = to_real(e, field);
        } else if (k == "mode") {
            if (e.value == "fixed") {
                s.rbf.mode = RbfMode::FixedCenters;
            } else if (e.value == "kohonen") {
                s.rbf.mode = RbfMode::KohonenBackprop;
            } else {
                throw ConfigError(field, "expected fixed or kohonen, got '" + e.value + "'");
            }
        } else if (k == "hidden_units") {
            s.rbf.hidden_units = to_size(e, field);
        } else if (k == "lr_weights") {
            s.rbf.lr_weights = to_real(e, field);
        } else if (k == "lr_centers") {
            s.rbf.lr_centers = to_real(e, field);
        } else if (k == "lr_widths") {
            s.rbf.lr_widths = to_real(e, field);
        } else if (k == "momentum") {
            s.rbf.momentum_alpha = to_real(e, field);
            s.mlp.momentum_alpha = s.rbf.momentum_alpha;
        } else if (k == "epochs") {
            s.rbf.epochs = to_size(e, field);
            s.mlp.epochs = s.rbf.epochs;
        } else if (k == "lvq_epochs") {
            s.rbf.lvq.epochs = to_size(e, field);
        } else if (k == "lvq_lr") {
            s.rbf.lvq.lr0 = to_real(e, field);
        } else if (k == "conscience") {
            s.rbf.lvq.conscience_bias = to_real(e, field);
        } else if (k == "kernel") {
            if (e.value == "linear") {
                s.svm.kernel = SvmKernel::linear();
            } else if (e.value == "rbf" || e.value == "gaussian") {
                s.svm.kernel.kind = KernelKind::Gaussian;
            } else {
                throw ConfigError(field, "expected linear or rbf, got '" + e.value + "'");
            }
        } else if (k == "c") {
            s.svm.c = to_real(e, field);
        } else if (k == "tol") {
            s.svm.tol = to_real(e, field);
        } else if (k == "max_passes") {
            s.svm.max_passes = to_size(e, field);
        } else if (k == "hidden_layers") {
            if (e.value == "sweep") {
                s.depth_sweep = true;
            } else {
                s.depth_sweep = false;
                s.mlp.hidden_layers = to_size(e, field);
            }
        } else if (k == "units") {
            s.mlp.units_per_layer = to_size(e, field);
        } else if (k == "lr") {
            s.mlp.lr = to_real(e, field);
        }
    }
    if (!named) {
        if (kind == ModelKind::Rbfnn) {
            s.name = s.rbf.mode == RbfMode::FixedCenters ? "RBFNN-fixed" : "RBFNN-kohonen";
        } else if (kind == ModelKind::Svm) {
            s.name = s.svm.kernel.kind == KernelKind::Linear ? "SVM-linear" : "SVM-rbf";
        }
    }
    return s;
}

void validate_model(const ModelSpec& s, std::size_t index) {
    const std::string path = "model[" + std::to_string(index) + "]";
    auto wrap = [&](const std::string& field, auto&& fn) {
        try {
            fn();
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError(path + "." + field, e.what());
        }
    };
    if (s.sigma && !(*s.sigma > 0.0)) throw ConfigError(path + ".sigma", "sigma must be positive");
    if (s.folds < 2) throw ConfigError(path + ".folds", "folds must be >= 2");
    switch (s.kind) {
        case ModelKind::Grnn:
            if (!s.sigma) wrap("grid", [&] { s.grid.validate(); });
            break;
        case ModelKind::Egrnn: wrap("ssga", [&] { s.ssga.validate(); }); break;
        case ModelKind::Rbfnn:
            wrap("rbf", [&] { s.rbf.validate(); });
            wrap("lvq", [&] {
                LvqConfig l = s.rbf.lvq;
                l.k = s.rbf.hidden_units;
                l.validate();
            });
            break;
        case ModelKind::Svm:
            if (s.eval_labels != LabelSpace::SignedBinary) {
                throw ConfigError(path + ".eval_labels", "svm rows train on signed labels");
            }
            wrap("svm", [&] { s.svm.validate(); });
            if (s.svm.kernel.kind == KernelKind::Gaussian && !s.sigma) wrap("grid", [&] { s.grid.validate(); });
            break;
        case ModelKind::Ffnn: wrap("ffnn", [&] { s.mlp.validate(); }); break;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig

void RunConfig::validate() const {
    if (models.empty()) throw ConfigError("models", "at least one [model] section is required");
    if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
        throw ConfigError("train_fraction", "must lie in (0, 1)");
    }
    if (data.kind == DataSource::Kind::Csv) {
        if (data.csv_path.empty()) throw ConfigError("csv_path", "required when dataset = csv");
        if (!std::filesystem::exists(data.csv_path)) {
            throw ConfigError("csv_path", "file not found: " + data.csv_path.string());
        }
    } else if (data.synth_n < 4) {
        throw ConfigError("synth_n", "must be >= 4");
    }
    for (std::size_t i = 0; i < models.size(); ++i) validate_model(models[i], i);
}

RunConfig parse_run_config(const KvFile& file) {
    RunConfig cfg;
    for (const auto& e : file.sections.front().entries) {
        const auto& k = e.key;
        if (k == "seed") {
            cfg.seed = to_uint(e, k);
        } else if (k == "dataset") {
            if (e.value == "synth") {
                cfg.data.kind = DataSource::Kind::Synth;
            } else if (e.value == "csv") {
                cfg.data.kind = DataSource::Kind::Csv;
            } else {
                throw ConfigError(k, "expected synth or csv, got '" + e.value + "'");
            }
        } else if (k == "synth_kind") {
            try {
                cfg.data.synth = parse_synth_kind(e.value);
            } catch (const Error& err) {
                throw ConfigError(k, err.what());
            }
        } else if (k == "synth_n") {
            cfg.data.synth_n = to_size(e, k);
        } else if (k == "csv_path") {
            cfg.data.csv_path = e.value;
        } else if (k == "target_column") {
            cfg.data.target_column = to_size(e, k);
        } else if (k == "skip_header") {
            cfg.data.skip_header = to_bool(e, k);
        } else if (k == "train_fraction") {
            cfg.split.train_fraction = to_real(e, k);
        } else if (k == "stratified") {
            cfg.split.stratified = to_bool(e, k);
        } else if (k == "standardize") {
            cfg.standardize = to_bool(e, k);
        } else if (k == "format") {
            if (e.value == "tsv") {
                cfg.format = OutputFormat::Tsv;
            } else if (e.value == "markdown") {
                cfg.format = OutputFormat::Markdown;
            } else {
                throw ConfigError(k, "expected tsv or markdown, got '" + e.value + "'");
            }
        } else {
            throw ConfigError(k, "unknown key");
        }
    }
    for (std::size_t s = 1; s < file.sections.size(); ++s) {
        const auto& section = file.sections[s];
        if (section.name != "model") {
            throw ConfigError("line " + std::to_string(section.line), "unknown section [" + section.name + "]");
        }
        cfg.models.push_back(parse_model(section, cfg.models.size()));
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) { return parse_run_config(load_kv(path)); }

std::uint64_t row_seed(std::uint64_t run_seed, std::size_t row_index) {
    // splitmix64 finalizer
    std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(row_index) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Split prepare_data(const RunConfig& cfg) {
    const Dataset raw = cfg.data.kind == DataSource::Kind::Synth
                            ? synth_dataset(cfg.data.synth, cfg.data.synth_n, cfg.seed)
                            : load_csv(cfg.data.csv_path, cfg.data.target_column, {cfg.data.skip_header});
    SplitSpec spec = cfg.split;
    spec.seed = cfg.seed;
    // Stratify on the sign labels even though the working data stays continuous.
    const auto idx = split_indices(raw.label_space() == LabelSpace::Continuous ? relabel_signed(raw) : raw, spec);
    Split out{raw.subset(idx.train), raw.subset(idx.test)};
    if (cfg.standardize) {
        const auto s = fit_standardizer(out.train);
        out.train = apply_standardizer(s, out.train);
        out.test = apply_standardizer(s, out.test);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rows

namespace {

double choose_grid_sigma(const Dataset& train, SweepModel model, const ModelSpec& spec, std::uint64_t seed,
                         TrainedRow& row) {
    const auto folds = std::min(spec.folds, train.size());
    const auto r = sweep(train, model, spec.grid, folds, seed, spec.svm);
    const double sigma = spec.select == FitnessMetric::F1 ? r.best_sigma_f1 : r.best_sigma_accuracy;
    row.chosen.emplace_back("grid.best_sigma_f1", real(r.best_sigma_f1));
    row.chosen.emplace_back("grid.best_sigma_accuracy", real(r.best_sigma_accuracy));
    row.chosen.emplace_back("grid.coincide", boolean(r.coincide));
    row.chosen.emplace_back("grid.tolerance", real(r.tolerance_used));
    return sigma;
}

std::size_t choose_depth(const Dataset& train, const MlpConfig& base, std::uint64_t seed, TrainedRow& row) {
    std::size_t best_depth = kSweepDepths[0];
    double best = -1.0;
    for (std::size_t depth : kSweepDepths) {
        MlpConfig cfg = base;
        cfg.hidden_layers = depth;
        const auto sc = cross_validate(train, std::min<std::size_t>(3, train.size()), seed,
                                       [&](const Dataset& fit, const Dataset& held_out) {
                                           const auto net = mlp_train(fit, cfg);
                                           Vector out(held_out.size());
                                           for (std::size_t i = 0; i < held_out.size(); ++i) {
                                               out[i] = mlp_classify(net, held_out.pattern(i));
                                           }
                                           return out;
                                       });
        row.chosen.emplace_back("depth_sweep.f1[" + std::to_string(depth) + "]", real(sc.f1));
        if (sc.f1 > best) {
            best = sc.f1;
            best_depth = depth;
        }
    }
    return best_depth;
}

}  // namespace

TrainedRow train_row(const ModelSpec& spec, const Dataset& train_in, std::uint64_t seed) {
    TrainedRow row;
    row.name = spec.name;
    Dataset train = train_in;
    if (spec.eval_labels == LabelSpace::SignedBinary && train.label_space() == LabelSpace::Continuous) {
        train = relabel_signed(train);
    }
    const double threshold = default_threshold(train.label_space());
    row.chosen.emplace_back("threshold", real(threshold));

    switch (spec.kind) {
        case ModelKind::Grnn: {
            const double sigma = spec.sigma ? *spec.sigma : choose_grid_sigma(train, SweepModel::Grnn, spec, seed, row);
            row.chosen.emplace_back("sigma", real(sigma));
            auto model = std::make_shared<GrnnModel>(train, GaussianKernelParams(sigma));
            row.classify = [model, threshold](std::span<const double> x) { return model->classify(x, threshold); };
            break;
        }
        case ModelKind::Egrnn: {
            SsgaConfig cfg = spec.ssga;
            cfg.seed = seed;
            const auto r = evolve_sigma(train, spec.select, cfg);
            row.chosen.emplace_back("sigma", real(r.best_sigma));
            row.chosen.emplace_back("ssga.best_fitness", real(r.best_fitness));
            auto model = std::make_shared<GrnnModel>(train, GaussianKernelParams(r.best_sigma));
            row.classify = [model, threshold](std::span<const double> x) { return model->classify(x, threshold); };
            break;
        }
        case ModelKind::Rbfnn: {
            RbfTrainConfig cfg = spec.rbf;
            cfg.seed = seed;
            TrainLog log;
            auto net = std::make_shared<RbfNetwork>(rbf_fit(train, cfg, &log));
            row.chosen.emplace_back("epochs_run", std::to_string(log.epochs_run));
            row.chosen.emplace_back("final_epoch_mse", log.epoch_mse.empty() ? "nan" : real(log.epoch_mse.back()));
            row.classify = [net, threshold](std::span<const double> x) { return rbf_classify(*net, x, threshold); };
            break;
        }
        case ModelKind::Svm: {
            SvmConfig cfg = spec.svm;
            cfg.seed = seed;
            if (cfg.kernel.kind == KernelKind::Gaussian) {
                cfg.kernel.sigma = spec.sigma ? *spec.sigma : choose_grid_sigma(train, SweepModel::RbfSvm, spec, seed, row);
                row.chosen.emplace_back("sigma", real(cfg.kernel.sigma));
            }
            auto model = std::make_shared<SvmModel>(svm_train(train, cfg));
            row.chosen.emplace_back("support_vectors", std::to_string(model->alphas.size()));
            row.classify = [model](std::span<const double> x) { return svm_classify(*model, x); };
            break;
        }
        case ModelKind::Ffnn: {
            MlpConfig cfg = spec.mlp;
            cfg.seed = seed;
            if (spec.depth_sweep) cfg.hidden_layers = choose_depth(train, cfg, seed, row);
            row.chosen.emplace_back("hidden_layers", std::to_string(cfg.hidden_layers));
            if (!is_sweep_depth(cfg.hidden_layers)) row.chosen.emplace_back("note", "depth outside 1/2/4");
            TrainLog log;
            auto net = std::make_shared<MlpNetwork>(mlp_train(train, cfg, &log));
            row.chosen.emplace_back("epochs_run", std::to_string(log.epochs_run));
            // The sigmoid output is compared with 0.5 for either label space.
            row.classify = [net](std::span<const double> x) { return mlp_classify(*net, x, 0.5); };
            break;
        }
    }
    const auto fit = evaluate_row(row, train);
    row.chosen.emplace_back("train_accuracy", real(fit.accuracy));
    return row;
}

EvalReport evaluate_row(const TrainedRow& row, const Dataset& test) {
    Vector predicted(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) predicted[i] = row.classify(test.pattern(i));
    return report(confusion(predicted, signed_labels(test)), row.name);
}

std::string format_table(const std::vector<EvalReport>& rows, OutputFormat format) {
    std::string out = format == OutputFormat::Tsv ? tsv_header() : markdown_header();
    out += '\n';
    for (const auto& r : rows) {
        out += format == OutputFormat::Tsv ? tsv_row(r) : markdown_row(r);
        out += '\n';
    }
    return out;
}

namespace {

void write_spec(std::ostringstream& m, const ModelSpec& s) {
    m << "type = " << kind_name(s.kind) << '\n';
    m << "eval_labels = " << (s.eval_labels == LabelSpace::Continuous ? "continuous" : "signed") << '\n';
    auto grid = [&] {
        m << "grid_low = " << real(s.grid.low) << "\ngrid_high = " << real(s.grid.high)
          << "\ngrid_points = " << s.grid.points << "\ngrid_log = " << boolean(s.grid.log_spaced)
          << "\nselect = " << to_string(s.select) << "\nfolds = " << s.folds << '\n';
    };
    switch (s.kind) {
        case ModelKind::Grnn:
            m << "sigma = " << (s.sigma ? real(*s.sigma) : "grid") << '\n';
            if (!s.sigma) grid();
            break;
        case ModelKind::Egrnn:
            m << "fitness = " << to_string(s.select) << "\npopulation = " << s.ssga.population_size
              << "\ngenerations = " << s.ssga.generations << "\nsigma_low = " << real(s.ssga.sigma_low)
              << "\nsigma_high = " << real(s.ssga.sigma_high) << "\ntournament = " << s.ssga.tournament_size
              << "\nblend_alpha = " << real(s.ssga.crossover_blend_alpha)
              << "\nmutation_stddev = " << real(s.ssga.mutation_stddev) << "\nfolds = " << s.ssga.folds << '\n';
            break;
        case ModelKind::Rbfnn:
            m << "mode = " << (s.rbf.mode == RbfMode::FixedCenters ? "fixed" : "kohonen")
              << "\nhidden_units = " << s.rbf.hidden_units << "\nlr_weights = " << real(s.rbf.lr_weights)
              << "\nlr_centers = " << real(s.rbf.lr_centers) << "\nlr_widths = " << real(s.rbf.lr_widths)
              << "\nmomentum = " << real(s.rbf.momentum_alpha) << "\nepochs = " << s.rbf.epochs
              << "\nmin_improvement = " << real(s.rbf.min_improvement) << "\nlvq_epochs = " << s.rbf.lvq.epochs
              << "\nlvq_lr = " << real(s.rbf.lvq.lr0) << "\nconscience = " << real(s.rbf.lvq.conscience_bias)
              << '\n';
            break;
        case ModelKind::Svm:
            m << "kernel = " << (s.svm.kernel.kind == KernelKind::Linear ? "linear" : "rbf") << "\nc = " << real(s.svm.c)
              << "\ntol = " << real(s.svm.tol) << "\nmax_passes = " << s.svm.max_passes << '\n';
            if (s.svm.kernel.kind == KernelKind::Gaussian) {
                m << "sigma = " << (s.sigma ? real(*s.sigma) : "grid") << '\n';
                if (!s.sigma) grid();
            }
            break;
        case ModelKind::Ffnn:
            m << "hidden_layers = " << (s.depth_sweep ? "sweep" : std::to_string(s.mlp.hidden_layers))
              << "\nunits = " << s.mlp.units_per_layer << "\nlr = " << real(s.mlp.lr)
              << "\nmomentum = " << real(s.mlp.momentum_alpha) << "\nepochs = " << s.mlp.epochs
              << "\nmin_improvement = " << real(s.mlp.min_improvement) << '\n';
            break;
    }
}

}  // namespace

BenchResult run_benchmark(const RunConfig& cfg) {
    cfg.validate();
    const Split data = prepare_data(cfg);

    std::ostringstream m;
    m << "# sigmanet run manifest\n";
    m << "seed = " << cfg.seed << '\n';
    if (cfg.data.kind == DataSource::Kind::Synth) {
        m << "dataset = synth\nsynth_kind = " << to_string(cfg.data.synth) << "\nsynth_n = " << cfg.data.synth_n << '\n';
    } else {
        m << "dataset = csv\ncsv_path = " << cfg.data.csv_path.string() << "\ntarget_column = " << cfg.data.target_column
          << "\nskip_header = " << boolean(cfg.data.skip_header) << '\n';
    }
    m << "train_fraction = " << real(cfg.split.train_fraction) << "\nstratified = " << boolean(cfg.split.stratified)
      << "\nstandardize = " << boolean(cfg.standardize)
      << "\nformat = " << (cfg.format == OutputFormat::Tsv ? "tsv" : "markdown") << '\n';
    m << "train_patterns = " << data.train.size() << "\ntest_patterns = " << data.test.size() << '\n';
    m << "positive_class = +1 (continuous target >= 0.5)\n";
    if (cfg.data.kind == DataSource::Kind::Synth) {
        m << "note.data = synthetic stand-in data; absolute scores are not comparable across datasets\n";
    }
    m << "note.egrnn = the EGRNN row is a GRNN whose sigma is evolved by the steady-state GA; "
         "the GRNN row uses a fixed or grid-selected sigma\n";
    m << "note.ffnn = the FFNN has no kernel width; the sweep over 1, 2 and 4 hidden layers stands in for the "
         "sigma sweep\n";

    BenchResult result;
    for (std::size_t i = 0; i < cfg.models.size(); ++i) {
        const auto& spec = cfg.models[i];
        const std::uint64_t seed = row_seed(cfg.seed, i);
        TrainedRow row;
        try {
            row = train_row(spec, data.train, seed);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw Error("model[" + std::to_string(i) + "] " + spec.name + ": " + e.what());
        }
        auto rep = evaluate_row(row, data.test);
        m << "\n[model]\nname = " << spec.name << "\nseed = " << seed << '\n';
        write_spec(m, spec);
        for (const auto& [k, v] : row.chosen) m << "chosen." << k << " = " << v << '\n';
        m << "counts = tp " << rep.counts.tp << " fp " << rep.counts.fp << " tn " << rep.counts.tn << " fn "
          << rep.counts.fn << '\n';
        result.rows.push_back(std::move(rep));
    }
    result.table = format_table(result.rows, cfg.format);
    result.manifest = m.str();
    return result;
}

std::vector<ModelSpec> default_models() {
    std::vector<ModelSpec> models;
    models.push_back(default_spec(ModelKind::Grnn));
    models.push_back(default_spec(ModelKind::Egrnn));

    ModelSpec rbf_a = default_spec(ModelKind::Rbfnn);
    rbf_a.name = "RBFNN-fixed";
    rbf_a.rbf.mode = RbfMode::FixedCenters;
    models.push_back(rbf_a);

    ModelSpec rbf_b = default_spec(ModelKind::Rbfnn);
    rbf_b.name = "RBFNN-kohonen";
    rbf_b.rbf.mode = RbfMode::KohonenBackprop;
    models.push_back(rbf_b);

    ModelSpec svm_lin = default_spec(ModelKind::Svm);
    svm_lin.name = "SVM-linear";
    svm_lin.svm.kernel = SvmKernel::linear();
    models.push_back(svm_lin);

    ModelSpec svm_rbf = default_spec(ModelKind::Svm);
    svm_rbf.name = "SVM-rbf";
    svm_rbf.svm.kernel.kind = KernelKind::Gaussian;
    models.push_back(svm_rbf);

    ModelSpec ffnn = default_spec(ModelKind::Ffnn);
    ffnn.depth_sweep = true;
    models.push_back(ffnn);
    return models;
}

}  // namespace sigmanet
