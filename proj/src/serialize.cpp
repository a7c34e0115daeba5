#include "sigmanet/serialize.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <string>

#include "sigmanet/errors.hpp"

namespace sigmanet {

namespace {

constexpr int kFormatVersion = 1;

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out), old_prec_(out.precision()) { out_ << std::setprecision(17); }
    ~Writer() { out_.precision(old_prec_); }
    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    void header(const char* kind) { out_ << "sigmanet-" << kind << ' ' << kFormatVersion << '\n'; }

    void values(std::span<const double> v) {
        for (std::size_t i = 0; i < v.size(); ++i) out_ << (i ? " " : "") << v[i];
        out_ << '\n';
    }

    std::ostream& raw() { return out_; }

private:
    std::ostream& out_;
    std::streamsize old_prec_;
};

template <typename T>
T read_value(std::istream& in, const char* what) {
    T v{};
    if (!(in >> v)) throw ParseError(std::string("model file: cannot read ") + what, 0, 0);
    return v;
}

void expect_header(std::istream& in, const std::string& kind) {
    const auto tag = read_value<std::string>(in, "header");
    if (tag != "sigmanet-" + kind) throw ParseError("model file: expected sigmanet-" + kind + ", got " + tag, 0, 0);
    const int version = read_value<int>(in, "version");
    if (version != kFormatVersion) {
        throw ParseError("model file: unsupported version " + std::to_string(version), 0, 0);
    }
}

void read_into(std::istream& in, std::span<double> dst, const char* what) {
    for (double& v : dst) v = read_value<double>(in, what);
}

}  // namespace

void write_model(std::ostream& out, const RbfNetwork& net) {
    Writer w(out);
    w.header("rbf");
    w.raw() << net.hidden_units() << ' ' << net.dim() << '\n';
    for (std::size_t j = 0; j < net.hidden_units(); ++j) w.values(net.centers.row(j));
    w.values(net.widths);
    w.values(net.out_weights);
    w.raw() << net.bias << '\n';
}

RbfNetwork read_rbf_network(std::istream& in) {
    expect_header(in, "rbf");
    const auto units = read_value<std::size_t>(in, "hidden units");
    const auto dim = read_value<std::size_t>(in, "dim");
    RbfNetwork net{Matrix(units, dim), Vector(units), Vector(units), 0.0};
    read_into(in, net.centers.data(), "centers");
    read_into(in, net.widths, "widths");
    read_into(in, net.out_weights, "weights");
    net.bias = read_value<double>(in, "bias");
    net.validate();
    return net;
}

void write_model(std::ostream& out, const SvmModel& m) {
    Writer w(out);
    w.header("svm");
    w.raw() << (m.kernel.kind == KernelKind::Linear ? "linear" : "gaussian") << ' ' << m.kernel.sigma << ' ' << m.c
            << ' ' << m.alphas.size() << ' ' << m.dim() << '\n';
    w.raw() << m.bias_b << '\n';
    for (std::size_t i = 0; i < m.alphas.size(); ++i) {
        w.raw() << m.support_indices[i] << ' ' << m.alphas[i] << ' ' << m.support_targets[i];
        for (double v : m.support_vectors.row(i)) w.raw() << ' ' << v;
        w.raw() << '\n';
    }
}

SvmModel read_svm_model(std::istream& in) {
    expect_header(in, "svm");
    SvmModel m;
    const auto kind = read_value<std::string>(in, "kernel");
    if (kind == "linear") {
        m.kernel.kind = KernelKind::Linear;
    } else if (kind == "gaussian") {
        m.kernel.kind = KernelKind::Gaussian;
    } else {
        throw ParseError("model file: unknown kernel " + kind, 0, 0);
    }
    m.kernel.sigma = read_value<double>(in, "sigma");
    m.c = read_value<double>(in, "c");
    const auto n = read_value<std::size_t>(in, "support vector count");
    const auto dim = read_value<std::size_t>(in, "dim");
    m.bias_b = read_value<double>(in, "bias");
    m.support_vectors = Matrix(n, dim);
    m.alphas.resize(n);
    m.support_targets.resize(n);
    m.support_indices.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.support_indices[i] = read_value<std::size_t>(in, "index");
        m.alphas[i] = read_value<double>(in, "alpha");
        m.support_targets[i] = read_value<double>(in, "target");
        read_into(in, m.support_vectors.row(i), "support vector");
    }
    return m;
}

void write_model(std::ostream& out, const MlpNetwork& net) {
    Writer w(out);
    w.header("mlp");
    w.raw() << net.layers.size() << '\n';
    for (const auto& layer : net.layers) {
        w.raw() << layer.weights.rows() << ' ' << layer.weights.cols() << '\n';
        for (std::size_t r = 0; r < layer.weights.rows(); ++r) w.values(layer.weights.row(r));
        w.values(layer.bias);
    }
}

MlpNetwork read_mlp_network(std::istream& in) {
    expect_header(in, "mlp");
    const auto count = read_value<std::size_t>(in, "layer count");
    MlpNetwork net;
    for (std::size_t l = 0; l < count; ++l) {
        const auto rows = read_value<std::size_t>(in, "layer rows");
        const auto cols = read_value<std::size_t>(in, "layer cols");
        MlpLayer layer{Matrix(rows, cols), Vector(rows)};
        read_into(in, layer.weights.data(), "weights");
        read_into(in, layer.bias, "bias");
        net.layers.push_back(std::move(layer));
    }
    net.validate();
    return net;
}

}  // namespace sigmanet
