#include "sigmanet/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sigmanet/ffnn.hpp"
#include "sigmanet/rbfnn.hpp"
#include "sigmanet/rng.hpp"

namespace sigmanet {

namespace {

class Checker {
public:
    Checker(const GradcheckOptions& o, GradcheckReport& r) : opt_(o), rep_(r) {}

    // Perturbs `param` in place, evaluates `loss` on both sides, restores it.
    void check(double& param, double analytic, const std::function<double()>& loss, const std::string& label) {
        const double saved = param;
        param = saved + opt_.epsilon;
        const double up = loss();
        param = saved - opt_.epsilon;
        const double down = loss();
        param = saved;
        const double numeric = (up - down) / (2.0 * opt_.epsilon);

        if (opt_.inject_fault && rep_.checked == 0) analytic = analytic * 1.5 + 1e-3;
        const double diff = std::abs(analytic - numeric);
        const double scale = std::max(std::abs(analytic), std::abs(numeric));
        const double rel = scale > 0.0 ? diff / scale : 0.0;
        ++rep_.checked;
        if (scale > 1e-6) rep_.max_rel_error = std::max(rep_.max_rel_error, rel);
        if (diff > opt_.rel_tol * scale + opt_.abs_floor) {
            if (rep_.failed == 0) rep_.first_failure = label;
            ++rep_.failed;
        }
    }

private:
    const GradcheckOptions& opt_;
    GradcheckReport& rep_;
};

void check_rbf(Rng& rng, Checker& checker, std::uint64_t seed) {
    const std::size_t units = 1 + rng.index(3);
    const std::size_t dim = 1 + rng.index(3);
    RbfNetwork net{Matrix(units, dim), Vector(units), Vector(units), rng.uniform(-1.0, 1.0)};
    for (double& c : net.centers.data()) c = rng.uniform(-1.0, 1.0);
    for (double& w : net.widths) w = rng.uniform(0.5, 2.0);
    for (double& w : net.out_weights) w = rng.uniform(-1.0, 1.0);
    Vector x(dim);
    for (double& v : x) v = rng.uniform(-1.5, 1.5);
    const double y = rng.uniform(-1.0, 1.0);

    const auto g = rbf_gradient(net, x, y);
    auto loss = [&] { return rbf_loss(net, x, y); };
    const std::string tag = "rbf seed " + std::to_string(seed);
    for (std::size_t j = 0; j < units; ++j) {
        checker.check(net.out_weights[j], g.out_weights[j], loss, tag + " w");
        checker.check(net.widths[j], g.widths[j], loss, tag + " sigma");
        for (std::size_t i = 0; i < dim; ++i) checker.check(net.centers(j, i), g.centers(j, i), loss, tag + " mu");
    }
    checker.check(net.bias, g.bias, loss, tag + " bias");
}

void check_mlp(Rng& rng, Checker& checker, std::uint64_t seed, std::size_t depth) {
    MlpConfig cfg;
    cfg.hidden_layers = depth;
    cfg.units_per_layer = 2 + rng.index(3);
    cfg.seed = rng.next();
    const std::size_t dim = 1 + rng.index(3);
    MlpNetwork net = mlp_init(dim, cfg);
    for (auto& layer : net.layers) {
        for (double& w : layer.weights.data()) w = rng.uniform(-1.0, 1.0);
        for (double& b : layer.bias) b = rng.uniform(-1.0, 1.0);
    }
    Vector x(dim);
    for (double& v : x) v = rng.uniform(-1.5, 1.5);
    const double y = rng.uniform();

    const auto g = mlp_gradient(net, x, y);
    auto loss = [&] { return mlp_loss(net, x, y); };
    const std::string tag = "mlp depth " + std::to_string(depth) + " seed " + std::to_string(seed);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto w = net.layers[l].weights.data();
        auto gw = g[l].weights.data();
        for (std::size_t i = 0; i < w.size(); ++i) checker.check(w[i], gw[i], loss, tag + " W");
        for (std::size_t i = 0; i < net.layers[l].bias.size(); ++i) {
            checker.check(net.layers[l].bias[i], g[l].bias[i], loss, tag + " b");
        }
    }
}

}  // namespace

GradcheckReport run_gradcheck(const GradcheckOptions& options) {
    GradcheckReport report;
    Checker checker(options, report);
    for (std::uint64_t seed = 0; seed < options.seeds; ++seed) {
        Rng rng(seed);
        check_rbf(rng, checker, seed);
        for (std::size_t depth : kSweepDepths) check_mlp(rng, checker, seed, depth);
    }
    return report;
}

}  // namespace sigmanet
