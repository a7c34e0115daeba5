#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "sigmanet/errors.hpp"
#include "sigmanet/kernelmath.hpp"
#include "sigmanet/momentum.hpp"
#include "sigmanet/rbfnn.hpp"
#include "sigmanet/rng.hpp"

using namespace sigmanet;

namespace {

RbfNetwork random_net(Rng& rng, std::size_t units, std::size_t dim) {
    RbfNetwork net{Matrix(units, dim), Vector(units), Vector(units), rng.uniform(-1, 1)};
    for (double& v : net.centers.data()) v = rng.uniform(-1, 1);
    for (double& v : net.widths) v = rng.uniform(0.5, 2.0);
    for (double& v : net.out_weights) v = rng.uniform(-1, 1);
    return net;
}

double global_stddev(const Dataset& d) {
    const auto v = d.features().data();
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace

TEST_SUITE("rbfnn") {

TEST_CASE("forward pass") {
    RbfNetwork net{Matrix{{1.0, 2.0}, {-1.0, 0.0}}, Vector{0.5, 1.0}, Vector{0.3, -0.7}, 0.25};
    const auto f = rbf_forward(net, Vector{1.0, 2.0});
    CHECK(f.hidden[0] == 1.0);

    net.out_weights = {0.0, 0.0};
    CHECK(rbf_output(net, Vector{7.0, -3.0}) == 0.25);

    // ||x - mu||^2 = 2 sigma^2 with w = 1, bias = 0.
    const RbfNetwork one{Matrix{{0.0}}, Vector{0.8}, Vector{1.0}, 0.0};
    CHECK(rbf_output(one, Vector{0.8 * std::sqrt(2.0)}) == doctest::Approx(0.367879).epsilon(1e-6));

    CHECK_THROWS_AS(rbf_output(one, Vector{1.0, 2.0}), DimensionMismatch);
    CHECK_THROWS_AS(RbfNetwork{}.validate(), NotInitialized);
    RbfNetwork bad = one;
    bad.widths = {0.0};
    CHECK_THROWS_AS(bad.validate(), NotInitialized);
}

TEST_CASE("one hand-computed step") {
    // J = 1, alpha = 0: the output-weight update is lr * (y - out) * h.
    const RbfNetwork net{Matrix{{0.0}}, Vector{1.0}, Vector{0.5}, 0.1};
    const Dataset d(Matrix{{1.0}}, Vector{1.0});
    RbfTrainConfig cfg;
    cfg.epochs = 1;
    cfg.momentum_alpha = 0.0;
    cfg.lr_weights = 0.2;
    const double h = std::exp(-0.5);
    const double err = 1.0 - (0.5 * h + 0.1);
    const auto after = rbf_train(net, d, cfg);
    CHECK(after.out_weights[0] == doctest::Approx(0.5 + 0.2 * err * h).epsilon(1e-15));
    CHECK(after.bias == doctest::Approx(0.1 + 0.2 * err).epsilon(1e-15));
    CHECK(after.centers == net.centers);
    CHECK(after.widths == net.widths);
}

TEST_CASE("gradients match central differences") {
    Rng rng(12);
    const double eps = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        auto net = random_net(rng, 1 + rng.index(3), 1 + rng.index(3));
        Vector x(net.dim());
        for (double& v : x) v = rng.uniform(-1.5, 1.5);
        const double y = rng.uniform(-1, 1);
        const auto g = rbf_gradient(net, x, y);
        auto check = [&](double& p, double analytic) {
            const double keep = p;
            p = keep + eps;
            const double up = rbf_loss(net, x, y);
            p = keep - eps;
            const double down = rbf_loss(net, x, y);
            p = keep;
            const double numeric = (up - down) / (2 * eps);
            CHECK(std::abs(numeric - analytic) <= 1e-4 * std::max(std::abs(numeric), std::abs(analytic)) + 1e-8);
        };
        for (std::size_t j = 0; j < net.hidden_units(); ++j) {
            check(net.out_weights[j], g.out_weights[j]);
            check(net.widths[j], g.widths[j]);
            for (std::size_t i = 0; i < net.dim(); ++i) check(net.centers(j, i), g.centers(j, i));
        }
        check(net.bias, g.bias);
    }
}

TEST_CASE("mode A initialization") {
    const auto d = synth_dataset(SynthKind::Ring, 30, 2);
    const auto net = init_mode_a(d, 30, 5);
    // J = N: the centers are a permutation of the patterns.
    std::vector<Vector> got, want;
    for (std::size_t i = 0; i < 30; ++i) {
        got.emplace_back(net.centers.row(i).begin(), net.centers.row(i).end());
        want.emplace_back(d.pattern(i).begin(), d.pattern(i).end());
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);

    const double sd = global_stddev(d);
    for (double w : net.widths) CHECK(w == doctest::Approx(sd).epsilon(1e-12));
    for (double w : net.out_weights) CHECK(std::abs(w) <= 0.1);
    CHECK(std::abs(net.bias) <= 0.1);

    CHECK(init_mode_a(d, 10, 5) == init_mode_a(d, 10, 5));
    CHECK_THROWS_AS(init_mode_a(d, 31, 5), TooFewPatterns);
}

TEST_CASE("mode A training leaves the hidden layer untouched") {
    const auto d = synth_dataset(SynthKind::TwoGaussians, 60, 3);
    RbfTrainConfig cfg;
    cfg.epochs = 20;
    const auto start = init_mode_a(d, 6, 1);
    const auto trained = rbf_train(start, d, cfg);
    CHECK(trained.centers == start.centers);
    CHECK(trained.widths == start.widths);
    CHECK(trained.out_weights != start.out_weights);
}

TEST_CASE("mode B widths are mean winning distances") {
    // Two tight, far-apart blobs in 2-D.
    Rng rng(4);
    Matrix f(40, 2);
    for (std::size_t i = 0; i < 40; ++i) {
        const double cx = i % 2 == 0 ? 5.0 : -5.0;
        f(i, 0) = cx + rng.normal(0, 0.3);
        f(i, 1) = rng.normal(0, 0.3);
    }
    const Dataset d(f, Vector(40, 0.5));
    RbfTrainConfig cfg;
    cfg.hidden_units = 2;
    cfg.lvq.conscience_bias = 1.0;  // centers start together; the bias splits them
    cfg.lvq.epochs = 30;
    const auto net = init_mode_b(d, cfg);

    // Independent pass: assign each pattern to its nearest final center.
    for (std::size_t j = 0; j < 2; ++j) {
        double sum = 0;
        std::size_t n = 0;
        for (std::size_t p = 0; p < 40; ++p) {
            const double dj = sq_euclidean(d.pattern(p), net.centers.row(j));
            const double dk = sq_euclidean(d.pattern(p), net.centers.row(1 - j));
            if (dj < dk || (dj == dk && j == 0)) {
                sum += std::sqrt(dj);
                ++n;
            }
        }
        REQUIRE(n == 20);
        // Widths were set after the last epoch from the same codebook.
        CHECK(net.widths[j] == doctest::Approx(sum / static_cast<double>(n)).epsilon(1e-9));
        CHECK(net.widths[j] < 1.0);
    }
}

TEST_CASE("mode B single unit and units that never win") {
    const auto d = synth_dataset(SynthKind::Ring, 50, 8);
    RbfTrainConfig cfg;
    cfg.hidden_units = 1;
    const auto one = init_mode_b(d, cfg);
    double sum = 0;
    for (std::size_t p = 0; p < d.size(); ++p) sum += std::sqrt(sq_euclidean(d.pattern(p), one.centers.row(0)));
    CHECK(one.widths[0] == doctest::Approx(sum / 50.0).epsilon(1e-9));

    // All centers start on the same point; with no conscience and lowest-index
    // ties the last unit can only win if it is strictly closer than the others,
    // which it never is once unit 0 has moved toward the data. Use a set where
    // unit 0 can absorb everything: one repeated pattern.
    const Dataset same(Matrix{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}, Vector{0.2, 0.2, 0.2});
    RbfTrainConfig three;
    three.hidden_units = 3;
    const auto net = init_mode_b(same, three);
    // The stddev of all inputs is 0 here, so the untouched width is the clamp.
    CHECK(net.widths[1] == kMinWidth);
    CHECK(net.widths[2] == kMinWidth);
    CHECK(init_mode_b(d, cfg) == init_mode_b(d, cfg));
}

TEST_CASE("momentum converges to the geometric step") {
    MomentumBuffer m(1);
    double x = 0.0;
    const double g = 2.0, lr = 0.1, alpha = 0.8;
    double last_delta = 0;
    for (int i = 0; i < 400; ++i) {
        const double before = x;
        m.step(std::span(&x, 1), std::span(&g, 1), lr, alpha);
        last_delta = x - before;
    }
    CHECK(last_delta == doctest::Approx(-lr * g / (1 - alpha)).epsilon(1e-12));
    CHECK(m.previous()[0] == doctest::Approx(last_delta).epsilon(1e-9));
}

TEST_CASE("least-squares interpolation oracle and gradient training") {
    // 10 points of a smooth 1-D target; centers on the points, common width.
    const std::size_t n = 10;
    Matrix f(n, 1);
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        f(i, 0) = static_cast<double>(i) / 9.0;
        y[i] = 0.5 + 0.4 * std::sin(6.0 * f(i, 0));
    }
    const Dataset d(f, y);
    const double width = 0.12;

    oracle::Mat phi(n, oracle::Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dx = f(i, 0) - f(j, 0);
            phi[i][j] = std::exp(-dx * dx / (2 * width * width));
        }
    }
    const auto w = oracle::solve(phi, y);
    RbfNetwork exact{f, Vector(n, width), w, 0.0};
    CHECK(rbf_mse(exact, d) < 1e-20);

    RbfNetwork net{f, Vector(n, width), Vector(n, 0.0), 0.0};
    RbfTrainConfig cfg;
    cfg.hidden_units = n;
    cfg.epochs = 20000;
    cfg.lr_weights = 0.1;
    cfg.min_improvement = 0.0;
    const auto trained = rbf_train(net, d, cfg);
    CHECK(rbf_mse(trained, d) < 1e-5);
}

TEST_CASE("an exact fit does not move") {
    const Dataset d(Matrix{{0.0}, {1.0}}, Vector{0.7, 0.7});
    const RbfNetwork net{Matrix{{0.5}}, Vector{1.0}, Vector{0.0}, 0.7};
    RbfTrainConfig cfg;
    cfg.mode = RbfMode::KohonenBackprop;
    cfg.epochs = 50;
    const auto after = rbf_train(net, d, cfg);
    CHECK(std::abs(after.bias - 0.7) < 1e-9);
    CHECK(std::abs(after.out_weights[0]) < 1e-9);
    CHECK(std::abs(after.centers(0, 0) - 0.5) < 1e-9);
    CHECK(std::abs(after.widths[0] - 1.0) < 1e-9);
}

TEST_CASE("training log, determinism and classification") {
    const auto d = synth_dataset(SynthKind::TwoGaussians, 80, 9);
    RbfTrainConfig cfg;
    cfg.mode = RbfMode::KohonenBackprop;
    cfg.epochs = 40;
    cfg.seed = 2;
    TrainLog log;
    const auto a = rbf_fit(d, cfg, &log);
    CHECK(log.epochs_run == log.epoch_mse.size());
    CHECK(log.epochs_run <= 40);
    const auto b = rbf_fit(d, cfg);
    CHECK(a == b);
    CHECK(rbf_mse(a, d) == doctest::Approx(*std::min_element(log.epoch_mse.begin(), log.epoch_mse.end())));

    Rng rng(1);
    for (int q = 0; q < 100; ++q) {
        const Vector x{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        CHECK(rbf_classify(a, x, 0.5) == (rbf_output(a, x) > 0.5 ? 1.0 : -1.0));
    }
    CHECK(rbf_classify(RbfNetwork{Matrix{{0.0}}, Vector{1.0}, Vector{0.0}, 0.5}, Vector{3.0}, 0.5) == -1.0);

    CHECK_THROWS_AS(rbf_train(RbfNetwork{}, d, cfg), NotInitialized);
    RbfTrainConfig bad;
    bad.lr_widths = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidConfig);
}

}  // TEST_SUITE
