#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "oracles.hpp"
#include "sigmanet/data.hpp"
#include "sigmanet/errors.hpp"
#include "sigmanet/grnn.hpp"
#include "sigmanet/kernelmath.hpp"
#include "sigmanet/rng.hpp"
#include "sigmanet/svm.hpp"

using namespace sigmanet;

namespace {

Dataset signed_set(std::size_t n, std::size_t positives, std::uint64_t seed = 1) {
    Rng rng(seed);
    Matrix f(n, 2);
    Vector t(n);
    for (std::size_t i = 0; i < n; ++i) {
        f(i, 0) = rng.normal();
        f(i, 1) = static_cast<double>(i);  // row id
        t[i] = i < positives ? 1.0 : -1.0;
    }
    return Dataset(std::move(f), std::move(t), LabelSpace::SignedBinary);
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << contents;
    return p;
}

}  // namespace

TEST_SUITE("data") {

TEST_CASE("dataset enforces its invariants") {
    CHECK_THROWS_AS(Dataset(Matrix(2, 1), Vector{1.0}), ShapeError);
    CHECK_THROWS_AS(Dataset(Matrix{{1.0}}, Vector{0.5}, LabelSpace::SignedBinary), LabelSpaceError);
    CHECK_THROWS_AS(Dataset(Matrix{{std::nan("")}}, Vector{1.0}), ShapeError);
    CHECK_THROWS_AS(Dataset(Matrix{{1.0}}, Vector{INFINITY}), ShapeError);
    CHECK_NOTHROW(Dataset(Matrix{{1.0}, {2.0}}, Vector{1.0, -1.0}, LabelSpace::SignedBinary));
}

TEST_CASE("csv parsing") {
    SUBCASE("direct parse") {
        const auto d = parse_csv("0.1,0.2,0.9\n0.5,0.5,0.1", 2);
        REQUIRE(d.size() == 2);
        CHECK(d.dim() == 2);
        CHECK(d.targets() == Vector{0.9, 0.1});
        CHECK(d.features()(0, 0) == 0.1);
        CHECK(d.features()(1, 1) == 0.5);
        CHECK(d.label_space() == LabelSpace::Continuous);
    }
    SUBCASE("target column in the middle and a header") {
        const auto d = parse_csv("a,b,c\n1,2,3\n4,5,6\n", 1, {.skip_header = true});
        CHECK(d.targets() == Vector{2, 5});
        CHECK(d.features() == Matrix{{1, 3}, {4, 6}});
    }
    SUBCASE("empty input") { CHECK_THROWS_AS(parse_csv("", 0), ParseError); }
    SUBCASE("non-numeric field reports its location") {
        try {
            parse_csv("a,b,c", 2);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row() == 0);
            CHECK(e.column() == 0);
        }
        try {
            parse_csv("1,2,3\n4,x,6", 2);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row() == 1);
            CHECK(e.column() == 1);
        }
    }
    SUBCASE("ragged rows") { CHECK_THROWS_AS(parse_csv("1,2,3\n4,5", 2), ShapeError); }
    SUBCASE("unreadable file") { CHECK_THROWS_AS(load_csv("/nonexistent/sigmanet.csv", 0), IoError); }
    SUBCASE("file round trip is exact") {
        const auto d = synth_dataset(SynthKind::Ring, 25, 3);
        const auto p = std::filesystem::temp_directory_path() / "sigmanet_roundtrip.csv";
        write_csv(p, d);
        const auto back = load_csv(p, 2);
        CHECK(back.features() == d.features());
        CHECK(back.targets() == d.targets());
        std::filesystem::remove(p);
    }
    SUBCASE("load from disk") {
        const auto p = temp_file("sigmanet_small.csv", "0.1,0.2,0.9\n0.5,0.5,0.1\n");
        CHECK(load_csv(p, 2).targets() == Vector{0.9, 0.1});
        std::filesystem::remove(p);
    }
}

TEST_CASE("relabel_signed") {
    const Dataset d(Matrix{{1.0}, {2.0}, {3.0}}, Vector{0.9, 0.1, 0.5});
    const auto s = relabel_signed(d);
    CHECK(s.targets() == Vector{1.0, -1.0, 1.0});
    CHECK(s.label_space() == LabelSpace::SignedBinary);
    CHECK(s.features() == d.features());

    const Dataset empty(Matrix(0, 1), Vector{});
    CHECK(relabel_signed(empty).targets().empty());

    CHECK_THROWS_AS(relabel_signed(s), LabelSpaceError);
    CHECK(signed_labels(s) == s.targets());
}

TEST_CASE("split sizes and determinism") {
    const auto d = relabel_signed(synth_dataset(SynthKind::TwoGaussians, 100, 5));
    const auto s = split(d, {0.9, 11, true});
    CHECK(s.train.size() == 90);
    CHECK(s.test.size() == 10);

    const Dataset two(Matrix{{0.0}, {1.0}}, Vector{0.2, 0.8});
    const auto tiny = split(two, {0.9, 0, false});
    CHECK(tiny.train.size() == 1);
    CHECK(tiny.test.size() == 1);

    const auto again = split(d, {0.9, 11, true});
    CHECK(again.train.features() == s.train.features());
    CHECK(again.test.targets() == s.test.targets());

    CHECK_THROWS_AS(split(Dataset(Matrix{{1.0}}, Vector{1.0}), {}), TooFewPatterns);
}

TEST_CASE("split partitions rows and keeps class proportions") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed + 100);
        const std::size_t n = 2 + rng.index(120);
        const std::size_t pos = rng.index(n + 1);
        const double frac = rng.uniform(0.05, 0.95);
        const auto d = signed_set(n, pos, seed);
        const auto idx = split_indices(d, {frac, seed, true});

        std::vector<std::size_t> all(idx.train);
        all.insert(all.end(), idx.test.begin(), idx.test.end());
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < n; ++i) REQUIRE(all[i] == i);  // union is everything, no overlap

        const auto expected = std::clamp<long long>(std::llround(frac * static_cast<double>(n)), 1,
                                                    static_cast<long long>(n) - 1);
        CHECK(static_cast<long long>(idx.train.size()) == expected);

        std::size_t train_pos = 0;
        for (auto i : idx.train) train_pos += d.target(i) > 0;
        const double ideal = static_cast<double>(pos) * static_cast<double>(idx.train.size()) / static_cast<double>(n);
        CHECK(std::abs(static_cast<double>(train_pos) - ideal) <= 1.0 + 1e-9);
    }
}

TEST_CASE("standardizer") {
    SUBCASE("two-point column") {
        const Dataset d(Matrix{{1.0}, {3.0}}, Vector{0, 0});
        const auto s = fit_standardizer(d);
        CHECK(s.means[0] == 2.0);
        CHECK(s.stddevs[0] == 1.0);
        CHECK(apply_standardizer(s, d).features() == Matrix{{-1.0}, {1.0}});
    }
    SUBCASE("constant column maps to zero") {
        const Dataset d(Matrix{{5.0}, {5.0}, {5.0}}, Vector{0, 0, 0});
        const auto s = fit_standardizer(d);
        CHECK(s.stddevs[0] == 1.0);
        const auto z = apply_standardizer(s, d);
        for (double v : z.features().data()) CHECK(v == 0.0);
    }
    SUBCASE("empty set") { CHECK_THROWS_AS(fit_standardizer(Dataset(Matrix(0, 2), Vector{})), EmptyDataset); }
    SUBCASE("moments after the transform, and a second pass is the identity") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Rng rng(seed);
            Matrix f(30, 3);
            for (double& v : f.data()) v = rng.normal(rng.uniform(-50, 50), rng.uniform(0.1, 20));
            const Dataset d(std::move(f), Vector(30, 0.5));
            const auto z = apply_standardizer(fit_standardizer(d), d);
            for (std::size_t c = 0; c < 3; ++c) {
                double m = 0, ss = 0;
                for (std::size_t r = 0; r < 30; ++r) m += z.features()(r, c);
                m /= 30;
                for (std::size_t r = 0; r < 30; ++r) ss += (z.features()(r, c) - m) * (z.features()(r, c) - m);
                CHECK(std::abs(m) < 1e-9);
                CHECK(std::abs(std::sqrt(ss / 30) - 1.0) < 1e-9);
            }
            const auto z2 = apply_standardizer(fit_standardizer(z), z);
            for (std::size_t i = 0; i < z.features().data().size(); ++i) {
                CHECK(std::abs(z2.features().data()[i] - z.features().data()[i]) < 1e-9);
            }
        }
    }
    SUBCASE("dimension mismatch") {
        const auto s = fit_standardizer(Dataset(Matrix{{1.0, 2.0}}, Vector{0}));
        CHECK_THROWS_AS(apply_standardizer(s, Dataset(Matrix{{1.0}}, Vector{0})), DimensionMismatch);
    }
}

TEST_CASE("synthetic generators") {
    CHECK_THROWS_AS(synth_dataset(SynthKind::Xor, 3, 0), TooFewPatterns);
    for (auto kind : {SynthKind::TwoGaussians, SynthKind::Ring, SynthKind::Xor}) {
        const auto a = synth_dataset(kind, 60, 9);
        const auto b = synth_dataset(kind, 60, 9);
        CHECK(a.features() == b.features());
        CHECK(a.targets() == b.targets());
        CHECK(parse_synth_kind(to_string(kind)) == kind);
        for (double t : a.targets()) {
            CHECK(t >= 0.0);
            CHECK(t <= 1.0);
            CHECK(t != 0.5);
        }
    }
    CHECK_THROWS_AS(parse_synth_kind("spiral"), InvalidConfig);
}

TEST_CASE("two gaussians: GRNN at sigma 0.5 beats 0.95 and agrees with nearest centroid") {
    const auto d = synth_dataset(SynthKind::TwoGaussians, 200, 42);
    const auto s = split(relabel_signed(d), {0.5, 42, true});
    // Continuous targets for the GRNN, signed for scoring.
    const auto idx = split_indices(relabel_signed(d), {0.5, 42, true});
    const GrnnModel model(d.subset(idx.train), GaussianKernelParams(0.5));

    oracle::Vec mean_pos(2, 0.0), mean_neg(2, 0.0);
    double np = 0, nn = 0;
    for (std::size_t i = 0; i < s.train.size(); ++i) {
        auto& m = s.train.target(i) > 0 ? mean_pos : mean_neg;
        (s.train.target(i) > 0 ? np : nn) += 1;
        m[0] += s.train.pattern(i)[0];
        m[1] += s.train.pattern(i)[1];
    }
    for (auto& v : mean_pos) v /= np;
    for (auto& v : mean_neg) v /= nn;

    std::size_t grnn_ok = 0, centroid_ok = 0;
    for (std::size_t i = 0; i < s.test.size(); ++i) {
        const auto x = s.test.pattern(i);
        const oracle::Vec q(x.begin(), x.end());
        grnn_ok += model.classify(x) == s.test.target(i);
        const double c = oracle::dist2(q, mean_pos) < oracle::dist2(q, mean_neg) ? 1.0 : -1.0;
        centroid_ok += c == s.test.target(i);
    }
    const double n = static_cast<double>(s.test.size());
    CHECK(grnn_ok / n > 0.95);
    CHECK(centroid_ok / n > 0.95);
}

// A single line reaches 2/3 on uniform XOR in expectation, so the sample's
// best line is the bound a linear SVM is held to.
TEST_CASE("xor defeats linear classifiers") {
    const auto d = relabel_signed(synth_dataset(SynthKind::Xor, 400, 42));
    oracle::Mat xs;
    for (std::size_t i = 0; i < d.size(); ++i) xs.emplace_back(d.pattern(i).begin(), d.pattern(i).end());
    const double best_line = oracle::best_linear_accuracy_2d(xs, d.targets());
    CHECK(best_line < 0.7);

    SvmConfig cfg;
    cfg.kernel = SvmKernel::linear();
    const auto m = svm_train(d, cfg);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < d.size(); ++i) ok += svm_classify(m, d.pattern(i)) == d.target(i);
    const double acc = static_cast<double>(ok) / static_cast<double>(d.size());
    CHECK(acc <= best_line + 1e-12);
    CHECK(acc < 0.7);
}

}  // TEST_SUITE
