#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "simplexlab/grid.hpp"

using namespace sxl;

namespace {

GridFunction const_grid(std::vector<std::size_t> sizes, double period, cplx c) {
    auto f = GridFunction::zeros(std::move(sizes), period);
    for (auto& v : f.values) v = c;
    return f;
}

double max_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.total(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace

TEST_CASE("dft of a constant concentrates at zero frequency") {
    auto f = const_grid({8, 16}, 2.0, {1.0, 0.0});
    auto s = dft(f);
    // value L^n at xi = 0, zero elsewhere
    CHECK(std::abs(s.values[0] - cplx{4.0, 0.0}) < 1e-12);
    double off = 0;
    for (std::size_t i = 1; i < s.total(); ++i) off = std::max(off, std::abs(s.values[i]));
    CHECK(off < 1e-12);
}

TEST_CASE("pure frequency lands on its lattice point") {
    std::size_t m = 32;
    auto f = GridFunction::zeros({m}, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        double x = double(i) / double(m);
        f.values[i] = std::exp(cplx{0.0, 2.0 * pi * x});
    }
    auto s = dft(f, {0});
    CHECK(std::abs(s.values[1] - cplx{1.0, 0.0}) < 1e-12);
    for (std::size_t i = 0; i < m; ++i) {
        if (i == 1) continue;
        CHECK(std::abs(s.values[i]) < 1e-12);
    }
}

TEST_CASE("dft/idft round trip") {
    Rng rng(11);
    auto f = GridFunction::zeros({8, 4, 16}, 1.0);
    for (auto& v : f.values) v = rng.cnormal();
    auto g = idft(dft(f));
    double scale = 0;
    for (auto& v : f.values) scale = std::max(scale, std::abs(v));
    CHECK(max_diff(f, g) / scale < 1e-12);

    auto g2 = idft(dft(f, {1}));
    CHECK(max_diff(f, g2) / scale < 1e-12);
}

TEST_CASE("dft is linear") {
    Rng rng(5);
    auto f = GridFunction::zeros({16, 8}, 1.0);
    auto g = GridFunction::zeros({16, 8}, 1.0);
    for (auto& v : f.values) v = rng.cnormal();
    for (auto& v : g.values) v = rng.cnormal();
    cplx a{1.7, -0.3}, b{-0.4, 2.1};
    GridFunction h = f;
    for (std::size_t i = 0; i < h.total(); ++i) h.values[i] = a * f.values[i] + b * g.values[i];
    auto sh = dft(h), sf = dft(f), sg = dft(g);
    double worst = 0;
    for (std::size_t i = 0; i < sh.total(); ++i)
        worst = std::max(worst, std::abs(sh.values[i] - (a * sf.values[i] + b * sg.values[i])));
    CHECK(worst < 1e-12);
}

TEST_CASE("convolve_axis basics") {
    auto psi = build_psi();
    auto phi = build_phi(1);
    auto f = const_grid({16, 16}, 1.0, {1.0, 0.0});

    SECTION("psi-type annihilates constants") {
        auto g = convolve_axis(f, psi.eval, 2, 0, 0.7);
        for (auto& v : g.values) CHECK(std::abs(v) < 1e-13);
    }
    SECTION("phi-type preserves constants") {
        auto g = convolve_axis(f, phi.eval, 3, 1, 0.2);
        for (auto& v : g.values) CHECK(std::abs(v - cplx{1.0, 0.0}) < 1e-12);
    }
    SECTION("identity multiplier at zero shift") {
        Rng rng(3);
        auto h = GridFunction::zeros({16, 16}, 1.0);
        for (auto& v : h.values) v = rng.cnormal();
        auto g = convolve_axis(h, [](double) { return 1.0; }, 0, 0, 0.0);
        CHECK(max_diff(h, g) < 1e-12);
    }
    SECTION("commutes across distinct axes") {
        Rng rng(9);
        auto h = GridFunction::zeros({16, 16}, 1.0);
        for (auto& v : h.values) v = rng.cnormal();
        auto a = convolve_axis(convolve_axis(h, psi.eval, 1, 0, 0.3), phi.eval, 2, 1, 0.1);
        auto b = convolve_axis(convolve_axis(h, phi.eval, 2, 1, 0.1), psi.eval, 1, 0, 0.3);
        CHECK(max_diff(a, b) < 1e-12);
    }
}

TEST_CASE("lp norms") {
    SECTION("constants") {
        auto f = const_grid({8, 8}, 1.0, {-2.5, 0.0});
        for (double p : {1.0, 2.0, 3.5}) CHECK(lp_norm(f, p) == Catch::Approx(2.5).epsilon(1e-12));
        CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) == Catch::Approx(2.5));
    }
    SECTION("half indicator") {
        auto f = GridFunction::zeros({16}, 1.0);
        for (std::size_t i = 0; i < 8; ++i) f.values[i] = 1.0;
        CHECK(lp_norm(f, 2.0) == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }
    SECTION("p < 1 rejected") {
        auto f = const_grid({8}, 1.0, {1.0, 0.0});
        CHECK_THROWS_AS(lp_norm(f, 0.5), std::invalid_argument);
    }
    SECTION("plancherel") {
        Rng rng(21);
        auto f = GridFunction::zeros({32, 8}, 2.0);
        for (auto& v : f.values) v = rng.cnormal();
        auto s = dft(f);
        KahanSum acc;
        for (auto& v : s.values) acc.add(std::norm(v));
        double ln = std::pow(f.period, f.dim);
        double spectral = std::sqrt(acc.value() / ln);
        CHECK(spectral == Catch::Approx(lp_norm(f, 2.0)).epsilon(1e-10));
    }
}

TEST_CASE("binary grid file round trip") {
    Rng rng(31);
    auto f = GridFunction::zeros({4, 8}, 3.5);
    for (auto& v : f.values) v = rng.cnormal();
    std::string path = "grid_io_test.sxlb";
    save_grid(f, path);
    auto g = load_grid(path);
    REQUIRE(g.same_shape(f));
    CHECK(max_diff(f, g) == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("dft rejects bad axes") {
    auto f = const_grid({8}, 1.0, {1.0, 0.0});
    CHECK_THROWS_AS(dft(f, {1}), std::invalid_argument);
    CHECK_THROWS_AS(dft(f, {-1}), std::invalid_argument);
}

TEST_CASE("grid sizes must be powers of two") {
    CHECK_THROWS_AS(GridFunction::zeros({12}, 1.0), std::invalid_argument);
}
