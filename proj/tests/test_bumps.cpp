#include <catch2/catch_amalgamated.hpp>

#include "simplexlab/bumps.hpp"
#include "simplexlab/rng.hpp"
#include "simplexlab/symbol.hpp"

using namespace sxl;

TEST_CASE("telescoping dyadic partition") {
    auto psi = build_psi();
    SECTION("sum over scales is one away from zero") {
        for (double eta : {0.37, 1.0, -2.3, 151.0, 3e-4}) {
            KahanSum s;
            for (int k = -40; k <= 40; ++k) s.add(psi.eval(std::ldexp(eta, -k)));
            CHECK(s.value() == Catch::Approx(1.0).margin(1e-12));
        }
    }
    SECTION("support avoids the origin") {
        CHECK(psi.eval(0.4) == 0.0);
        CHECK(psi.eval(3.0) == 0.0);
        CHECK(psi.eval(-0.4) == 0.0);
        CHECK(psi.eval(1.0) == Catch::Approx(1.0));
    }
    SECTION("two-scale identity at eta = 1") {
        CHECK(psi.eval(1.0) + psi.eval(2.0) == Catch::Approx(1.0).margin(1e-14));
    }
    SECTION("partial sums telescope exactly") {
        Rng rng(4);
        for (int t = 0; t < 40; ++t) {
            double eta = std::exp(rng.uniform(-4.0, 4.0)) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
            int a = -5 + int(rng.below(4)), b = a + int(rng.below(8));
            KahanSum s;
            for (int k = a; k <= b; ++k) s.add(psi.eval(std::ldexp(eta, -k)));
            double expect = chi_cut(std::ldexp(eta, -b)) - chi_cut(std::ldexp(eta, -(a - 1)));
            CHECK(s.value() == Catch::Approx(expect).margin(1e-12));
        }
    }
    SECTION("psi lies in [0,1]") {
        for (double eta = -4.0; eta <= 4.0; eta += 1e-3) {
            double v = psi.eval(eta);
            CHECK(v >= -1e-15);
            CHECK(v <= 1.0 + 1e-15);
        }
    }
}

TEST_CASE("low-pass profiles") {
    int l0 = 4;
    auto phi = build_phi(l0);
    CHECK(phi.eval(0.0) == Catch::Approx(1.0));
    CHECK(phi.eval(std::ldexp(1.0, l0)) == Catch::Approx(1.0));
    CHECK(phi.eval(std::ldexp(1.0, l0 + 2)) == 0.0);
    // partial low-pass sum reaches phi at eta = 1
    auto psi = build_psi();
    KahanSum s;
    for (int k = -40; k <= l0; ++k) s.add(psi.eval(std::ldexp(1.0, -k)));
    CHECK(s.value() == Catch::Approx(phi.eval(1.0)).margin(1e-12));

    auto small = build_phi_small(l0);
    CHECK(small.eval(0.0) == Catch::Approx(1.0));
    CHECK(small.eval(std::ldexp(1.0, -l0 + 1) * 1.01) == 0.0);
    CHECK(small.eval(std::ldexp(1.0, -l0) * 0.99) == Catch::Approx(1.0));
}

TEST_CASE("psi sign split") {
    auto psi = build_psi();
    auto [plus, minus] = psi_sign_split(psi);
    CHECK(plus.eval(1.0) == Catch::Approx(psi.eval(1.0)));
    CHECK(plus.eval(-1.0) == 0.0);
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        double eta = rng.uniform(-3.0, 3.0);
        CHECK(plus.eval(eta) + minus.eval(eta) == psi.eval(eta));
        CHECK(minus.eval(eta) == plus.eval(-eta));  // even psi
    }
    auto phi = build_phi(2);
    CHECK_THROWS_AS(psi_sign_split(phi), std::invalid_argument);
}

TEST_CASE("symbol decomposition piece inventory") {
    auto p2 = decompose_symbol(2, 4);
    CHECK(p2.size() == 3);  // one psi-psi, two psi-phi
    int psiphi = 0, psipsi = 0;
    for (const auto& p : p2) (p.kind == SymbolPiece::Kind::psi_phi ? psiphi : psipsi)++;
    CHECK(psiphi == 2);
    CHECK(psipsi == 1);

    auto p3 = decompose_symbol(3, 4);
    CHECK(p3.size() == 6);
    int case2 = 0;
    for (const auto& p : p3)
        if (p.case_tag == SymbolPiece::CaseTag::case2) ++case2;
    CHECK(case2 == 1);

    for (const auto& p : p3) {
        if (p.kind == SymbolPiece::Kind::psi_phi) CHECK(p.psi_axes.size() == 1);
        if (p.kind == SymbolPiece::Kind::psi_psi) CHECK(p.psi_axes.size() == 2);
    }
}

TEST_CASE("partition of unity on random annulus points") {
    Rng rng(12);
    for (int n : {2, 3}) {
        auto pieces = decompose_symbol(n, 4);
        for (int t = 0; t < 2000; ++t) {
            std::vector<double> xi(n);
            double norm = 0;
            for (auto& v : xi) {
                v = rng.normal();
                norm += v * v;
            }
            norm = std::sqrt(norm);
            double r = rng.uniform(1.0, 2.0);
            for (auto& v : xi) v *= r / norm;
            KahanSum s;
            for (const auto& p : pieces) s.add(p.symbol(xi));
            CHECK(s.value() == Catch::Approx(1.0).margin(1e-10));
        }
    }
}

TEST_CASE("case-2 support avoids the walls") {
    int l0 = 4;
    for (int n : {2, 3}) {
        auto pieces = decompose_symbol(n, l0);
        const SymbolPiece* c2 = nullptr;
        for (const auto& p : pieces)
            if (p.case_tag == SymbolPiece::CaseTag::case2) c2 = &p;
        REQUIRE(c2 != nullptr);
        Rng rng(100 + n);
        double min_dist = 1e9;
        int kept = 0;
        while (kept < 500) {
            std::vector<double> xi(n);
            // sample inside the scale-0 box of the piece support
            xi[n - 1] = (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(0.5, 2.0);
            for (int j = 0; j + 1 < n; ++j)
                xi[j] = rng.uniform(-1.0, 1.0) * std::ldexp(1.0, -l0 + 1);
            if (c2->symbol(xi) == 0.0) continue;
            ++kept;
            min_dist = std::min(min_dist, bad_set_distance(xi));
        }
        INFO("n = " << n << " measured support floor " << min_dist);
        CHECK(min_dist > 0.0);
    }
}

TEST_CASE("lacunary piece layout") {
    auto p = make_lacunary_piece(3, 6);
    REQUIRE(p.terms.size() == 1);
    CHECK(p.terms[0].factors[0].scale_offset == 6);
    // at scale k the first axis profile peaks around |xi| ~ 2^{k+6}
    std::vector<double> xi{std::ldexp(1.0, 8), std::ldexp(1.0, 2), 0.3};
    CHECK(p.terms[0].at_scale(xi, 2) == Catch::Approx(1.0));
}
