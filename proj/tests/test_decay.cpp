#include <catch2/catch_amalgamated.hpp>

#include "simplexlab/decay.hpp"

using namespace sxl;

TEST_CASE("rho transform at the origin is stable under refinement") {
    DecayResolution res;
    cplx a = rho_check(0.0, 0.0, 2, res);
    cplx b = rho_check(0.0, 0.0, 2, res.doubled());
    CHECK(std::abs(a - b) < 1e-8);
    CHECK(std::abs(a) > 1e-3);  // integral of rho is genuinely nonzero
}

TEST_CASE("rho conjugate symmetry for the real symbol") {
    for (auto [u, v] : std::vector<std::pair<double, double>>{{1.5, 2.0}, {0.0, 3.25}, {2.0, -1.0}}) {
        cplx a = rho_check(u, v);
        cplx b = rho_check(-u, -v);
        CHECK(std::abs(a - std::conj(b)) < 1e-9);
    }
}

TEST_CASE("rho decays quadratically in v at u = 0") {
    auto fit = fit_decay([](double v) { return std::abs(rho_check(0.0, v)); }, log_spaced(8, 128, 9));
    INFO("fitted v-slope " << fit.slope);
    CHECK(fit.slope <= -2.0 + 0.25);
    CHECK(fit.slope >= -3.0);  // the |eta| kink keeps it from decaying faster
}

TEST_CASE("m_ell scale ratio is exactly one half") {
    cplx a = m_ell_check(6, 1.25, 2.5);
    cplx b = m_ell_check(7, 1.25, 2.5);
    CHECK(std::abs(b) / std::abs(a) == Catch::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(m_ell_check(4, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(m_ell_check(3, 0.0, 0.0, 4), std::invalid_argument);
}

TEST_CASE("m_ell decay slopes") {
    SECTION("v-decay at u = 0") {
        auto fit =
            fit_decay([](double v) { return std::abs(m_ell_check(6, 0.0, v)); }, log_spaced(8, 128, 9));
        INFO("fitted v-slope " << fit.slope);
        CHECK(fit.slope <= -2.0 + 0.25);
    }
    SECTION("u-decay at v = 0") {
        auto fit =
            fit_decay([](double u) { return std::abs(m_ell_check(6, u, 0.0)); }, log_spaced(8, 128, 9));
        INFO("fitted u-slope " << fit.slope);
        CHECK(fit.slope <= -4.0);
    }
}

TEST_CASE("both sign branches carry equal modulus") {
    for (auto [u, v] : std::vector<std::pair<double, double>>{{0.0, 4.0}, {2.0, 6.0}, {5.0, 0.0}}) {
        double p = std::abs(m_ell_check(6, u, v, 4, 2, +1));
        double m = std::abs(m_ell_check(6, u, v, 4, 2, -1));
        CHECK(p == Catch::Approx(m).epsilon(1e-8));
    }
}

TEST_CASE("lattice integrability proxy converges") {
    DecayResolution coarse{2.0, 12, 16};
    double a = rho_lattice_l1(3.0, 1.0, 2, coarse);
    double b = rho_lattice_l1(3.0, 0.5, 2, coarse);
    INFO("lattice sums " << a << " vs " << b);
    CHECK(std::abs(a - b) / std::abs(b) < 0.05);
}
