#pragma once

#include <vector>

#include "simplexlab/bumps.hpp"
#include "simplexlab/common.hpp"
#include "simplexlab/quadrature.hpp"

namespace sxl {

namespace decay_detail {

inline double mu2(double a, double b) { return (std::abs(a + b) - std::abs(b)) / a; }

// one-sided annular profile: 1 on [1/2,2], supported in [1/4,4], O(1)
// transition widths so the transform decay is visible at moderate u
inline double psi_wide_plus(double x) {
    if (x <= 0.0) return 0.0;
    return chi_cut(0.5 * x) * (1.0 - chi_cut(4.0 * x));
}

}  // namespace decay_detail

struct DecayResolution {
    double panels_per_period = 3.0;
    int nodes = 24;
    int outer_nodes = 40;

    DecayResolution doubled() const { return {2.0 * panels_per_period, 2 * nodes, 2 * outer_nodes}; }
};

// rho(xi, eta) = mu_2(xi, eta) psi+(xi) phi(eta) with psi+ the positive half
// of the telescoping annulus profile and phi = chi(eta / (2n)). Returns the
// inverse transform rho-check(u, v) by nested kink-split quadrature.
inline cplx rho_check(double u, double v, int n = 2, DecayResolution res = {}) {
    require(n >= 2, "rho_check: n >= 2");
    const double span = 2.0 * double(n);  // phi = chi(eta/span), support |eta| <= 2*span
    auto psi = build_psi();
    auto plus = psi_sign_split(psi).first;

    auto inner = [&](double xi) {
        return integrate_osc(
            [&](double eta) {
                cplx ph{std::cos(2.0 * pi * eta * v), std::sin(2.0 * pi * eta * v)};
                return ph * decay_detail::mu2(xi, eta) * chi_cut(eta / span);
            },
            -2.0 * span, 2.0 * span, {0.0, -xi}, v, res.nodes, res.panels_per_period);
    };

    // outer over the psi+ support [1/2, 2]
    std::vector<double> pts{0.5, 2.0};
    const double period = 1.0 / std::max(std::abs(u), 1e-12);
    KahanSumC acc;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        int np = std::max(1, int(std::ceil((pts[s + 1] - pts[s]) / (period / res.panels_per_period))));
        np = std::min(np, 100000);
        double h = (pts[s + 1] - pts[s]) / np;
        for (int p = 0; p < np; ++p) {
            QuadRule r = gl_on(pts[s] + p * h, pts[s] + (p + 1) * h, res.outer_nodes);
            for (std::size_t i = 0; i < r.size(); ++i) {
                double xi = r.x[i];
                cplx ph{std::cos(2.0 * pi * xi * u), std::sin(2.0 * pi * xi * u)};
                acc.add(r.w[i] * ph * plus.eval(xi) * inner(xi));
            }
        }
    }
    return acc.value();
}

// Factored evaluation of the rough-case kernel transform:
//   m-check_ell(u, v) = 2^{-ell+1} * int_{-inf}^0 e^{2 pi i v eta} phi(eta) eta deta
//                                  * int e^{2 pi i u xi} psit(xi) / xi dxi,
// valid for ell > l0 where the rescaled symbol linearizes on the support.
// branch = +1 takes the positive-axis profile, -1 its reflection.
inline cplx m_ell_check(int ell, double u, double v, int l0 = 4, int n = 2, int branch = +1,
                        DecayResolution res = {}) {
    require(ell > l0, "m_ell_check: ell must exceed l0");
    require(branch == 1 || branch == -1, "m_ell_check: branch is +1 or -1");
    const double span = 2.0 * double(n);

    cplx ieta, ixi;
    if (branch == 1) {
        ieta = integrate_osc(
            [&](double eta) {
                cplx ph{std::cos(2.0 * pi * eta * v), std::sin(2.0 * pi * eta * v)};
                return ph * chi_cut(eta / span) * eta;
            },
            -2.0 * span, 0.0, {}, v, res.nodes, res.panels_per_period);
        ixi = integrate_osc(
            [&](double xi) {
                cplx ph{std::cos(2.0 * pi * xi * u), std::sin(2.0 * pi * xi * u)};
                return ph * decay_detail::psi_wide_plus(xi) / xi;
            },
            0.25, 4.0, {}, u, res.nodes, res.panels_per_period);
    } else {
        ieta = integrate_osc(
            [&](double eta) {
                cplx ph{std::cos(2.0 * pi * eta * v), std::sin(2.0 * pi * eta * v)};
                return ph * chi_cut(eta / span) * eta;
            },
            0.0, 2.0 * span, {}, v, res.nodes, res.panels_per_period);
        ixi = integrate_osc(
            [&](double xi) {
                cplx ph{std::cos(2.0 * pi * xi * u), std::sin(2.0 * pi * xi * u)};
                return ph * decay_detail::psi_wide_plus(-xi) / xi;
            },
            -4.0, -0.25, {}, u, res.nodes, res.panels_per_period);
        ieta = -ieta;
    }
    return std::ldexp(2.0, -ell) * ieta * ixi;
}

struct DecayRow {
    double arg = 0.0;
    double magnitude = 0.0;
};

struct DecayFit {
    std::vector<DecayRow> rows;
    double slope = 0.0;
    double r2 = 0.0;
};

template <class F>
DecayFit fit_decay(F&& magnitude_of, const std::vector<double>& args) {
    DecayFit out;
    std::vector<double> xs, ys;
    for (double a : args) {
        double m = magnitude_of(a);
        out.rows.push_back({a, m});
        xs.push_back(a);
        ys.push_back(std::max(m, 1e-300));
    }
    LineFit f = fit_loglog(xs, ys);
    out.slope = f.slope;
    out.r2 = f.r2;
    return out;
}

inline std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = lo * std::pow(hi / lo, count == 1 ? 0.0 : double(i) / (count - 1));
    return v;
}

// lattice Riemann sum of |rho-check| over [-extent, extent]^2, the
// integrability proxy; refine the spacing to watch it stabilize
inline double rho_lattice_l1(double extent, double spacing, int n = 2, DecayResolution res = {}) {
    KahanSum s;
    for (double uu = -extent; uu <= extent + 1e-12; uu += spacing)
        for (double vv = -extent; vv <= extent + 1e-12; vv += spacing)
            s.add(std::abs(rho_check(uu, vv, n, res)));
    return s.value() * spacing * spacing;
}

}  // namespace sxl
