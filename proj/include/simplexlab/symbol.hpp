#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "simplexlab/common.hpp"
#include "simplexlab/lp.hpp"
#include "simplexlab/quadrature.hpp"
#include "simplexlab/rng.hpp"

namespace sxl {

inline double sgn(double t) { return t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0); }

namespace symbol_detail {

inline void check_point(const std::vector<double>& xi) {
    require(xi.size() >= 2, "mu: point dimension n >= 2 required");
    for (double v : xi)
        if (v != 0.0) return;
    throw std::invalid_argument("mu: zero input point");
}

// t_a = xi_last + sum_{j: bit j of a} xi_j  (head coords 0..n-2)
inline double wall_form(const std::vector<double>& xi, std::uint32_t a) {
    double t = xi.back();
    for (std::size_t j = 0; j + 1 < xi.size(); ++j)
        if (a & (1u << j)) t += xi[j];
    return t;
}

inline long long factorial(int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Multivariate polynomial with integer coefficients; monomial exponents are
// packed 4 bits per axis (degrees here never exceed 4).
using Poly = std::map<std::uint64_t, long long>;

inline std::uint64_t mono_mul(std::uint64_t m, int axis) { return m + (std::uint64_t{1} << (4 * axis)); }

inline int mono_exp(std::uint64_t m, int axis) { return int((m >> (4 * axis)) & 0xF); }

// (sum of listed axes)^p expanded exactly
inline Poly linear_power(const std::vector<int>& axes, int p) {
    Poly cur{{0, 1}};
    for (int it = 0; it < p; ++it) {
        Poly next;
        for (const auto& [mono, coeff] : cur)
            for (int ax : axes) next[mono_mul(mono, ax)] += coeff;
        cur = std::move(next);
    }
    return cur;
}

// numerator of mu_n with the absolute values frozen to the sector signs
inline Poly sector_numerator(int n, const std::vector<int>& signs) {
    Poly num;
    const std::uint32_t cells = 1u << (n - 1);
    for (std::uint32_t a = 0; a < cells; ++a) {
        std::vector<int> axes{n - 1};
        for (int j = 0; j < n - 1; ++j)
            if (a & (1u << j)) axes.push_back(j);
        Poly q = linear_power(axes, n - 1);
        long long s = signs[a] * (__builtin_popcount(a) % 2 == 0 ? 1 : -1);
        for (const auto& [mono, coeff] : q) {
            num[mono] += s * coeff;
            if (num[mono] == 0) num.erase(mono);
        }
    }
    return num;
}

inline bool divide_by_axis(Poly& p, int axis) {
    for (const auto& [mono, coeff] : p)
        if (mono_exp(mono, axis) == 0) return false;
    Poly q;
    for (const auto& [mono, coeff] : p) q[mono - (std::uint64_t{1} << (4 * axis))] = coeff;
    p = std::move(q);
    return true;
}

inline double poly_eval(const Poly& p, const std::vector<double>& xi) {
    KahanSum s;
    for (const auto& [mono, coeff] : p) {
        double t = double(coeff);
        for (std::size_t j = 0; j < xi.size(); ++j)
            for (int e = 0; e < mono_exp(mono, int(j)); ++e) t *= xi[j];
        s.add(t);
    }
    return s.value();
}

// Cancellation-free evaluation through the sector-frozen rational form:
// the numerator is assembled in exact integer arithmetic and every head
// coordinate that divides it is divided out symbolically.
inline double mu_rational(const std::vector<double>& xi, const std::vector<int>& signs) {
    const int n = int(xi.size());
    Poly num = sector_numerator(n, signs);
    double denom = 1.0;
    for (int j = 0; j < n - 1; ++j)
        if (!divide_by_axis(num, j)) denom *= xi[j];
    const double cn = ((n + 1) % 2 == 0 ? 1.0 : -1.0) / double(factorial(n - 1));
    return cn * poly_eval(num, xi) / denom;
}

inline double mu_closed_impl(const std::vector<double>& xi) {
    const int n = int(xi.size());
    if (n == 1) return sgn(xi[0]);

    // remove exact zeros among the head coordinates
    std::vector<double> reduced;
    for (int j = 0; j < n - 1; ++j)
        if (xi[j] != 0.0) reduced.push_back(xi[j]);
    if (int(reduced.size()) != n - 1) {
        reduced.push_back(xi.back());
        return mu_closed_impl(reduced);
    }

    double scale = 0.0, head_min = std::numeric_limits<double>::infinity();
    for (double v : xi) scale = std::max(scale, std::abs(v));
    for (int j = 0; j < n - 1; ++j) head_min = std::min(head_min, std::abs(xi[j]));

    const std::uint32_t cells = 1u << (n - 1);
    if (head_min < 1e-2 * scale) {
        std::vector<int> signs(cells);
        for (std::uint32_t a = 0; a < cells; ++a) signs[a] = wall_form(xi, a) >= 0.0 ? 1 : -1;
        return mu_rational(xi, signs);
    }

    KahanSum s;
    for (std::uint32_t a = 0; a < cells; ++a) {
        double t = wall_form(xi, a);
        double g = std::abs(t);
        for (int e = 0; e < n - 2; ++e) g *= t;
        s.add((__builtin_popcount(a) % 2 == 0 ? g : -g));
    }
    double denom = 1.0;
    for (int j = 0; j < n - 1; ++j) denom *= xi[j];
    const double cn = ((n + 1) % 2 == 0 ? 1.0 : -1.0) / double(factorial(n - 1));
    return cn * s.value() / denom;
}

}  // namespace symbol_detail

// closed formula for mu_n (average of sgn over the unit alpha-cube)
inline double mu_closed(const std::vector<double>& xi) {
    symbol_detail::check_point(xi);
    return symbol_detail::mu_closed_impl(xi);
}

// sector-frozen homogeneous rational form, for cross-checks within a sector
inline double mu_sector_rational(const std::vector<double>& xi, const std::vector<int>& signs) {
    symbol_detail::check_point(xi);
    require(signs.size() == (std::size_t{1} << (xi.size() - 1)), "mu_sector_rational: wrong sign count");
    return symbol_detail::mu_rational(xi, signs);
}

// Euclidean distance from xi to the nearest wall hyperplane
inline double bad_set_distance(const std::vector<double>& xi) {
    require(xi.size() >= 2, "bad_set_distance: n >= 2");
    const int n = int(xi.size());
    const std::uint32_t cells = 1u << (n - 1);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t a = 0; a < cells; ++a) {
        double t = std::abs(symbol_detail::wall_form(xi, a));
        double nn = std::sqrt(1.0 + double(__builtin_popcount(a)));
        best = std::min(best, t / nn);
    }
    return best;
}

struct SectorMap {
    int n = 0;
    std::vector<int> signs;       // indexed by the alpha bitmask
    std::vector<double> witness;  // a certified interior point (when available)
    double margin = 0.0;
};

inline SectorMap sector_map(const std::vector<double>& xi) {
    symbol_detail::check_point(xi);
    require(bad_set_distance(xi) > 0.0, "sector_map: point lies on the bad set");
    SectorMap s;
    s.n = int(xi.size());
    const std::uint32_t cells = 1u << (s.n - 1);
    s.signs.resize(cells);
    for (std::uint32_t a = 0; a < cells; ++a)
        s.signs[a] = symbol_detail::wall_form(xi, a) > 0.0 ? 1 : -1;
    s.witness = xi;
    return s;
}

// all realizable sector sign maps, each certified by an LP witness
inline std::vector<SectorMap> enumerate_sectors(int n, double delta = 1e-6) {
    require(n >= 2 && n <= 5, "enumerate_sectors: 2 <= n <= 5");
    const std::uint32_t cells = 1u << (n - 1);
    std::vector<std::vector<double>> rows(cells, std::vector<double>(n, 0.0));
    for (std::uint32_t a = 0; a < cells; ++a) {
        for (int j = 0; j < n - 1; ++j) rows[a][j] = (a & (1u << j)) ? 1.0 : 0.0;
        rows[a][n - 1] = 1.0;
    }
    std::vector<SectorMap> out;
    const std::uint64_t maps = std::uint64_t{1} << cells;
    std::vector<int> signs(cells);
    for (std::uint64_t mask = 0; mask < maps; ++mask) {
        for (std::uint32_t a = 0; a < cells; ++a) signs[a] = (mask & (std::uint64_t{1} << a)) ? 1 : -1;
        MarginResult mr = max_margin_witness(rows, signs, delta);
        if (!mr.feasible) continue;
        SectorMap s;
        s.n = n;
        s.signs = signs;
        s.witness = mr.witness;
        s.margin = mr.margin;
        out.push_back(std::move(s));
    }
    return out;
}

// number of linear threshold functions on {-1,1}^m, by exhaustive LP check
inline long count_threshold_functions(int m, double delta = 1e-6) {
    require(m >= 1 && m <= 4, "count_threshold_functions: 1 <= m <= 4");
    const std::uint32_t pts = 1u << m;
    std::vector<std::vector<double>> rows(pts, std::vector<double>(m + 1, 0.0));
    for (std::uint32_t p = 0; p < pts; ++p) {
        rows[p][0] = 1.0;  // affine offset
        for (int j = 0; j < m; ++j) rows[p][j + 1] = (p & (1u << j)) ? 1.0 : -1.0;
    }
    long count = 0;
    const std::uint64_t funcs = std::uint64_t{1} << pts;
    std::vector<int> signs(pts);
    for (std::uint64_t mask = 0; mask < funcs; ++mask) {
        for (std::uint32_t p = 0; p < pts; ++p) signs[p] = (mask & (std::uint64_t{1} << p)) ? 1 : -1;
        if (max_margin_witness(rows, signs, delta).feasible) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// quadrature evaluations of mu
// ---------------------------------------------------------------------------

struct AlphaRule {
    enum class Kind { monte_carlo, tensor_gl };
    Kind kind = Kind::monte_carlo;
    std::size_t samples = 1000000;
    std::uint64_t seed = kDefaultSeed;
    int gl_nodes = 64;

    static AlphaRule mc(std::size_t s, std::uint64_t seed_ = kDefaultSeed) {
        return {Kind::monte_carlo, s, seed_, 0};
    }
    static AlphaRule gl(int q) { return {Kind::tensor_gl, 0, 0, q}; }
};

struct MuEstimate {
    double value = 0.0;
    double stderr_est = 0.0;  // zero-variance floor applied; NaN for GL rules
};

// direct average of sgn over [0,1]^{n-1}; Monte Carlo is the default oracle,
// tensor Gauss-Legendre is kept for comparison but converges slowly on the
// sgn discontinuity.
inline MuEstimate mu_quadrature(const std::vector<double>& xi, const AlphaRule& rule) {
    symbol_detail::check_point(xi);
    const int n = int(xi.size());
    MuEstimate est;
    if (rule.kind == AlphaRule::Kind::monte_carlo) {
        Rng rng(rule.seed);
        KahanSum acc;
        for (std::size_t s = 0; s < rule.samples; ++s) {
            double t = xi.back();
            for (int j = 0; j < n - 1; ++j) t += rng.uniform() * xi[j];
            acc.add(sgn(t));
        }
        const double m = acc.value() / double(rule.samples);
        est.value = m;
        double var = std::max(0.0, 1.0 - m * m);
        est.stderr_est = std::max(std::sqrt(var / double(rule.samples)), 1.0 / double(rule.samples));
        return est;
    }
    const QuadRule& g = gauss_legendre(rule.gl_nodes);
    std::vector<std::size_t> idx(n - 1, 0);
    KahanSum acc;
    bool done = false;
    while (!done) {
        double t = xi.back(), w = 1.0;
        for (int j = 0; j < n - 1; ++j) {
            double a = 0.5 * (g.x[idx[j]] + 1.0);
            t += a * xi[j];
            w *= 0.5 * g.w[idx[j]];
        }
        acc.add(w * sgn(t));
        for (int j = 0;; ++j) {
            if (j == n - 1) { done = true; break; }
            if (++idx[j] < g.size()) break;
            idx[j] = 0;
        }
    }
    est.value = acc.value();
    est.stderr_est = std::numeric_limits<double>::quiet_NaN();
    return est;
}

namespace symbol_detail {

// integral of mu_2(xi0, c0 + s*c1) over s in [a,b]: GL panels split at the
// kinks of mu_2 (zeros of the two absolute values)
inline double slice_1d(double xi0, double c0, double c1, double a, double b, int q) {
    std::vector<double> brk{a, b};
    if (c1 != 0.0) {
        for (double root : {-c0 / c1, -(c0 + xi0) / c1})
            if (root > a && root < b) brk.push_back(root);
    }
    std::sort(brk.begin(), brk.end());
    KahanSum s;
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
        QuadRule r = gl_on(brk[i], brk[i + 1], q);
        for (std::size_t k = 0; k < r.size(); ++k) {
            double eta = c0 + r.x[k] * c1;
            s.add(r.w[k] * mu_closed_impl({xi0, eta}));
        }
    }
    return s.value();
}

}  // namespace symbol_detail

// slice identity: mu_n as an average of mu_2 over the tail alpha variables,
// with kink-aware Gauss-Legendre panels (q nodes per panel and axis)
inline double mu_slice(const std::vector<double>& xi, int q = 256) {
    symbol_detail::check_point(xi);
    const int n = int(xi.size());
    require(xi[0] != 0.0, "mu_slice: xi_1 must be nonzero");
    if (n == 2) return mu_closed(xi);
    if (n == 3) return symbol_detail::slice_1d(xi[0], xi[2], xi[1], 0.0, 1.0, q);
    if (n == 4) {
        // outer variable multiplies xi[1]; split where a kink line meets the
        // inner-integration boundary alpha_2 in {0,1}
        std::vector<double> brk{0.0, 1.0};
        for (double base : {xi[3], xi[3] + xi[0]})
            for (double edge : {0.0, 1.0}) {
                if (xi[1] == 0.0) continue;
                double root = -(base + edge * xi[2]) / xi[1];
                if (root > 0.0 && root < 1.0) brk.push_back(root);
            }
        std::sort(brk.begin(), brk.end());
        KahanSum s;
        for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
            QuadRule r = gl_on(brk[i], brk[i + 1], q);
            for (std::size_t k = 0; k < r.size(); ++k)
                s.add(r.w[k] *
                      symbol_detail::slice_1d(xi[0], xi[3] + r.x[k] * xi[1], xi[2], 0.0, 1.0, q));
        }
        return s.value();
    }
    // n >= 5: plain tensor rule over the tail cube (no kink splitting)
    const QuadRule& g = gauss_legendre(q);
    std::vector<std::size_t> idx(n - 2, 0);
    KahanSum s;
    bool done = false;
    while (!done) {
        double eta = xi.back(), w = 1.0;
        for (int j = 0; j < n - 2; ++j) {
            double a = 0.5 * (g.x[idx[j]] + 1.0);
            eta += a * xi[j + 1];
            w *= 0.5 * g.w[idx[j]];
        }
        s.add(w * mu_closed({xi[0], eta}));
        for (int j = 0;; ++j) {
            if (j == n - 2) { done = true; break; }
            if (++idx[j] < g.size()) break;
            idx[j] = 0;
        }
    }
    return s.value();
}

// eta slice variable of the reduction: alpha-tail dotted into the middle coords
inline double slice_eta(const std::vector<double>& xi, const std::vector<double>& alpha_tail) {
    require(alpha_tail.size() + 2 == xi.size(), "slice_eta: tail size must be n-2");
    double eta = xi.back();
    for (std::size_t j = 0; j < alpha_tail.size(); ++j) eta += alpha_tail[j] * xi[j + 1];
    return eta;
}

// ---------------------------------------------------------------------------
// finite-difference standard-symbol check
// ---------------------------------------------------------------------------

struct AnnulusSpec {
    double r_lo = 1.0, r_hi = 4.0;
    int radii = 4;
    int directions = 16;
    std::uint64_t seed = kDefaultSeed;
};

struct OrderStats {
    int order = 0;
    double sup = 0.0;                 // sup over cloud of |FD^a m| * |xi|^|a|
    std::vector<double> worst_point;
};

struct SymbolReport {
    bool pass = true;
    double cap = 1e4;
    std::vector<OrderStats> orders;
    std::string failure;
};

// Samples central finite differences on a log-spaced annulus cloud. Failure
// modes: a scaled derivative above the cap, sustained >4x growth per halving
// of h, or one-sided second differences that disagree persistently (the
// signature of a wall where the two sector formulas meet).
inline SymbolReport check_standard_symbol(const std::function<double(const std::vector<double>&)>& m,
                                          int n, const AnnulusSpec& region, int max_order,
                                          double cap = 1e4,
                                          const std::vector<std::vector<double>>& extra_points = {}) {
    require(region.r_lo > 0.0, "check_standard_symbol: region must avoid the origin");
    require(max_order >= 0 && max_order <= 2, "check_standard_symbol: max_order <= 2");
    SymbolReport rep;
    rep.cap = cap;
    rep.orders.resize(max_order + 1);
    for (int o = 0; o <= max_order; ++o) rep.orders[o].order = o;

    std::vector<std::vector<double>> cloud = extra_points;
    Rng rng(region.seed);
    for (int ir = 0; ir < region.radii; ++ir) {
        double r = region.r_lo *
                   std::pow(region.r_hi / region.r_lo, region.radii == 1 ? 0.0 : double(ir) / (region.radii - 1));
        for (int id = 0; id < region.directions; ++id) {
            std::vector<double> p(n);
            double norm = 0;
            for (auto& v : p) {
                v = rng.normal();
                norm += v * v;
            }
            norm = std::sqrt(norm);
            for (auto& v : p) v *= r / norm;
            cloud.push_back(std::move(p));
        }
    }

    constexpr int kLevels = 8;
    auto fail = [&](const std::string& why) {
        rep.pass = false;
        if (rep.failure.empty()) rep.failure = why;
    };

    for (const auto& p : cloud) {
        double r = 0;
        for (double v : p) r += v * v;
        r = std::sqrt(r);
        auto shifted = [&](int ax1, double h1, int ax2, double h2) {
            std::vector<double> q = p;
            q[ax1] += h1;
            if (ax2 >= 0) q[ax2] += h2;
            return m(q);
        };

        double m0 = std::abs(m(p));
        if (m0 > rep.orders[0].sup) {
            rep.orders[0].sup = m0;
            rep.orders[0].worst_point = p;
        }
        if (m0 > cap) fail("order-0 value above cap");
        if (max_order < 1) continue;

        const double noise_floor = 1e-4 * std::max(1.0, m0);
        auto track = [&](int order, const std::vector<double>& levels) {
            double fin = std::abs(levels.back());
            if (fin > rep.orders[order].sup) {
                rep.orders[order].sup = fin;
                rep.orders[order].worst_point = p;
            }
            for (double v : levels)
                if (std::abs(v) > cap) fail("order-" + std::to_string(order) + " value above cap");
            int L = int(levels.size());
            if (L >= 3 && std::abs(levels[L - 1]) > 4.0 * std::abs(levels[L - 2]) &&
                std::abs(levels[L - 2]) > 4.0 * std::abs(levels[L - 3]) &&
                std::abs(levels[L - 2]) > noise_floor)
                fail("order-" + std::to_string(order) + " divergence under refinement");
        };

        for (int ax = 0; ax < n; ++ax) {
            std::vector<double> d1, d2, disc;
            for (int lev = 0; lev < kLevels; ++lev) {
                double h = 1e-2 * r * std::ldexp(1.0, -lev);
                double fp = shifted(ax, h, -1, 0), fm = shifted(ax, -h, -1, 0);
                double f2p = shifted(ax, 2 * h, -1, 0), f2m = shifted(ax, -2 * h, -1, 0);
                double f0 = m(p);
                d1.push_back((fp - fm) / (2 * h) * r);
                d2.push_back((fp - 2 * f0 + fm) / (h * h) * r * r);
                double fwd = (f0 - 2 * fp + f2p) / (h * h);
                double bwd = (f0 - 2 * fm + f2m) / (h * h);
                disc.push_back(std::abs(fwd - bwd) * r * r);
            }
            track(1, d1);
            if (max_order >= 2) {
                track(2, d2);
                double ref = 0.05 * std::max(1.0, m0);
                if (disc[kLevels - 1] > ref && disc[kLevels - 2] > ref)
                    fail("order-2 one-sided second differences disagree across refinement");
            }
        }
        if (max_order >= 2) {
            for (int a1 = 0; a1 < n; ++a1)
                for (int a2 = a1 + 1; a2 < n; ++a2) {
                    std::vector<double> dm;
                    for (int lev = 0; lev < kLevels; ++lev) {
                        double h = 1e-2 * r * std::ldexp(1.0, -lev);
                        double v = (shifted(a1, h, a2, h) - shifted(a1, h, a2, -h) -
                                    shifted(a1, -h, a2, h) + shifted(a1, -h, a2, -h)) /
                                   (4 * h * h);
                        dm.push_back(v * r * r);
                    }
                    track(2, dm);
                }
        }
    }
    return rep;
}

}  // namespace sxl
