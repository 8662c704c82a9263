#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "simplexlab/common.hpp"

namespace sxl {

struct QuadRule {
    std::vector<double> x, w;  // nodes and weights
    std::size_t size() const { return x.size(); }
};

namespace quad_detail {

// Gauss-Legendre on [-1,1] by Newton iteration on P_n.
inline QuadRule gauss_legendre_raw(int n) {
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

}  // namespace quad_detail

inline const QuadRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<QuadRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& p = cache[n];
    if (!p) p = std::make_unique<QuadRule>(quad_detail::gauss_legendre_raw(n));
    return *p;
}

// GL rule mapped to [a,b].
inline QuadRule gl_on(double a, double b, int n) {
    const QuadRule& g = gauss_legendre(n);
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        r.x[i] = 0.5 * (a + b) + 0.5 * (b - a) * g.x[i];
        r.w[i] = 0.5 * (b - a) * g.w[i];
    }
    return r;
}

template <class F>
double integrate_gl(F&& f, double a, double b, int n) {
    QuadRule r = gl_on(a, b, n);
    KahanSum s;
    for (std::size_t i = 0; i < r.size(); ++i) s.add(r.w[i] * f(r.x[i]));
    return s.value();
}

// Composite GL over [a,b] split at interior breakpoints (kinks of the integrand),
// with each panel subdivided so an oscillation e^{2 pi i freq x} stays resolved.
template <class F>
cplx integrate_osc(F&& f, double a, double b, const std::vector<double>& breaks, double freq,
                   int nodes_per_panel = 24, double panels_per_period = 4.0) {
    std::vector<double> pts{a, b};
    for (double c : breaks)
        if (c > a && c < b) pts.push_back(c);
    std::sort(pts.begin(), pts.end());
    const double period = 1.0 / std::max(std::abs(freq), 1e-12);
    KahanSumC acc;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const double lo = pts[s], hi = pts[s + 1];
        int np = std::max(1, int(std::ceil((hi - lo) / (period / panels_per_period))));
        np = std::min(np, 200000);
        const double h = (hi - lo) / np;
        for (int p = 0; p < np; ++p) {
            QuadRule r = gl_on(lo + p * h, lo + (p + 1) * h, nodes_per_panel);
            for (std::size_t i = 0; i < r.size(); ++i) acc.add(r.w[i] * f(r.x[i]));
        }
    }
    return acc.value();
}

}  // namespace sxl
