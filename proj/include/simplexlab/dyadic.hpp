#pragma once

#include <vector>

#include "simplexlab/common.hpp"

namespace sxl {

// dyadic interval [i 2^-k, (i+1) 2^-k) inside [0,1)
struct DyadicInterval {
    int scale = 0;
    std::size_t pos = 0;

    DyadicInterval(int k, std::size_t i) : scale(k), pos(i) {
        require(k >= 0 && i < (std::size_t{1} << k), "DyadicInterval: bad scale/position");
    }
    double lo() const { return double(pos) * std::ldexp(1.0, -scale); }
    double length() const { return std::ldexp(1.0, -scale); }
    DyadicInterval left() const { return {scale + 1, 2 * pos}; }
    DyadicInterval right() const { return {scale + 1, 2 * pos + 1}; }
};

// piecewise-constant function on 2^K cells of [0,1)
struct Dyadic1D {
    int levels = 0;
    std::vector<double> v;

    static Dyadic1D zeros(int k) {
        require(k >= 0 && k <= 24, "Dyadic1D: levels out of range");
        Dyadic1D f;
        f.levels = k;
        f.v.assign(std::size_t{1} << k, 0.0);
        return f;
    }
    std::size_t cells() const { return v.size(); }
    double cell_width() const { return 1.0 / double(cells()); }
};

inline double integral(const Dyadic1D& f) {
    KahanSum s;
    for (double x : f.v) s.add(x);
    return s.value() * f.cell_width();
}

inline double inner(const Dyadic1D& f, const Dyadic1D& g) {
    require(f.levels == g.levels, "inner: level mismatch");
    KahanSum s;
    for (std::size_t i = 0; i < f.cells(); ++i) s.add(f.v[i] * g.v[i]);
    return s.value() * f.cell_width();
}

inline double l2_norm_sq(const Dyadic1D& f) { return inner(f, f); }

// Haar function adapted to I, sampled on the grid of f
inline Dyadic1D haar_function(const DyadicInterval& I, int levels) {
    require(I.scale < levels, "haar_function: interval finer than the grid");
    Dyadic1D h = Dyadic1D::zeros(levels);
    std::size_t width = std::size_t{1} << (levels - I.scale);
    std::size_t start = I.pos * width;
    double amp = 1.0 / std::sqrt(I.length());
    for (std::size_t i = 0; i < width / 2; ++i) h.v[start + i] = amp;
    for (std::size_t i = width / 2; i < width; ++i) h.v[start + i] = -amp;
    return h;
}

inline double haar_coeff(const Dyadic1D& f, const DyadicInterval& I) {
    require(I.scale < f.levels, "haar_coeff: scale too fine for the grid");
    std::size_t width = std::size_t{1} << (f.levels - I.scale);
    std::size_t start = I.pos * width;
    KahanSum s;
    for (std::size_t i = 0; i < width / 2; ++i) s.add(f.v[start + i]);
    for (std::size_t i = width / 2; i < width; ++i) s.add(-f.v[start + i]);
    return s.value() * f.cell_width() / std::sqrt(I.length());
}

inline Dyadic1D martingale_avg(const Dyadic1D& f, int k) {
    require(k >= 0 && k <= f.levels, "martingale_avg: scale out of range");
    Dyadic1D g = f;
    std::size_t block = std::size_t{1} << (f.levels - k);
    for (std::size_t b = 0; b < f.cells(); b += block) {
        KahanSum s;
        for (std::size_t i = 0; i < block; ++i) s.add(f.v[b + i]);
        double avg = s.value() / double(block);
        for (std::size_t i = 0; i < block; ++i) g.v[b + i] = avg;
    }
    return g;
}

inline Dyadic1D martingale_diff(const Dyadic1D& f, int k) {
    require(k >= 0 && k < f.levels, "martingale_diff: scale out of range");
    Dyadic1D a = martingale_avg(f, k + 1), b = martingale_avg(f, k);
    for (std::size_t i = 0; i < a.cells(); ++i) a.v[i] -= b.v[i];
    return a;
}

// ---------------------------------------------------------------------------
// three-variable model on the unit cube
// ---------------------------------------------------------------------------

struct Dyadic3D {
    int levels = 0;
    std::size_t n = 0;  // cells per axis
    std::vector<double> v;

    static Dyadic3D zeros(int k) {
        require(k >= 0 && k <= 8, "Dyadic3D: levels out of range");
        Dyadic3D f;
        f.levels = k;
        f.n = std::size_t{1} << k;
        f.v.assign(f.n * f.n * f.n, 0.0);
        return f;
    }
    double& at(std::size_t x, std::size_t y, std::size_t z) { return v[(x * n + y) * n + z]; }
    double at(std::size_t x, std::size_t y, std::size_t z) const { return v[(x * n + y) * n + z]; }
    double cell_volume() const { return 1.0 / double(n * n * n); }
    bool same_shape(const Dyadic3D& o) const { return levels == o.levels; }
};

inline double inner(const Dyadic3D& f, const Dyadic3D& g) {
    require(f.same_shape(g), "inner: shape mismatch");
    KahanSum s;
    for (std::size_t i = 0; i < f.v.size(); ++i) s.add(f.v[i] * g.v[i]);
    return s.value() * f.cell_volume();
}

inline double l2_norm_sq(const Dyadic3D& f) { return inner(f, f); }

// martingale average along one axis (0: x, 1: y, 2: z)
inline Dyadic3D martingale_avg_axis(const Dyadic3D& f, int axis, int k) {
    require(axis >= 0 && axis < 3, "martingale_avg_axis: bad axis");
    require(k >= 0 && k <= f.levels, "martingale_avg_axis: scale out of range");
    Dyadic3D g = f;
    const std::size_t n = f.n;
    const std::size_t block = std::size_t{1} << (f.levels - k);
    const std::size_t stride = (axis == 0) ? n * n : (axis == 1) ? n : 1;
    const std::size_t outer = (axis == 0) ? 1 : (axis == 1) ? n : n * n;
    // iterate all lines along `axis`
    for (std::size_t base = 0; base < f.v.size(); ++base) {
        // visit only line starts: positions whose axis-coordinate is 0
        std::size_t coord = (axis == 0) ? base / (n * n) : (axis == 1) ? (base / n) % n : base % n;
        if (coord != 0) continue;
        for (std::size_t b = 0; b < n; b += block) {
            KahanSum s;
            for (std::size_t i = 0; i < block; ++i) s.add(f.v[base + (b + i) * stride]);
            double avg = s.value() / double(block);
            for (std::size_t i = 0; i < block; ++i) g.v[base + (b + i) * stride] = avg;
        }
    }
    (void)outer;
    return g;
}

inline Dyadic3D martingale_diff_axis(const Dyadic3D& f, int axis, int k) {
    require(k >= 0 && k < f.levels, "martingale_diff_axis: scale out of range");
    Dyadic3D a = martingale_avg_axis(f, axis, k + 1), b = martingale_avg_axis(f, axis, k);
    for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
    return a;
}

// T_d(F1,F2,F3) = sum_k (E_k^x F1)(E_k^y F2)(Delta_k^z F3) over the scale window
inline Dyadic3D t_d(const Dyadic3D& f1, const Dyadic3D& f2, const Dyadic3D& f3, int kmin, int kmax) {
    require(f1.same_shape(f2) && f2.same_shape(f3), "t_d: shape mismatch");
    require(kmin >= 0 && kmax < f1.levels && kmin <= kmax, "t_d: scale range out of [0, K)");
    Dyadic3D out = Dyadic3D::zeros(f1.levels);
    for (int k = kmin; k <= kmax; ++k) {
        Dyadic3D a = martingale_avg_axis(f1, 0, k);
        Dyadic3D b = martingale_avg_axis(f2, 1, k);
        Dyadic3D c = martingale_diff_axis(f3, 2, k);
        for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += a.v[i] * b.v[i] * c.v[i];
    }
    return out;
}

inline double lambda_dyadic(const Dyadic3D& f0, const Dyadic3D& f1, const Dyadic3D& f2,
                            const Dyadic3D& f3, int kmin = 0, int kmax = -1) {
    if (kmax < 0) kmax = f0.levels - 1;
    return inner(t_d(f1, f2, f3, kmin, kmax), f0);
}

struct CsFactors {
    double a = 0.0, b = 0.0;                  // sums over all dyadic cubes of R^3
    double a_matched = 0.0, b_matched = 0.0;  // scales 0..K-1 only (the T_d window)
};

// The two Cauchy-Schwarz factors of the dyadic form, by direct summation
// over cubes. Fine scales are accumulated per (z, z') pair inside a shared
// z-interval; the coarser-than-unit cubes collapse to closed-form tails
// (geometric in the scale) since every input lives on [0,1)^3.
inline CsFactors cs_split(const Dyadic3D& f0, const Dyadic3D& f1, const Dyadic3D& f2,
                          const Dyadic3D& f3) {
    require(f0.same_shape(f1) && f1.same_shape(f2) && f2.same_shape(f3), "cs_split: shape mismatch");
    for (const Dyadic3D* f : {&f0, &f1, &f2, &f3})
        for (double x : f->v) require(x >= 0.0, "cs_split: inputs must be nonnegative");

    const int K = f0.levels;
    const std::size_t n = f0.n;
    const double dx = 1.0 / double(n);

    // ----- b factor: sum_k ||Delta_k^z F3||_2^2 (+ coarse tail ||E_0^z F3||^2)
    CsFactors out;
    {
        KahanSum fine;
        for (int k = 0; k < K; ++k) fine.add(l2_norm_sq(martingale_diff_axis(f3, 2, k)));
        out.b_matched = fine.value();
        Dyadic3D e0 = martingale_avg_axis(f3, 2, 0);
        out.b = out.b_matched + l2_norm_sq(e0);
    }

    // ----- a factor
    std::vector<double> bsum(n * n), csum(n * n);  // B(I1-block, y) and C(I2-block, x) per (z, z')
    KahanSum a_fine;
    for (int k = 0; k < K; ++k) {
        const std::size_t block = std::size_t{1} << (K - k);  // cells per interval
        const double inv_len = std::ldexp(1.0, k);            // |I|^{-1}
        const std::size_t ni = n / block;
        KahanSum scale_acc;
        for (std::size_t i3 = 0; i3 < ni; ++i3) {
            for (std::size_t za = 0; za < block; ++za) {
                const std::size_t z = i3 * block + za;
                const double sz = (za < block / 2) ? 1.0 : -1.0;
                for (std::size_t zb = 0; zb < block; ++zb) {
                    const std::size_t zp = i3 * block + zb;
                    const double szp = (zb < block / 2) ? 1.0 : -1.0;
                    // B(i1, y) = sum_{x' in I1} F1(x',y,z) F1(x',y,z') dx
                    for (std::size_t i1 = 0; i1 < ni; ++i1)
                        for (std::size_t y = 0; y < n; ++y) {
                            double s = 0;
                            for (std::size_t xx = i1 * block; xx < (i1 + 1) * block; ++xx)
                                s += f1.at(xx, y, z) * f1.at(xx, y, zp);
                            bsum[i1 * n + y] = s * dx;
                        }
                    // C(i2, x) = sum_{y' in I2} F2(x,y',z) F2(x,y',z') dx
                    for (std::size_t i2 = 0; i2 < ni; ++i2)
                        for (std::size_t x = 0; x < n; ++x) {
                            double s = 0;
                            for (std::size_t yy = i2 * block; yy < (i2 + 1) * block; ++yy)
                                s += f2.at(x, yy, z) * f2.at(x, yy, zp);
                            csum[i2 * n + x] = s * dx;
                        }
                    double cell = 0;
                    for (std::size_t x = 0; x < n; ++x) {
                        const std::size_t i1 = x / block;
                        for (std::size_t y = 0; y < n; ++y) {
                            const std::size_t i2 = y / block;
                            cell += f0.at(x, y, z) * f0.at(x, y, zp) * bsum[i1 * n + y] *
                                    csum[i2 * n + x];
                        }
                    }
                    // weights: psi psi = 2^k sz szp, cell measures dx^2 (x,y) dz dz',
                    // interval normalizations |I1|^-1 |I2|^-1
                    scale_acc.add(cell * sz * szp * std::ldexp(1.0, k) * inv_len * inv_len * dx * dx *
                                  dx * dx);
                }
            }
        }
        a_fine.add(scale_acc.value());
    }
    out.a_matched = a_fine.value();

    // coarse tail: (1/7) * int P^2 with P the full-domain z-pairing
    {
        KahanSum p2;
        for (std::size_t z = 0; z < n; ++z)
            for (std::size_t zp = 0; zp < n; ++zp) {
                for (std::size_t i1 = 0; i1 < 1; ++i1) (void)i1;
                // full-domain B(y), C(x)
                for (std::size_t y = 0; y < n; ++y) {
                    double s = 0;
                    for (std::size_t xx = 0; xx < n; ++xx) s += f1.at(xx, y, z) * f1.at(xx, y, zp);
                    bsum[y] = s * dx;
                }
                for (std::size_t x = 0; x < n; ++x) {
                    double s = 0;
                    for (std::size_t yy = 0; yy < n; ++yy) s += f2.at(x, yy, z) * f2.at(x, yy, zp);
                    csum[x] = s * dx;
                }
                double cell = 0;
                for (std::size_t x = 0; x < n; ++x)
                    for (std::size_t y = 0; y < n; ++y)
                        cell += f0.at(x, y, z) * f0.at(x, y, zp) * bsum[y] * csum[x];
                p2.add(cell * dx * dx * dx * dx);
            }
        out.a = out.a_matched + p2.value() / 7.0;
    }
    return out;
}

}  // namespace sxl
