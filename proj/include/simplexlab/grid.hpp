#pragma once

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "simplexlab/bumps.hpp"
#include "simplexlab/common.hpp"
#include "simplexlab/fft.hpp"
#include "simplexlab/rng.hpp"

namespace sxl {

namespace grid_detail {

inline std::size_t checked_total(const std::vector<std::size_t>& sizes) {
    std::size_t t = 1;
    for (auto m : sizes) {
        require(is_pow2(m), "grid: per-axis sizes must be powers of two");
        t *= m;
    }
    return t;
}

}  // namespace grid_detail

struct GridFunction {
    int dim = 0;
    std::vector<std::size_t> sizes;  // per-axis point counts, powers of two
    double period = 1.0;             // torus side length L, same on every axis
    std::vector<cplx> values;        // row-major, axis 0 slowest

    static GridFunction zeros(std::vector<std::size_t> sizes_, double period_ = 1.0) {
        GridFunction f;
        f.dim = int(sizes_.size());
        f.sizes = std::move(sizes_);
        f.period = period_;
        f.values.assign(grid_detail::checked_total(f.sizes), cplx{0.0, 0.0});
        return f;
    }

    std::size_t total() const { return values.size(); }

    std::size_t stride(int axis) const {
        std::size_t s = 1;
        for (int j = axis + 1; j < dim; ++j) s *= sizes[j];
        return s;
    }

    double spacing(int axis) const { return period / double(sizes[axis]); }

    double cell_volume() const {
        double v = 1.0;
        for (int j = 0; j < dim; ++j) v *= spacing(j);
        return v;
    }

    cplx& at(const std::vector<std::size_t>& idx) { return values[flat(idx)]; }
    cplx at(const std::vector<std::size_t>& idx) const { return values[flat(idx)]; }

    std::size_t flat(const std::vector<std::size_t>& idx) const {
        std::size_t f = 0;
        for (int j = 0; j < dim; ++j) f = f * sizes[j] + idx[j];
        return f;
    }

    bool same_shape(const GridFunction& o) const {
        return dim == o.dim && sizes == o.sizes && period == o.period;
    }
};

struct SpectralFunction {
    int dim = 0;
    std::vector<std::size_t> sizes;
    double period = 1.0;
    std::vector<std::uint8_t> transformed;  // per-axis flag
    std::vector<cplx> values;               // natural FFT order on transformed axes

    std::size_t total() const { return values.size(); }
    std::size_t stride(int axis) const {
        std::size_t s = 1;
        for (int j = axis + 1; j < dim; ++j) s *= sizes[j];
        return s;
    }
};

// signed integer frequency for storage index i on an axis of M points
inline long freq_of_index(std::size_t i, std::size_t m) {
    return i < m / 2 ? long(i) : long(i) - long(m);
}

namespace grid_detail {

template <class Body>
void for_each_line(std::vector<cplx>& vals, const std::vector<std::size_t>& sizes, int axis,
                   Body&& body) {
    const int dim = int(sizes.size());
    std::size_t stride = 1;
    for (int j = axis + 1; j < dim; ++j) stride *= sizes[j];
    std::size_t outer = 1;
    for (int j = 0; j < axis; ++j) outer *= sizes[j];
    const std::size_t m = sizes[axis];
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t in = 0; in < stride; ++in) body(vals.data() + o * m * stride + in, stride);
}

inline void axis_fft(std::vector<cplx>& vals, const std::vector<std::size_t>& sizes, int axis,
                     bool inverse) {
    std::vector<cplx> scratch;
    for_each_line(vals, sizes, axis,
                  [&](cplx* p, std::size_t stride) { fft_line(p, sizes[axis], stride, inverse, scratch); });
}

}  // namespace grid_detail

// Forward transform on the listed axes with kernel e^{-2 pi i x xi / L} and a
// factor L/M_j per transformed axis, so sums approximate continuum integrals.
inline SpectralFunction dft(const GridFunction& f, const std::vector<int>& axes) {
    SpectralFunction s;
    s.dim = f.dim;
    s.sizes = f.sizes;
    s.period = f.period;
    s.transformed.assign(f.dim, 0);
    s.values = f.values;
    double scale = 1.0;
    for (int a : axes) {
        require(a >= 0 && a < f.dim, "dft: axis index out of range");
        require(!s.transformed[a], "dft: axis listed twice");
        s.transformed[a] = 1;
        grid_detail::axis_fft(s.values, s.sizes, a, false);
        scale *= f.period / double(f.sizes[a]);
    }
    for (auto& v : s.values) v *= scale;
    return s;
}

inline SpectralFunction dft(const GridFunction& f) {
    std::vector<int> axes(f.dim);
    std::iota(axes.begin(), axes.end(), 0);
    return dft(f, axes);
}

inline GridFunction idft(const SpectralFunction& s) {
    GridFunction f;
    f.dim = s.dim;
    f.sizes = s.sizes;
    f.period = s.period;
    f.values = s.values;
    double scale = 1.0;
    for (int a = 0; a < s.dim; ++a) {
        if (!s.transformed[a]) continue;
        grid_detail::axis_fft(f.values, f.sizes, a, true);
        scale *= double(f.sizes[a]) / s.period;
    }
    for (auto& v : f.values) v *= scale;
    return f;
}

// Convolution along one axis: multiplies the axis spectrum by
// profile(2^-k xi) * e^{-2 pi i 2^-k u xi}, xi the integer axis frequency.
template <class Profile>
GridFunction convolve_axis(const GridFunction& f, Profile&& profile, int k, int axis, double u = 0.0) {
    require(axis >= 0 && axis < f.dim, "convolve_axis: axis out of range");
    GridFunction g = f;
    grid_detail::axis_fft(g.values, g.sizes, axis, false);
    const std::size_t m = g.sizes[axis];
    std::vector<cplx> mult(m);
    for (std::size_t i = 0; i < m; ++i) {
        double xi = double(freq_of_index(i, m));
        double arg = std::ldexp(xi, -k);
        double ph = -2.0 * pi * std::ldexp(u * xi, -k);
        mult[i] = profile(arg) * cplx{std::cos(ph), std::sin(ph)};
    }
    grid_detail::for_each_line(g.values, g.sizes, axis, [&](cplx* p, std::size_t stride) {
        for (std::size_t i = 0; i < m; ++i) p[i * stride] *= mult[i];
    });
    grid_detail::axis_fft(g.values, g.sizes, axis, true);
    return g;
}

inline double lp_norm(const GridFunction& f, double p) {
    if (std::isinf(p)) {
        double mx = 0.0;
        for (const auto& v : f.values) mx = std::max(mx, std::abs(v));
        return mx;
    }
    require(p >= 1.0, "lp_norm: p >= 1 required");
    KahanSum s;
    for (const auto& v : f.values) s.add(std::pow(std::abs(v), p));
    return std::pow(s.value() * f.cell_volume(), 1.0 / p);
}

// Riemann-sum integral of the plain product of the samples.
inline cplx integral(const GridFunction& f) {
    KahanSumC s;
    for (const auto& v : f.values) s.add(v);
    return s.value() * f.cell_volume();
}

// exact circular shift by whole grid steps (positive steps move content to
// smaller coordinates: g(x) = f(x + steps * spacing))
inline GridFunction translate_steps(const GridFunction& f, int axis, long steps) {
    require(axis >= 0 && axis < f.dim, "translate_steps: axis out of range");
    GridFunction g = f;
    const std::size_t m = f.sizes[axis];
    const long sh = ((steps % long(m)) + long(m)) % long(m);
    std::vector<cplx> line(m);
    grid_detail::for_each_line(g.values, g.sizes, axis, [&](cplx* p, std::size_t stride) {
        for (std::size_t i = 0; i < m; ++i) line[i] = p[((i + sh) % m) * stride];
        for (std::size_t i = 0; i < m; ++i) p[i * stride] = line[i];
    });
    return g;
}

// ---------------------------------------------------------------------------
// Binary file format: magic "SXLB", u32 version, u32 dim, u32 sizes[dim],
// f64 period, then little-endian f64 (re, im) pairs in row-major order.
// ---------------------------------------------------------------------------

inline void save_grid(const GridFunction& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    require(bool(out), "save_grid: cannot open " + path);
    out.write("SXLB", 4);
    std::uint32_t ver = 1, dim = std::uint32_t(f.dim);
    out.write(reinterpret_cast<const char*>(&ver), 4);
    out.write(reinterpret_cast<const char*>(&dim), 4);
    for (auto m : f.sizes) {
        std::uint32_t mm = std::uint32_t(m);
        out.write(reinterpret_cast<const char*>(&mm), 4);
    }
    out.write(reinterpret_cast<const char*>(&f.period), 8);
    for (const auto& v : f.values) {
        double re = v.real(), im = v.imag();
        out.write(reinterpret_cast<const char*>(&re), 8);
        out.write(reinterpret_cast<const char*>(&im), 8);
    }
    require(bool(out), "save_grid: write failed for " + path);
}

inline GridFunction load_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(bool(in), "load_grid: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    require(in && std::memcmp(magic, "SXLB", 4) == 0, "load_grid: bad magic in " + path);
    std::uint32_t ver = 0, dim = 0;
    in.read(reinterpret_cast<char*>(&ver), 4);
    in.read(reinterpret_cast<char*>(&dim), 4);
    require(in && ver == 1, "load_grid: unsupported version");
    require(dim >= 1 && dim <= 8, "load_grid: bad dimension");
    std::vector<std::size_t> sizes(dim);
    for (auto& m : sizes) {
        std::uint32_t mm = 0;
        in.read(reinterpret_cast<char*>(&mm), 4);
        m = mm;
    }
    double period = 0;
    in.read(reinterpret_cast<char*>(&period), 8);
    require(in && period > 0, "load_grid: bad period");
    GridFunction f = GridFunction::zeros(sizes, period);
    for (auto& v : f.values) {
        double re = 0, im = 0;
        in.read(reinterpret_cast<char*>(&re), 8);
        in.read(reinterpret_cast<char*>(&im), 8);
        v = {re, im};
    }
    require(bool(in), "load_grid: truncated file " + path);
    return f;
}

// ---------------------------------------------------------------------------
// Test-data generators
// ---------------------------------------------------------------------------

// white noise band-limited to |xi_j| <= cutoff on every axis
inline GridFunction random_bandlimited(std::vector<std::size_t> sizes, double period, long cutoff,
                                       Rng& rng) {
    GridFunction f = GridFunction::zeros(std::move(sizes), period);
    SpectralFunction s;
    s.dim = f.dim;
    s.sizes = f.sizes;
    s.period = f.period;
    s.transformed.assign(f.dim, 1);
    s.values.assign(f.total(), cplx{0, 0});
    std::vector<std::size_t> idx(f.dim, 0);
    const std::size_t tot = f.total();
    for (std::size_t flat = 0; flat < tot; ++flat) {
        std::size_t rem = flat;
        bool in_band = true;
        for (int j = f.dim - 1; j >= 0; --j) {
            idx[j] = rem % f.sizes[j];
            rem /= f.sizes[j];
            if (std::labs(freq_of_index(idx[j], f.sizes[j])) > cutoff) in_band = false;
        }
        if (in_band) s.values[flat] = rng.cnormal();
    }
    return idft(s);
}

// smooth bump envelope centered at L/2 on every axis (support halfwidth
// `width`*L), modulated by band-limited noise; supports stay well inside
// half the period when width <= 1/4.
inline GridFunction random_bump_modulated(std::vector<std::size_t> sizes, double period,
                                          double width, long band, Rng& rng) {
    GridFunction f = random_bandlimited(std::move(sizes), period, band, rng);
    std::vector<std::size_t> idx(f.dim, 0);
    const std::size_t tot = f.total();
    for (std::size_t flat = 0; flat < tot; ++flat) {
        std::size_t rem = flat;
        double env = 1.0;
        for (int j = f.dim - 1; j >= 0; --j) {
            std::size_t i = rem % f.sizes[j];
            rem /= f.sizes[j];
            double x = double(i) * f.spacing(j);
            double ssd = std::abs(x - 0.5 * f.period) / (width * f.period);
            env *= 1.0 - smooth_step(std::clamp(4.0 * ssd - 3.0, -1.0, 1.0));
        }
        f.values[flat] *= env;
    }
    return f;
}

}  // namespace sxl
