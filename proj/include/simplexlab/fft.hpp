#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "simplexlab/common.hpp"

namespace sxl {
namespace fft_detail {

struct Plan {
    std::size_t n;
    std::vector<std::size_t> rev;
    std::vector<cplx> w;  // twiddles per stage, packed

    explicit Plan(std::size_t n_) : n(n_) {
        rev.resize(n);
        int lg = ilog2(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (int b = 0; b < lg; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (lg - 1 - b);
            rev[i] = r;
        }
        w.reserve(n);
        for (std::size_t len = 2; len <= n; len <<= 1)
            for (std::size_t j = 0; j < len / 2; ++j) {
                double ang = -2.0 * pi * double(j) / double(len);
                w.push_back({std::cos(ang), std::sin(ang)});
            }
    }
};

inline const Plan& plan(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<Plan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& p = cache[n];
    if (!p) p = std::make_unique<Plan>(n);
    return *p;
}

}  // namespace fft_detail

// In-place complex FFT, forward kernel e^{-2 pi i jk/n}, unnormalized.
// Inverse applies the conjugate kernel and divides by n.
inline void fft_inplace(cplx* a, std::size_t n, bool inverse) {
    require(is_pow2(n), "fft: length must be a power of two");
    if (n == 1) return;
    const auto& pl = fft_detail::plan(n);
    for (std::size_t i = 0; i < n; ++i)
        if (i < pl.rev[i]) std::swap(a[i], a[pl.rev[i]]);
    std::size_t wofs = 0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                cplx w = pl.w[wofs + j];
                if (inverse) w = std::conj(w);
                cplx u = a[i + j];
                cplx v = a[i + j + half] * w;
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
        wofs += half;
    }
    if (inverse) {
        const double inv = 1.0 / double(n);
        for (std::size_t i = 0; i < n; ++i) a[i] *= inv;
    }
}

// FFT of one strided line (gathers into scratch when stride > 1).
inline void fft_line(cplx* p, std::size_t n, std::size_t stride, bool inverse,
                     std::vector<cplx>& scratch) {
    if (stride == 1) {
        fft_inplace(p, n, inverse);
        return;
    }
    scratch.resize(n);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = p[i * stride];
    fft_inplace(scratch.data(), n, inverse);
    for (std::size_t i = 0; i < n; ++i) p[i * stride] = scratch[i];
}

}  // namespace sxl
