#pragma once

#include <cstdint>
#include <cmath>

#include "simplexlab/common.hpp"

namespace sxl {

// xoshiro256++ with splitmix64 seeding. Hand-rolled so that streams are
// bit-identical across compilers and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0x5EED) {
        std::uint64_t x = seed;
        for (auto& si : s_) si = splitmix64(x);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // standard normal via Box-Muller (deterministic draw order)
    double normal() {
        if (have_cache_) {
            have_cache_ = false;
            return cache_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        cache_ = r * std::sin(2.0 * pi * u2);
        have_cache_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    cplx cnormal() {
        double a = normal(), b = normal();
        return {a, b};
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97f4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
    double cache_ = 0.0;
    bool have_cache_ = false;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

}  // namespace sxl
