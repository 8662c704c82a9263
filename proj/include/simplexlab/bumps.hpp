#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "simplexlab/common.hpp"
#include "simplexlab/quadrature.hpp"

namespace sxl {

namespace bump_detail {

inline double mollifier(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

// Normalized primitive of the mollifier: a C-infinity step, 0 at -1, 1 at +1.
// Tabulated once with exact derivatives, then cubic-Hermite interpolated;
// interpolation error is ~1e-15 at this resolution.
class SmoothStep {
  public:
    static const SmoothStep& instance() {
        static SmoothStep s;
        return s;
    }

    double operator()(double x) const {
        if (x <= -1.0) return 0.0;
        if (x >= 1.0) return 1.0;
        double pos = (x + 1.0) / h_;
        std::size_t i = std::min(std::size_t(pos), n_ - 1);
        double t = pos - double(i);
        double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * val_[i] + (t3 - 2 * t2 + t) * der_[i] * h_ +
               (-2 * t3 + 3 * t2) * val_[i + 1] + (t3 - t2) * der_[i + 1] * h_;
    }

  private:
    SmoothStep() {
        val_.resize(n_ + 1);
        der_.resize(n_ + 1);
        val_[0] = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double a = -1.0 + h_ * i, b = a + h_;
            val_[i + 1] = val_[i] + integrate_gl(mollifier, a, b, 32);
        }
        const double z = val_[n_];
        for (std::size_t i = 0; i <= n_; ++i) {
            val_[i] /= z;
            der_[i] = mollifier(-1.0 + h_ * i) / z;
        }
        val_[n_] = 1.0;
    }

    static constexpr std::size_t n_ = 8192;
    static constexpr double h_ = 2.0 / double(n_);
    std::vector<double> val_, der_;
};

}  // namespace bump_detail

inline double smooth_step(double x) { return bump_detail::SmoothStep::instance()(x); }

// Smooth cutoff: exactly 1 on [-1,1], exactly 0 outside (-2,2), monotone in |x|.
inline double chi_cut(double x) {
    double a = std::abs(x);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return 1.0 - smooth_step(2.0 * a - 3.0);
}

struct Interval {
    double lo, hi;
};

struct BumpSpec {
    enum class Kind { psi, phi };
    Kind kind;
    std::vector<Interval> support;
    std::function<double(double)> eval;

    double operator()(double x) const { return eval(x); }
    bool is_psi() const { return kind == Kind::psi; }
};

// Annular profile psi = chi - chi(2 .), supported on [-2,-1/2] u [1/2,2];
// its dyadic dilates telescope to 1 away from the origin.
inline BumpSpec build_psi() {
    BumpSpec b;
    b.kind = BumpSpec::Kind::psi;
    b.support = {{-2.0, -0.5}, {0.5, 2.0}};
    b.eval = [](double e) { return chi_cut(e) - chi_cut(2.0 * e); };
    return b;
}

// Wide low-pass: 1 on [-2^l0, 2^l0], supported in [-2^(l0+1), 2^(l0+1)].
inline BumpSpec build_phi(int l0) {
    require(l0 >= 1, "build_phi: l0 >= 1");
    BumpSpec b;
    b.kind = BumpSpec::Kind::phi;
    double s = std::ldexp(1.0, l0 + 1);
    b.support = {{-s, s}};
    b.eval = [l0](double e) { return chi_cut(std::ldexp(e, -l0)); };
    return b;
}

// Narrow low-pass used inside the decomposition: supported in
// [-2^(-l0+1), 2^(-l0+1)].
inline BumpSpec build_phi_small(int l0) {
    require(l0 >= 1, "build_phi_small: l0 >= 1");
    BumpSpec b;
    b.kind = BumpSpec::Kind::phi;
    double s = std::ldexp(1.0, -l0 + 1);
    b.support = {{-s, s}};
    b.eval = [l0](double e) { return chi_cut(std::ldexp(e, l0)); };
    return b;
}

inline std::pair<BumpSpec, BumpSpec> psi_sign_split(const BumpSpec& psi) {
    require(psi.is_psi(), "psi_sign_split: psi-type profile required");
    BumpSpec plus, minus;
    plus.kind = minus.kind = BumpSpec::Kind::psi;
    for (const auto& iv : psi.support) {
        if (iv.hi > 0) plus.support.push_back({std::max(iv.lo, 0.0), iv.hi});
        if (iv.lo < 0) minus.support.push_back({iv.lo, std::min(iv.hi, 0.0)});
    }
    auto base = psi.eval;
    plus.eval = [base](double e) { return e > 0.0 ? base(e) : 0.0; };
    minus.eval = [base](double e) { return e < 0.0 ? base(e) : 0.0; };
    return {plus, minus};
}

// ---------------------------------------------------------------------------
// Paraproduct decomposition of 1 into psi-phi and psi-psi pieces.
//
// Every per-axis factor is chi(2^a eta) or chi(2^a eta) - chi(2^b eta),
// evaluated at eta = 2^(-k-off) xi_axis; sums over k telescope exactly.
// ---------------------------------------------------------------------------

struct AxisFactor {
    static constexpr int kNone = std::numeric_limits<int>::max();
    int chi_a = 0;
    int chi_b = kNone;  // kNone: plain chi(2^a .)
    int scale_offset = 0;

    bool annular() const { return chi_b != kNone; }

    double eval(double eta) const {
        double v = chi_cut(std::ldexp(eta, chi_a));
        if (annular()) v -= chi_cut(std::ldexp(eta, chi_b));
        return v;
    }

    // value of the factor at frequency xi and scale k
    double at_scale(double xi, int k) const { return eval(std::ldexp(xi, -(k + scale_offset))); }

    bool is_psi_type() const { return annular(); }
};

struct ProductTerm {
    std::vector<AxisFactor> factors;  // one per axis

    double at_scale(const std::vector<double>& xi, int k) const {
        double p = 1.0;
        for (std::size_t j = 0; j < factors.size(); ++j) {
            p *= factors[j].at_scale(xi[j], k);
            if (p == 0.0) return 0.0;
        }
        return p;
    }

    // k-range outside which the first annular factor vanishes at xi
    bool scale_range(const std::vector<double>& xi, int& kmin, int& kmax) const {
        for (std::size_t j = 0; j < factors.size(); ++j) {
            if (!factors[j].annular()) continue;
            double a = std::abs(xi[j]);
            if (a == 0.0) return false;
            double l = std::log2(a);
            kmin = int(std::ceil(l + factors[j].chi_a - 1.0)) - factors[j].scale_offset - 1;
            kmax = int(std::floor(l + factors[j].chi_b)) - factors[j].scale_offset + 1;
            return true;
        }
        return false;
    }
};

struct SymbolPiece {
    enum class Kind { psi_phi, psi_psi };
    enum class CaseTag { none, case2, case3 };

    Kind kind;
    CaseTag case_tag = CaseTag::none;
    std::vector<int> psi_axes;  // 0-based
    std::vector<ProductTerm> terms;
    int l0 = 0;

    // sum over all contributing scales at xi
    double symbol(const std::vector<double>& xi) const {
        KahanSum s;
        for (const auto& t : terms) {
            int kmin, kmax;
            if (!t.scale_range(xi, kmin, kmax)) continue;
            for (int k = kmin; k <= kmax; ++k) s.add(t.at_scale(xi, k));
        }
        return s.value();
    }

    // sum truncated to an explicit scale window
    double symbol(const std::vector<double>& xi, int kmin, int kmax) const {
        KahanSum s;
        for (const auto& t : terms)
            for (int k = kmin; k <= kmax; ++k) s.add(t.at_scale(xi, k));
        return s.value();
    }
};

// O(n^2) pieces whose symbols sum to 1 on R^n \ {coordinate hyperplanes}:
// n psi-phi pieces (one per dominant axis) and n(n-1)/2 merged psi-psi pairs.
inline std::vector<SymbolPiece> decompose_symbol(int n, int l0) {
    require(n >= 2, "decompose_symbol: n >= 2");
    require(l0 >= 1, "decompose_symbol: l0 >= 1");
    std::vector<SymbolPiece> pieces;

    auto tie_shift = [](int j, int i) { return j < i ? 1 : 0; };

    for (int i = 0; i < n; ++i) {
        SymbolPiece p;
        p.kind = SymbolPiece::Kind::psi_phi;
        p.case_tag = (i == n - 1) ? SymbolPiece::CaseTag::case2 : SymbolPiece::CaseTag::case3;
        p.psi_axes = {i};
        p.l0 = l0;
        ProductTerm t;
        t.factors.resize(n);
        for (int j = 0; j < n; ++j) {
            if (j == i)
                t.factors[j] = {0, 1, 0};
            else
                t.factors[j] = {l0, AxisFactor::kNone, 0};
        }
        p.terms.push_back(std::move(t));
        pieces.push_back(std::move(p));
    }

    // sub-term of the telescoped remainder of dominant axis i, annular slot j1
    auto sub_term = [&](int i, int j1) {
        ProductTerm t;
        t.factors.resize(n);
        t.factors[i] = {0, 1, 0};
        t.factors[j1] = {tie_shift(j1, i), l0, 0};
        for (int j = 0; j < n; ++j) {
            if (j == i || j == j1) continue;
            if (j < j1)
                t.factors[j] = {l0, AxisFactor::kNone, 0};
            else
                t.factors[j] = {tie_shift(j, i), AxisFactor::kNone, 0};
        }
        return t;
    };

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            SymbolPiece p;
            p.kind = SymbolPiece::Kind::psi_psi;
            p.psi_axes = {i, j};
            p.l0 = l0;
            p.terms.push_back(sub_term(i, j));
            p.terms.push_back(sub_term(j, i));
            pieces.push_back(std::move(p));
        }
    return pieces;
}

// Lacunary psi-psi shaped piece with the first axis run ell scales finer.
inline SymbolPiece make_lacunary_piece(int n, int ell) {
    require(n >= 2 && ell >= 1, "make_lacunary_piece: n >= 2, ell >= 1");
    SymbolPiece p;
    p.kind = SymbolPiece::Kind::psi_psi;
    p.psi_axes = {0, 1};
    p.l0 = ell;
    ProductTerm t;
    t.factors.resize(n);
    t.factors[0] = {0, 1, ell};
    t.factors[1] = {0, 1, 0};
    for (int j = 2; j < n; ++j) t.factors[j] = {0, AxisFactor::kNone, 0};
    p.terms.push_back(std::move(t));
    return p;
}

}  // namespace sxl
