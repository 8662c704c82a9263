#pragma once

#include <vector>

#include "simplexlab/common.hpp"

namespace sxl {

// Dense two-phase simplex for the tiny LPs used by the sector and threshold
// enumerations:  max c.x  s.t.  A x <= b,  x >= 0.
// Bland's rule throughout; problem sizes here are a few dozen cells.
struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

namespace lp_detail {

class Tableau {
  public:
    // columns: structural n, then m slacks, then artificials as needed
    Tableau(const std::vector<std::vector<double>>& a, const std::vector<double>& b, int n, int m)
        : m_(m), n_(n) {
        rows_.assign(m, std::vector<double>(n + m + 1, 0.0));
        basis_.resize(m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) rows_[i][j] = a[i][j];
            rows_[i][n + i] = 1.0;
            rows_[i].back() = b[i];
            basis_[i] = n + i;
            if (rows_[i].back() < 0.0) {
                for (auto& v : rows_[i]) v = -v;
                neg_.push_back(i);
            }
        }
    }

    bool needs_phase1() const { return !neg_.empty(); }

    // returns false when phase-1 cannot reach feasibility
    bool phase1() {
        int art0 = int(rows_[0].size()) - 1;
        for (int i : neg_) {
            for (auto& r : rows_) r.insert(r.end() - 1, 0.0);
            rows_[i][rows_[i].size() - 2] = 1.0;
            basis_[i] = int(rows_[i].size()) - 2;
        }
        std::vector<double> obj(rows_[0].size(), 0.0);
        for (std::size_t j = art0; j + 1 < obj.size(); ++j) obj[j] = -1.0;  // max -(sum art)
        auto z = run(obj);
        if (z < -1e-9) return false;
        // pivot remaining artificials out, then drop their columns
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < art0) continue;
            int piv = -1;
            for (int j = 0; j < art0; ++j)
                if (std::abs(rows_[i][j]) > 1e-11) { piv = j; break; }
            if (piv >= 0) {
                pivot(i, piv);
            } else {  // redundant row
                for (auto& v : rows_[i]) v = 0.0;
                basis_[i] = -1;
            }
        }
        for (auto& r : rows_) r.erase(r.begin() + art0, r.end() - 1);
        return true;
    }

    // maximize obj over current feasible tableau; returns objective value
    double run(std::vector<double> obj) {
        obj.resize(rows_[0].size(), 0.0);
        // reduced costs: eliminate basic columns from obj
        double z = 0.0;
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < 0) continue;
            double c = obj[basis_[i]];
            if (c == 0.0) continue;
            for (std::size_t j = 0; j < obj.size() - 1; ++j) obj[j] -= c * rows_[i][j];
            z += c * rows_[i].back();
        }
        for (int iter = 0; iter < 100000; ++iter) {
            int enter = -1;
            for (std::size_t j = 0; j + 1 < obj.size(); ++j)
                if (obj[j] > 1e-11) { enter = int(j); break; }  // Bland
            if (enter < 0) break;
            int leave = -1;
            double best = 0.0;
            for (int i = 0; i < m_; ++i) {
                if (rows_[i][enter] <= 1e-11) continue;
                double ratio = rows_[i].back() / rows_[i][enter];
                if (leave < 0 || ratio < best - 1e-13 ||
                    (ratio < best + 1e-13 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) { unbounded_ = true; break; }
            pivot(leave, enter);
            double c = obj[enter];
            for (std::size_t j = 0; j < obj.size() - 1; ++j) obj[j] -= c * rows_[leave][j];
            z += c * rows_[leave].back();
        }
        return z;
    }

    bool unbounded() const { return unbounded_; }

    std::vector<double> solution() const {
        std::vector<double> x(n_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= 0 && basis_[i] < n_) x[basis_[i]] = rows_[i].back();
        return x;
    }

  private:
    void pivot(int r, int c) {
        double p = rows_[r][c];
        for (auto& v : rows_[r]) v /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            double f = rows_[i][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < rows_[i].size(); ++j) rows_[i][j] -= f * rows_[r][j];
        }
        basis_[r] = c;
    }

    int m_, n_;
    std::vector<std::vector<double>> rows_;
    std::vector<int> basis_;
    std::vector<int> neg_;
    bool unbounded_ = false;
};

}  // namespace lp_detail

inline LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                         const std::vector<double>& c) {
    const int m = int(a.size());
    const int n = int(c.size());
    for (const auto& row : a) require(int(row.size()) == n, "solve_lp: ragged constraint matrix");
    lp_detail::Tableau t(a, b, n, m);
    LpResult res;
    if (t.needs_phase1() && !t.phase1()) {
        res.status = LpResult::Status::infeasible;
        return res;
    }
    std::vector<double> obj(c);
    obj.resize(n + m, 0.0);
    double z = t.run(obj);
    if (t.unbounded()) {
        res.status = LpResult::Status::unbounded;
        return res;
    }
    res.status = LpResult::Status::optimal;
    res.objective = z;
    res.x = t.solution();
    return res;
}

// Max-margin feasibility for strict sign systems:
// find x in [-1,1]^d maximizing t with sign_i * (row_i . x) >= t for all i.
// Realizable iff the optimum exceeds the margin delta.
struct MarginResult {
    bool feasible = false;
    double margin = 0.0;
    std::vector<double> witness;
};

inline MarginResult max_margin_witness(const std::vector<std::vector<double>>& rows,
                                       const std::vector<int>& signs, double delta = 1e-6) {
    const int d = int(rows.empty() ? 0 : rows[0].size());
    const int nv = d + 1;  // y_0..y_{d-1} in [0,2] (x = y - 1), then t
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        // -s*(row.(y-1)) + t <= 0
        std::vector<double> r(nv, 0.0);
        double rhs = 0.0;
        for (int j = 0; j < d; ++j) {
            r[j] = -double(signs[i]) * rows[i][j];
            rhs += -double(signs[i]) * rows[i][j];
        }
        r[d] = 1.0;
        a.push_back(std::move(r));
        b.push_back(rhs);
    }
    for (int j = 0; j < d; ++j) {
        std::vector<double> r(nv, 0.0);
        r[j] = 1.0;
        a.push_back(std::move(r));
        b.push_back(2.0);
    }
    {
        std::vector<double> r(nv, 0.0);
        r[d] = 1.0;
        a.push_back(std::move(r));
        b.push_back(10.0);
    }
    std::vector<double> c(nv, 0.0);
    c[d] = 1.0;
    LpResult lp = solve_lp(a, b, c);
    MarginResult out;
    if (lp.status != LpResult::Status::optimal) return out;
    out.margin = lp.objective;
    out.feasible = lp.objective > delta;
    out.witness.resize(d);
    for (int j = 0; j < d; ++j) out.witness[j] = lp.x[j] - 1.0;
    return out;
}

}  // namespace sxl
