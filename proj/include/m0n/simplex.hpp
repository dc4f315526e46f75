#pragma once

#include "m0n/linalg.hpp"
#include "m0n/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace m0n {

struct FeasibilityResult {
    bool feasible = false;
    RationalVector x;  // a vertex of {Ax = b, x >= 0} when feasible
    std::size_t pivots = 0;
};

/// Phase-one simplex over Q for {x : A x = b, x >= 0}.
///
/// One artificial variable per row; entering and leaving variables follow
/// Bland's smallest-index rule, so the pivot sequence is deterministic and
/// cannot cycle.
class ExactSimplex {
public:
    ExactSimplex(const std::vector<RationalVector>& a, const RationalVector& b) : rows_(a.size()) {
        if (b.size() != rows_) throw std::invalid_argument("simplex: rhs length mismatch");
        vars_ = rows_ == 0 ? 0 : a.front().size();
        width_ = vars_ + rows_ + 1;
        tab_.assign(rows_, RationalVector(width_));
        basis_.resize(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (a[r].size() != vars_) throw std::invalid_argument("simplex: ragged constraint matrix");
            const int flip = b[r] < 0 ? -1 : 1;
            for (std::size_t j = 0; j < vars_; ++j) tab_[r][j] = a[r][j] * flip;
            tab_[r][vars_ + r] = 1;
            tab_[r][width_ - 1] = b[r] * flip;
            basis_[r] = vars_ + r;
        }
        // Phase-one objective: minimize the sum of artificials, as reduced costs.
        obj_.assign(width_, Rational(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0; j < vars_; ++j) obj_[j] -= tab_[r][j];
        for (std::size_t r = 0; r < rows_; ++r) obj_[width_ - 1] -= tab_[r][width_ - 1];
    }

    FeasibilityResult solve(std::size_t max_pivots = 1'000'000) {
        FeasibilityResult res;
        while (true) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j + 1 < width_; ++j)
                if (obj_[j] < 0) {
                    enter = j;
                    break;
                }
            if (!enter) break;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t r = 0; r < rows_; ++r) {
                const Rational& coef = tab_[r][*enter];
                if (coef <= 0) continue;
                Rational ratio = tab_[r][width_ - 1] / coef;
                if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (!leave) break;  // phase-one objective is bounded below by 0; cannot happen
            pivot(*leave, *enter);
            if (++res.pivots > max_pivots) throw std::runtime_error("simplex pivot limit exceeded");
        }
        // obj_ rhs holds minus the artificial sum.
        res.feasible = obj_[width_ - 1] == 0;
        if (res.feasible) {
            res.x.assign(vars_, Rational(0));
            for (std::size_t r = 0; r < rows_; ++r)
                if (basis_[r] < vars_) res.x[basis_[r]] = tab_[r][width_ - 1];
        }
        return res;
    }

private:
    void pivot(std::size_t pr, std::size_t pc) {
        RationalVector& prow = tab_[pr];
        const Rational inv = 1 / prow[pc];
        for (auto& v : prow)
            if (v != 0) v *= inv;
        auto eliminate = [&](RationalVector& row) {
            const Rational f = row[pc];
            if (f == 0) return;
            for (std::size_t j = 0; j < width_; ++j)
                if (prow[j] != 0) row[j] -= f * prow[j];
        };
        for (std::size_t r = 0; r < rows_; ++r)
            if (r != pr) eliminate(tab_[r]);
        eliminate(obj_);
        basis_[pr] = pc;
    }

    std::size_t rows_;
    std::size_t vars_ = 0;
    std::size_t width_ = 0;
    std::vector<RationalVector> tab_;
    RationalVector obj_;
    std::vector<std::size_t> basis_;
};

inline FeasibilityResult find_feasible_point(const std::vector<RationalVector>& a, const RationalVector& b) {
    return ExactSimplex(a, b).solve();
}

}  // namespace m0n
