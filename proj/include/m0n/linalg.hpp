#pragma once

#include "m0n/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace m0n {

using RationalVector = std::vector<Rational>;

/// Incrementally maintained reduced row echelon form of a row space over Q.
///
/// Rows are kept sorted by pivot column, every pivot is 1, and every pivot
/// column is zero in all other rows. The RREF of a row space is unique, so
/// the stored rows do not depend on insertion order.
class Echelon {
public:
    explicit Echelon(std::size_t cols = 0) : cols_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<RationalVector>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool is_pivot(std::size_t col) const { return std::binary_search(pivots_.begin(), pivots_.end(), col); }

    /// Zeroes every pivot coordinate of v by subtracting multiples of stored rows.
    void reduce(RationalVector& v) const {
        check(v);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rational f = v[pivots_[r]];
            if (f == 0) continue;
            const RationalVector& row = rows_[r];
            for (std::size_t c = pivots_[r]; c < cols_; ++c)
                if (row[c] != 0) v[c] -= f * row[c];
        }
    }

    /// Adds v to the row space; returns false when v was already in it.
    bool insert(RationalVector v) {
        reduce(v);
        std::size_t p = 0;
        while (p < cols_ && v[p] == 0) ++p;
        if (p == cols_) return false;
        const Rational lead = v[p];
        for (std::size_t c = p; c < cols_; ++c)
            if (v[c] != 0) v[c] /= lead;
        for (auto& row : rows_) {
            const Rational f = row[p];
            if (f == 0) continue;
            for (std::size_t c = p; c < cols_; ++c)
                if (v[c] != 0) row[c] -= f * v[c];
        }
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(v));
        return true;
    }

private:
    void check(const RationalVector& v) const {
        if (v.size() != cols_) throw std::invalid_argument("vector length does not match echelon width");
    }

    std::size_t cols_;
    std::vector<RationalVector> rows_;
    std::vector<std::size_t> pivots_;
};

/// Exact rank of a dense rational matrix given as rows.
inline std::size_t exact_rank(const std::vector<RationalVector>& rows) {
    if (rows.empty()) return 0;
    Echelon e(rows.front().size());
    for (const auto& r : rows) e.insert(r);
    return e.rank();
}

}  // namespace m0n
