#pragma once

#include "m0n/boundary.hpp"
#include "m0n/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace m0n {

class mismatched_n : public std::invalid_argument {
public:
    mismatched_n(int a, int b)
        : std::invalid_argument("mismatched number of marked points: " + std::to_string(a) + " vs " +
                                std::to_string(b)) {}
};

inline void require_same_n(int a, int b) {
    if (a != b) throw mismatched_n(a, b);
}

/// Sparse exact-rational class in N^1(M̄_{0,n}) with boundary and individual psi coordinates.
///
/// Zero coefficients are never stored, so structural equality is coordinate equality.
class DivisorClass {
public:
    using BoundaryMap = std::map<BoundaryIndex, Rational>;
    using PsiMap = std::map<int, Rational>;

    DivisorClass() = default;
    explicit DivisorClass(int n) : n_(n) { check_point_count(n); }

    static DivisorClass boundary(const BoundaryIndex& b, const Rational& c = 1) {
        DivisorClass d(b.n());
        d.add(b, c);
        return d;
    }
    static DivisorClass psi_i(int n, int i, const Rational& c = 1) {
        DivisorClass d(n);
        d.add_psi(i, c);
        return d;
    }

    int n() const { return n_; }
    const BoundaryMap& boundary_coeffs() const { return boundary_; }
    const PsiMap& psi_coeffs() const { return psi_; }

    Rational coeff(const BoundaryIndex& b) const {
        auto it = boundary_.find(b);
        return it == boundary_.end() ? Rational(0) : it->second;
    }
    Rational psi_coeff(int i) const {
        auto it = psi_.find(i);
        return it == psi_.end() ? Rational(0) : it->second;
    }

    bool is_zero() const { return boundary_.empty() && psi_.empty(); }
    bool has_psi() const { return !psi_.empty(); }

    DivisorClass& add(const BoundaryIndex& b, const Rational& c) {
        require_same_n(n_, b.n());
        if (c == 0) return *this;
        auto [it, inserted] = boundary_.try_emplace(b, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) boundary_.erase(it);
        }
        return *this;
    }

    DivisorClass& add_psi(int i, const Rational& c) {
        if (i < 1 || i > n_) throw std::invalid_argument("psi index out of range: " + std::to_string(i));
        if (c == 0) return *this;
        auto [it, inserted] = psi_.try_emplace(i, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) psi_.erase(it);
        }
        return *this;
    }

    DivisorClass& operator+=(const DivisorClass& o) {
        require_same_n(n_, o.n_);
        for (const auto& [b, c] : o.boundary_) add(b, c);
        for (const auto& [i, c] : o.psi_) add_psi(i, c);
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& o) {
        require_same_n(n_, o.n_);
        for (const auto& [b, c] : o.boundary_) add(b, -c);
        for (const auto& [i, c] : o.psi_) add_psi(i, -c);
        return *this;
    }
    DivisorClass& operator*=(const Rational& s) {
        if (s == 0) {
            boundary_.clear();
            psi_.clear();
            return *this;
        }
        for (auto& [b, c] : boundary_) c *= s;
        for (auto& [i, c] : psi_) c *= s;
        return *this;
    }

    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
    friend DivisorClass operator-(DivisorClass a) { return a *= Rational(-1); }

    /// Coordinate-wise equality (not equality in N^1; see class_equal).
    friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
        return a.n_ == b.n_ && a.boundary_ == b.boundary_ && a.psi_ == b.psi_;
    }

    /// Image under a permutation of the marked points.
    DivisorClass permuted(const Permutation& p) const {
        require_same_n(n_, p.n());
        DivisorClass out(n_);
        for (const auto& [b, c] : boundary_) out.add(p.apply(b), c);
        for (const auto& [i, c] : psi_) out.add_psi(p(i), c);
        return out;
    }

private:
    int n_ = 0;
    BoundaryMap boundary_;
    PsiMap psi_;
};

}  // namespace m0n
