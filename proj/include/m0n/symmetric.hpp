#pragma once

#include "m0n/boundary.hpp"
#include "m0n/divisor.hpp"
#include "m0n/fcurve.hpp"
#include "m0n/rational.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace m0n {

/// S_n-invariant class in the basis B_2, ..., B_{floor(n/2)}.
class SymmetricDivisor {
public:
    SymmetricDivisor() = default;
    explicit SymmetricDivisor(int n) : n_(n), coeffs_(n / 2 - 1) { check_point_count(n); }
    SymmetricDivisor(int n, std::vector<Rational> coeffs) : SymmetricDivisor(n) {
        if (coeffs.size() != coeffs_.size())
            throw std::invalid_argument("symmetric divisor for n=" + std::to_string(n) + " needs " +
                                        std::to_string(coeffs_.size()) + " coordinates");
        coeffs_ = std::move(coeffs);
    }

    /// The symmetric boundary B_i (2 <= i <= n-2; B_i = B_{n-i}).
    static SymmetricDivisor boundary(int n, int i) {
        SymmetricDivisor s(n);
        if (i < 2 || i > n - 2) throw std::invalid_argument("symmetric boundary index out of range");
        s.coeffs_[std::min(i, n - i) - 2] = 1;
        return s;
    }

    int n() const { return n_; }
    int dimension() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    /// Coefficient of B_i, 2 <= i <= floor(n/2).
    const Rational& operator[](int i) const { return coeffs_.at(i - 2); }
    Rational& operator[](int i) { return coeffs_.at(i - 2); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    SymmetricDivisor& operator+=(const SymmetricDivisor& o) {
        require_same_n(n_, o.n_);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    SymmetricDivisor& operator-=(const SymmetricDivisor& o) {
        require_same_n(n_, o.n_);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    SymmetricDivisor& operator*=(const Rational& s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }
    friend SymmetricDivisor operator+(SymmetricDivisor a, const SymmetricDivisor& b) { return a += b; }
    friend SymmetricDivisor operator-(SymmetricDivisor a, const SymmetricDivisor& b) { return a -= b; }
    friend SymmetricDivisor operator*(const Rational& s, SymmetricDivisor a) { return a *= s; }
    friend bool operator==(const SymmetricDivisor& a, const SymmetricDivisor& b) {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }

private:
    int n_ = 0;
    std::vector<Rational> coeffs_;
};

/// Unfolds B_i into the sum of its canonical boundary components.
inline DivisorClass expand_symmetric(const SymmetricDivisor& s) {
    DivisorClass d(s.n());
    for (const auto& b : all_boundaries(s.n())) {
        const Rational& c = s[b.size()];
        if (c != 0) d.add(b, c);
    }
    return d;
}

/// (K, psi) in symmetric coordinates:
/// K = sum_i (i(n-i)/(n-1) - 2) B_i and psi = K + 2B.
inline std::pair<SymmetricDivisor, SymmetricDivisor> canonical_and_psi(int n) {
    SymmetricDivisor k(n), psi(n);
    for (int i = 2; i <= n / 2; ++i) {
        k[i] = make_rational(static_cast<long>(i) * (n - i), n - 1) - 2;
        psi[i] = k[i] + 2;
    }
    return {k, psi};
}

inline SymmetricDivisor canonical_class(int n) { return canonical_and_psi(n).first; }
inline SymmetricDivisor psi_class(int n) { return canonical_and_psi(n).second; }

/// Curve classes used to test symmetric divisors.
class CurveClass {
public:
    struct FType {
        std::array<int, 4> sizes;
    };
    struct Sweeping {
        int j;
    };
    struct CurveA {};
    using Kind = std::variant<FType, Sweeping, CurveA>;

    static CurveClass fcurve(int n, std::array<int, 4> sizes) {
        std::sort(sizes.begin(), sizes.end());
        int total = 0;
        for (int s : sizes) {
            if (s < 1) throw std::invalid_argument("F-curve type parts must be positive");
            total += s;
        }
        if (total != n) throw std::invalid_argument("F-curve type parts must sum to n");
        return CurveClass(n, FType{sizes});
    }
    static CurveClass sweeping(int n, int j) {
        if (j < 3 || j > n - 1) throw std::invalid_argument("sweeping curve C_j needs 3 <= j <= n-1");
        return CurveClass(n, Sweeping{j});
    }
    /// The two-tail curve A; only defined on M̄_{0,7}.
    static CurveClass curve_a(int n) {
        if (n != 7) throw std::invalid_argument("curve A is only defined for n = 7");
        return CurveClass(n, CurveA{});
    }

    int n() const { return n_; }
    const Kind& kind() const { return kind_; }

    std::string name() const {
        if (auto f = std::get_if<FType>(&kind_)) {
            return "F" + std::to_string(f->sizes[0]) + "," + std::to_string(f->sizes[1]) + "," +
                   std::to_string(f->sizes[2]) + "," + std::to_string(f->sizes[3]);
        }
        if (auto c = std::get_if<Sweeping>(&kind_)) return "C" + std::to_string(c->j);
        return "A";
    }

private:
    CurveClass(int n, Kind k) : n_(n), kind_(k) { check_point_count(n); }
    int n_;
    Kind kind_;
};

namespace detail {

/// C_j . (sum of all boundary components of pure size i), 2 <= i <= n-2.
inline long sweeping_pure_size(int j, int i) {
    if (i == j - 1) return j;
    if (i == j) return -(j - 2);
    return 0;
}

/// Stored (B_2, B_3) pairings of curve A on M̄_{0,7}.
inline constexpr std::array<long, 2> kCurveABoundary = {-3, 4};

}  // namespace detail

/// Intersection number C . S for a symmetric divisor S.
inline Rational pair_curve(const CurveClass& curve, const SymmetricDivisor& s) {
    require_same_n(curve.n(), s.n());
    const int n = s.n();
    return std::visit(
        [&](const auto& k) -> Rational {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, CurveClass::FType>) {
                return pair_fcurve(FCurve::of_type(n, k.sizes), expand_symmetric(s));
            } else if constexpr (std::is_same_v<T, CurveClass::Sweeping>) {
                Rational total = 0;
                for (int i = 2; i <= n / 2; ++i) {
                    long v = detail::sweeping_pure_size(k.j, i);
                    if (n - i != i) v += detail::sweeping_pure_size(k.j, n - i);
                    total += s[i] * v;
                }
                return total;
            } else {
                return s[2] * detail::kCurveABoundary[0] + s[3] * detail::kCurveABoundary[1];
            }
        },
        curve.kind());
}

/// Intersection table on M̄_{0,7}: curves F_{1,1,1,4}, F_{1,1,2,3}, F_{1,2,2,2}, C_4, C_5, C_6, A
/// against psi, K, B_2, B_3.
struct IntersectionTable {
    std::vector<std::string> rows;
    std::vector<std::string> columns;
    std::vector<std::vector<Rational>> entries;
};

inline std::vector<CurveClass> table_curves_n7() {
    return {CurveClass::fcurve(7, {1, 1, 1, 4}), CurveClass::fcurve(7, {1, 1, 2, 3}),
            CurveClass::fcurve(7, {1, 2, 2, 2}), CurveClass::sweeping(7, 4),
            CurveClass::sweeping(7, 5),          CurveClass::sweeping(7, 6),
            CurveClass::curve_a(7)};
}

inline IntersectionTable intersection_table(int n = 7) {
    if (n != 7) throw std::invalid_argument("intersection table is defined for n = 7 only");
    auto [k, psi] = canonical_and_psi(7);
    const std::vector<SymmetricDivisor> cols = {psi, k, SymmetricDivisor::boundary(7, 2),
                                                SymmetricDivisor::boundary(7, 3)};
    IntersectionTable t;
    t.columns = {"psi", "K", "B2", "B3"};
    for (const auto& c : table_curves_n7()) {
        t.rows.push_back(c.name());
        std::vector<Rational> row;
        for (const auto& d : cols) row.push_back(pair_curve(c, d));
        t.entries.push_back(std::move(row));
    }
    return t;
}

/// Symmetric nefness: nonnegative against every F-curve type.
inline bool nef_check(const SymmetricDivisor& s) {
    for (const auto& type : fcurve_types(s.n()))
        if (pair_curve(CurveClass::fcurve(s.n(), type), s) < 0) return false;
    return true;
}

}  // namespace m0n
