#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace m0n {

/// Largest number of marked points supported by the bitmask encoding.
inline constexpr int kMaxPoints = 24;

/// Subset of [n] = {1,...,n} as a bitmask; bit (i-1) encodes element i.
using PointMask = std::uint32_t;

class invalid_boundary : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void check_point_count(int n, int min_n = 4) {
    if (n < min_n || n > kMaxPoints)
        throw std::invalid_argument("number of marked points out of range: " + std::to_string(n));
}

inline PointMask full_mask(int n) { return n >= 32 ? ~PointMask{0} : ((PointMask{1} << n) - 1); }

inline int mask_size(PointMask m) { return std::popcount(m); }

inline PointMask mask_of(std::initializer_list<int> elems) {
    PointMask m = 0;
    for (int e : elems) m |= PointMask{1} << (e - 1);
    return m;
}

inline std::vector<int> mask_elements(PointMask m) {
    std::vector<int> out;
    for (int i = 0; m != 0; ++i, m >>= 1)
        if (m & 1u) out.push_back(i + 1);
    return out;
}

inline std::string mask_to_string(PointMask m) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int e : mask_elements(m)) {
        if (!first) os << ',';
        os << e;
        first = false;
    }
    os << '}';
    return os.str();
}

/// Pivot/display order on subsets: smaller sets first, then lexicographic on sorted elements.
inline bool mask_order_less(PointMask a, PointMask b) {
    int sa = mask_size(a), sb = mask_size(b);
    if (sa != sb) return sa < sb;
    if (a == b) return false;
    PointMask diff = a ^ b;
    PointMask lowest = diff & (~diff + 1);
    return (a & lowest) != 0;
}

/// Canonical name of a boundary divisor class B_I = B_{I^c} on M̄_{0,n}.
///
/// The stored subset is the representative of {I, I^c} with fewer elements;
/// at |I| = n/2 the representative containing 1 is kept.
class BoundaryIndex {
public:
    BoundaryIndex() = default;

    /// Canonicalizes `subset`; throws invalid_boundary unless 2 <= |subset| <= n-2.
    BoundaryIndex(int n, PointMask subset) : n_(n) {
        check_point_count(n);
        if ((subset & ~full_mask(n)) != 0)
            throw invalid_boundary("boundary subset has elements outside [n]");
        int k = mask_size(subset);
        if (k < 2 || k > n - 2)
            throw invalid_boundary("boundary subset " + mask_to_string(subset) + " has size " +
                                   std::to_string(k) + ", need 2.." + std::to_string(n - 2));
        PointMask comp = full_mask(n) ^ subset;
        if (2 * k > n || (2 * k == n && (subset & 1u) == 0)) subset = comp;
        mask_ = subset;
    }

    static BoundaryIndex from_elements(int n, std::span<const int> elems) {
        PointMask m = 0;
        for (int e : elems) {
            if (e < 1 || e > n)
                throw invalid_boundary("boundary element " + std::to_string(e) + " outside [1," +
                                       std::to_string(n) + "]");
            PointMask bit = PointMask{1} << (e - 1);
            if (m & bit) throw invalid_boundary("repeated boundary element " + std::to_string(e));
            m |= bit;
        }
        return BoundaryIndex(n, m);
    }

    static BoundaryIndex of(int n, std::initializer_list<int> elems) {
        std::vector<int> v(elems);
        return from_elements(n, v);
    }

    int n() const { return n_; }
    PointMask mask() const { return mask_; }
    PointMask complement() const { return full_mask(n_) ^ mask_; }
    int size() const { return mask_size(mask_); }
    std::vector<int> elements() const { return mask_elements(mask_); }
    bool contains(int i) const { return (mask_ >> (i - 1)) & 1u; }

    /// "B{1,4}"
    std::string name() const { return "B" + mask_to_string(mask_); }

    friend bool operator==(const BoundaryIndex& a, const BoundaryIndex& b) {
        return a.n_ == b.n_ && a.mask_ == b.mask_;
    }
    friend bool operator<(const BoundaryIndex& a, const BoundaryIndex& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return mask_order_less(a.mask_, b.mask_);
    }

private:
    int n_ = 0;
    PointMask mask_ = 0;
};

inline BoundaryIndex canonical_boundary(int n, PointMask subset) { return BoundaryIndex(n, subset); }

inline BoundaryIndex canonical_boundary(int n, std::span<const int> subset) {
    return BoundaryIndex::from_elements(n, subset);
}

/// All canonical boundary classes for n, sorted in pivot order.
inline std::vector<BoundaryIndex> all_boundaries(int n) {
    check_point_count(n);
    std::vector<BoundaryIndex> out;
    PointMask full = full_mask(n);
    for (PointMask m = 1; m < full; ++m) {
        int k = mask_size(m);
        if (k < 2 || k > n - 2) continue;
        if (2 * k > n || (2 * k == n && (m & 1u) == 0)) continue;
        out.emplace_back(n, m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Canonical classes whose smaller side has exactly `size` elements (2 <= size <= n/2).
inline std::vector<BoundaryIndex> boundaries_of_size(int n, int size) {
    std::vector<BoundaryIndex> out;
    for (const auto& b : all_boundaries(n))
        if (b.size() == size) out.push_back(b);
    return out;
}

/// A permutation of [n]; image[i-1] is the image of i.
class Permutation {
public:
    explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
        std::vector<bool> seen(image_.size() + 1, false);
        for (int v : image_) {
            if (v < 1 || v > static_cast<int>(image_.size()) || seen[v])
                throw std::invalid_argument("not a permutation");
            seen[v] = true;
        }
    }
    static Permutation identity(int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i + 1;
        return Permutation(std::move(v));
    }

    int n() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_.at(i - 1); }
    const std::vector<int>& image() const { return image_; }

    PointMask apply(PointMask m) const {
        PointMask out = 0;
        for (int i = 0; m != 0; ++i, m >>= 1)
            if (m & 1u) out |= PointMask{1} << (image_[i] - 1);
        return out;
    }
    BoundaryIndex apply(const BoundaryIndex& b) const { return BoundaryIndex(b.n(), apply(b.mask())); }

    Permutation inverse() const {
        std::vector<int> inv(image_.size());
        for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i] - 1] = static_cast<int>(i) + 1;
        return Permutation(std::move(inv));
    }

private:
    std::vector<int> image_;
};

}  // namespace m0n

template <>
struct std::hash<m0n::BoundaryIndex> {
    std::size_t operator()(const m0n::BoundaryIndex& b) const noexcept {
        return (static_cast<std::size_t>(b.n()) << 32) ^ b.mask();
    }
};
