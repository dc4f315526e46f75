#pragma once

#include "m0n/boundary.hpp"
#include "m0n/divisor.hpp"
#include "m0n/rational.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

namespace m0n {

/// F-curve class F_{I1,I2,I3,I4} attached to a partition of [n] into four nonempty blocks.
class FCurve {
public:
    FCurve(int n, std::array<PointMask, 4> blocks) : n_(n) {
        check_point_count(n);
        PointMask seen = 0;
        for (PointMask b : blocks) {
            if (b == 0) throw std::invalid_argument("F-curve block is empty");
            if (seen & b) throw std::invalid_argument("F-curve blocks overlap");
            seen |= b;
        }
        if (seen != full_mask(n)) throw std::invalid_argument("F-curve blocks do not cover [n]");
        // Blocks are unordered; store them sorted by smallest element.
        std::sort(blocks.begin(), blocks.end(), [](PointMask a, PointMask b) { return (a & (~a + 1)) < (b & (~b + 1)); });
        blocks_ = blocks;
    }

    /// Representative partition for a symmetric type (a1,a2,a3,a4): consecutive runs of points.
    static FCurve of_type(int n, std::array<int, 4> sizes) {
        int total = 0;
        for (int s : sizes) {
            if (s < 1) throw std::invalid_argument("F-curve type parts must be positive");
            total += s;
        }
        if (total != n) throw std::invalid_argument("F-curve type parts must sum to n");
        std::array<PointMask, 4> blocks{};
        int next = 0;
        for (int k = 0; k < 4; ++k) {
            for (int j = 0; j < sizes[k]; ++j) blocks[k] |= PointMask{1} << next++;
        }
        return FCurve(n, blocks);
    }

    int n() const { return n_; }
    const std::array<PointMask, 4>& blocks() const { return blocks_; }

    /// Sorted block sizes, the symmetric type of the curve.
    std::array<int, 4> type() const {
        std::array<int, 4> t{};
        for (int k = 0; k < 4; ++k) t[k] = mask_size(blocks_[k]);
        std::sort(t.begin(), t.end());
        return t;
    }

    std::string name() const {
        std::string s = "F";
        for (PointMask b : blocks_) s += mask_to_string(b);
        return s;
    }

    /// Pairing with a single canonical boundary class; each class is counted once.
    int pair_boundary(const BoundaryIndex& b) const {
        require_same_n(n_, b.n());
        const PointMask j = b.mask();
        const PointMask jc = b.complement();
        for (int x = 0; x < 4; ++x) {
            if (blocks_[x] == j || blocks_[x] == jc) return -1;
            for (int y = x + 1; y < 4; ++y) {
                PointMask u = blocks_[x] | blocks_[y];
                if (u == j || u == jc) return 1;
            }
        }
        return 0;
    }

    int pair_psi(int i) const {
        PointMask bit = PointMask{1} << (i - 1);
        for (PointMask b : blocks_)
            if (b == bit) return 1;
        return 0;
    }

    FCurve permuted(const Permutation& p) const {
        std::array<PointMask, 4> out{};
        for (int k = 0; k < 4; ++k) out[k] = p.apply(blocks_[k]);
        return FCurve(n_, out);
    }

    friend bool operator==(const FCurve& a, const FCurve& b) { return a.n_ == b.n_ && a.blocks_ == b.blocks_; }

private:
    int n_;
    std::array<PointMask, 4> blocks_{};
};

/// Intersection number F . D.
inline Rational pair_fcurve(const FCurve& f, const DivisorClass& d) {
    require_same_n(f.n(), d.n());
    Rational total = 0;
    for (const auto& [b, c] : d.boundary_coeffs()) {
        int v = f.pair_boundary(b);
        if (v != 0) total += c * v;
    }
    for (const auto& [i, c] : d.psi_coeffs())
        if (f.pair_psi(i) != 0) total += c;
    return total;
}

/// Every F-curve of M̄_{0,n}: the set partitions of [n] into exactly four blocks.
inline std::vector<FCurve> all_fcurves(int n) {
    check_point_count(n);
    std::vector<FCurve> out;
    // Restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[0..i-1]).
    std::vector<int> label(n, 0);
    auto rec = [&](auto&& self, int pos, int used) -> void {
        if (pos == n) {
            if (used != 4) return;
            std::array<PointMask, 4> blocks{};
            for (int i = 0; i < n; ++i) blocks[label[i]] |= PointMask{1} << i;
            out.emplace_back(n, blocks);
            return;
        }
        if (4 - used > n - pos) return;
        for (int l = 0; l <= std::min(used, 3); ++l) {
            label[pos] = l;
            self(self, pos + 1, l == used ? used + 1 : used);
        }
    };
    rec(rec, 0, 0);
    return out;
}

/// Uniformly random assignment of points to four nonempty blocks.
template <class Rng>
FCurve random_fcurve(int n, Rng& rng) {
    std::uniform_int_distribution<int> pick(0, 3);
    while (true) {
        std::array<PointMask, 4> blocks{};
        for (int i = 0; i < n; ++i) blocks[pick(rng)] |= PointMask{1} << i;
        if (std::all_of(blocks.begin(), blocks.end(), [](PointMask b) { return b != 0; })) return FCurve(n, blocks);
    }
}

/// Partitions of the integer n into four positive parts, nondecreasing.
inline std::vector<std::array<int, 4>> fcurve_types(int n) {
    std::vector<std::array<int, 4>> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b)
            for (int c = b; c <= n; ++c) {
                int d = n - a - b - c;
                if (d >= c) out.push_back({a, b, c, d});
            }
    return out;
}

}  // namespace m0n
