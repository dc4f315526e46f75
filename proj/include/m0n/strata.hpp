#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "m0n/boundary.hpp"
#include "m0n/fcurve.hpp"

namespace m0n {

/// i pairwise disjoint 2-subsets of [n]: a component of the intersection of i distinct B_{|I|=2} divisors.
struct Stratum {
    int n = 0;
    std::vector<std::pair<int, int>> pairs;

    std::vector<BoundaryIndex> components() const {
        std::vector<BoundaryIndex> out;
        for (auto [a, b] : pairs) out.push_back(BoundaryIndex::of(n, {a, b}));
        return out;
    }

    /// With three pairs the leftover points form the fourth block of an F-curve.
    std::optional<FCurve> fcurve() const {
        if (pairs.size() != 3 || n < 7) return std::nullopt;
        PointMask used = 0;
        std::array<PointMask, 4> blocks{};
        for (std::size_t k = 0; k < 3; ++k) {
            blocks[k] = mask_of({pairs[k].first, pairs[k].second});
            used |= blocks[k];
        }
        blocks[3] = full_mask(n) & ~used;
        return FCurve(n, blocks);
    }

    std::string name() const {
        std::string s;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (k) s += " ";
            s += "{" + std::to_string(pairs[k].first) + "," + std::to_string(pairs[k].second) + "}";
        }
        return s;
    }
};

/// Lexicographic list of all strata; empty once 2i > n.
inline std::vector<Stratum> enumerate_strata(int n, int i) {
    check_point_count(n);
    std::vector<Stratum> out;
    if (i < 0 || 2 * i > n) return out;
    std::vector<std::pair<int, int>> current;
    std::vector<bool> used(n + 1, false);
    auto rec = [&](auto&& self, int first) -> void {
        if (static_cast<int>(current.size()) == i) {
            out.push_back(Stratum{n, current});
            return;
        }
        for (int a = first; a <= n; ++a) {
            if (used[a]) continue;
            used[a] = true;
            for (int b = a + 1; b <= n; ++b) {
                if (used[b]) continue;
                used[b] = true;
                current.emplace_back(a, b);
                self(self, a + 1);
                current.pop_back();
                used[b] = false;
            }
            used[a] = false;
        }
    };
    rec(rec, 1);
    return out;
}

/// n! / (2^i i! (n-2i)!)
inline unsigned long long strata_count(int n, int i) {
    if (i < 0 || 2 * i > n) return 0;
    unsigned long long num = 1;
    for (int k = n; k > n - 2 * i; --k) num *= static_cast<unsigned long long>(k);
    for (int k = 1; k <= i; ++k) num /= 2ULL * static_cast<unsigned long long>(k);
    return num;
}

}  // namespace m0n
