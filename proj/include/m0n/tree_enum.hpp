#pragma once

// Tree corpora for exhaustive property checks.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "m0n/boundary.hpp"
#include "m0n/marked_tree.hpp"

namespace m0n {

/// All labelled trees on v vertices (Pruefer sequences); v^(v-2) of them.
inline std::vector<std::vector<MarkedTree::Edge>> labeled_trees(int v) {
    std::vector<std::vector<MarkedTree::Edge>> out;
    if (v <= 1) {
        out.push_back({});
        return out;
    }
    if (v == 2) {
        out.push_back({{0, 1}});
        return out;
    }
    std::vector<int> code(v - 2, 0);
    while (true) {
        std::vector<int> deg(v, 1);
        for (int c : code) ++deg[c];
        std::vector<MarkedTree::Edge> edges;
        for (int c : code) {
            int leaf = 0;
            while (deg[leaf] != 1) ++leaf;
            edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
            --deg[leaf];
            --deg[c];
        }
        int a = -1, b = -1;
        for (int k = 0; k < v; ++k)
            if (deg[k] == 1) (a < 0 ? a : b) = k;
        edges.emplace_back(a, b);
        std::sort(edges.begin(), edges.end());
        out.push_back(std::move(edges));
        int pos = 0;
        while (pos < v - 2 && ++code[pos] == v) code[pos++] = 0;
        if (pos == v - 2) break;
    }
    return out;
}

inline std::vector<std::string> default_vertex_names(int v) {
    std::vector<std::string> names;
    for (int k = 1; k <= v; ++k) names.push_back("v" + std::to_string(k));
    return names;
}

/// Canonical string of a tree whose vertices carry a count (AHU encoding, minimised over roots).
inline std::string shape_key(const MarkedTree& t) {
    const auto& adj = t.adjacency();
    auto encode = [&](auto&& self, int v, int parent) -> std::string {
        std::vector<std::string> kids;
        for (int w : adj[v])
            if (w != parent) kids.push_back(self(self, w, v));
        std::sort(kids.begin(), kids.end());
        std::string s = "(" + std::to_string(t.legs_at(v).size());
        for (const auto& k : kids) s += k;
        return s + ")";
    };
    std::string best;
    for (int r = 0; r < t.vertex_count(); ++r) {
        auto k = encode(encode, r, -1);
        if (best.empty() || k < best) best = k;
    }
    return best;
}

/// Shape corpus: every tree on <= max_vertices vertices, each vertex padded to three special
/// points with fresh marks, plus up to `max_extra` further marks spread over the vertices in every
/// possible way. One representative per isomorphism class.
inline std::vector<MarkedTree> small_tree_corpus(int max_vertices, int max_extra = 2) {
    std::vector<MarkedTree> out;
    std::set<std::string> seen;
    for (int v = 1; v <= max_vertices; ++v) {
        for (const auto& edges : labeled_trees(v)) {
            std::vector<int> deg(v, 0);
            for (auto [a, b] : edges) ++deg[a], ++deg[b];
            std::vector<int> extra(v, 0);
            auto emit = [&] {
                std::vector<Leg> legs;
                int next = 1;
                for (int x = 0; x < v; ++x) {
                    int count = std::max(0, 3 - deg[x]) + extra[x];
                    for (int k = 0; k < count; ++k) legs.push_back(Leg{{next++}, x});
                }
                if (next - 1 < 3) return;
                MarkedTree t(default_vertex_names(v), edges, std::move(legs));
                if (seen.insert(shape_key(t)).second) out.push_back(std::move(t));
            };
            auto rec = [&](auto&& self, int from, int left) -> void {
                emit();
                if (left == 0) return;
                for (int x = from; x < v; ++x) {
                    ++extra[x];
                    self(self, x, left - 1);
                    --extra[x];
                }
            };
            rec(rec, 0, max_extra);
        }
    }
    return out;
}

/// Splits of a stable tree: each edge as the canonical mark subset on one side.
inline std::vector<PointMask> tree_splits(const MarkedTree& t) {
    std::vector<PointMask> out;
    const int n = t.n();
    for (auto [a, b] : t.edges()) {
        PointMask m = 0;
        for (int mark : t.marks_on(t.side_of_edge(a, b))) m |= PointMask{1} << (mark - 1);
        out.push_back(BoundaryIndex(n, m).mask());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Every stable tree with marks 1..n up to isomorphism (one per boundary stratum of the moduli space).
inline std::vector<MarkedTree> stable_marked_trees(int n) {
    std::vector<MarkedTree> out;
    std::set<std::vector<PointMask>> seen;
    for (int v = 1; v <= std::max(1, n - 2); ++v) {
        for (const auto& edges : labeled_trees(v)) {
            std::vector<int> deg(v, 0);
            for (auto [a, b] : edges) ++deg[a], ++deg[b];
            int need = 0;
            for (int x = 0; x < v; ++x) need += std::max(0, 3 - deg[x]);
            if (need > n) continue;
            std::vector<int> count(v, 0), place(n, 0);
            auto rec = [&](auto&& self, int mark, int missing) -> void {
                if (missing > n - mark) return;
                if (mark == n) {
                    std::vector<Leg> legs;
                    for (int m = 0; m < n; ++m) legs.push_back(Leg{{m + 1}, place[m]});
                    MarkedTree t(default_vertex_names(v), edges, std::move(legs));
                    if (seen.insert(tree_splits(t)).second) out.push_back(std::move(t));
                    return;
                }
                for (int x = 0; x < v; ++x) {
                    place[mark] = x;
                    bool helps = count[x] + deg[x] < 3;
                    ++count[x];
                    self(self, mark + 1, missing - (helps ? 1 : 0));
                    --count[x];
                }
            };
            rec(rec, 0, need);
        }
    }
    return out;
}

}  // namespace m0n
