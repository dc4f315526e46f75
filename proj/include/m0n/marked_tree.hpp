#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace m0n {

/// A marked point of a pointed curve. Collided points carry all their labels;
/// multiplicity is the number of labels.
struct Leg {
    std::vector<int> marks;  // sorted, nonempty
    int vertex = 0;

    int label() const { return marks.front(); }
    int multiplicity() const { return static_cast<int>(marks.size()); }
    friend bool operator==(const Leg&, const Leg&) = default;
};

class invalid_tree : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dual graph of a nodal curve of arithmetic genus 0: a tree of components with marked legs.
class MarkedTree {
public:
    using Edge = std::pair<int, int>;

    MarkedTree() = default;

    /// Throws invalid_tree unless the graph is a tree and every leg sits on a vertex.
    MarkedTree(std::vector<std::string> vertices, std::vector<Edge> edges, std::vector<Leg> legs)
        : names_(std::move(vertices)), edges_(std::move(edges)), legs_(std::move(legs)) {
        normalize();
        build_adjacency();
        validate();
    }

    int vertex_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& name(int v) const { return names_.at(v); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Leg>& legs() const { return legs_; }

    int vertex_index(std::string_view id) const {
        for (int v = 0; v < vertex_count(); ++v)
            if (names_[v] == id) return v;
        throw invalid_tree("unknown vertex '" + std::string(id) + "'");
    }

    /// Total marking multiplicity.
    int n() const {
        int total = 0;
        for (const auto& l : legs_) total += l.multiplicity();
        return total;
    }

    const std::vector<std::vector<int>>& adjacency() const { return adj_; }

    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

    std::vector<const Leg*> legs_at(int v) const {
        std::vector<const Leg*> out;
        for (const auto& l : legs_)
            if (l.vertex == v) out.push_back(&l);
        return out;
    }

    /// Number of legs plus incident edges at v (collided points count once).
    int special_points(int v) const { return static_cast<int>(legs_at(v).size()) + degree(v); }

    /// Vertices on a's side of the edge {a, b}: the tail hanging off that edge.
    std::vector<int> side_of_edge(int a, int b) const {
        const auto& adj = adj_;
        std::vector<int> out;
        std::vector<bool> seen(names_.size(), false);
        std::vector<int> stack = {a};
        seen[a] = seen[b] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out.push_back(v);
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// All marks (with multiplicity) carried by a vertex set.
    std::vector<int> marks_on(const std::vector<int>& vertices) const {
        std::vector<int> out;
        for (const auto& l : legs_)
            if (std::binary_search(vertices.begin(), vertices.end(), l.vertex))
                out.insert(out.end(), l.marks.begin(), l.marks.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    bool is_connected_subset(const std::vector<int>& vertices) const {
        if (vertices.empty()) return false;
        std::set<int> in(vertices.begin(), vertices.end());
        const auto& adj = adj_;
        std::set<int> seen = {vertices.front()};
        std::vector<int> stack = {vertices.front()};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (in.count(w) && seen.insert(w).second) stack.push_back(w);
        }
        return seen.size() == in.size();
    }

    /// Edges with exactly one endpoint in the (sorted) vertex set.
    int boundary_edge_count(const std::vector<int>& vertices) const {
        int k = 0;
        for (auto [a, b] : edges_) {
            bool ia = std::binary_search(vertices.begin(), vertices.end(), a);
            bool ib = std::binary_search(vertices.begin(), vertices.end(), b);
            k += ia != ib;
        }
        return k;
    }

    /// A tail: a proper connected subtree attached to the rest by exactly one edge.
    bool is_tail(const std::vector<int>& vertices) const {
        return static_cast<int>(vertices.size()) < vertex_count() && is_connected_subset(vertices) &&
               boundary_edge_count(vertices) == 1;
    }

    /// Stable for weights (1,...,1): every component has at least three special points.
    bool is_stable() const {
        for (int v = 0; v < vertex_count(); ++v)
            if (special_points(v) < 3) return false;
        return true;
    }

    friend bool operator==(const MarkedTree&, const MarkedTree&) = default;

private:
    void build_adjacency() {
        adj_.assign(names_.size(), {});
        for (auto [a, b] : edges_) {
            if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count()) throw invalid_tree("bad edge");
            adj_[a].push_back(b);
            adj_[b].push_back(a);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    void normalize() {
        for (auto& e : edges_)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(edges_.begin(), edges_.end());
        for (auto& l : legs_) std::sort(l.marks.begin(), l.marks.end());
        std::sort(legs_.begin(), legs_.end(), [](const Leg& a, const Leg& b) {
            return a.marks != b.marks ? a.marks < b.marks : a.vertex < b.vertex;
        });
    }

    void validate() const {
        const int nv = vertex_count();
        if (nv == 0) throw invalid_tree("tree has no vertices");
        std::set<std::string> unique(names_.begin(), names_.end());
        if (static_cast<int>(unique.size()) != nv) throw invalid_tree("duplicate vertex id");
        if (static_cast<int>(edges_.size()) != nv - 1)
            throw invalid_tree("a tree on " + std::to_string(nv) + " vertices needs " + std::to_string(nv - 1) +
                               " edges, got " + std::to_string(edges_.size()));
        for (auto [a, b] : edges_) {
            if (a < 0 || b >= nv || a == b) throw invalid_tree("bad edge");
        }
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw invalid_tree("repeated edge");
        std::vector<int> all(nv);
        std::iota(all.begin(), all.end(), 0);
        if (!is_connected_subset(all)) throw invalid_tree("graph is not connected");
        std::map<int, int> owner;
        for (std::size_t k = 0; k < legs_.size(); ++k) {
            const auto& l = legs_[k];
            if (l.marks.empty()) throw invalid_tree("leg without marks");
            if (l.vertex < 0 || l.vertex >= nv) throw invalid_tree("leg attached to unknown vertex");
            for (int m : l.marks) {
                if (m < 1) throw invalid_tree("mark labels must be positive");
                auto [it, inserted] = owner.emplace(m, static_cast<int>(k));
                if (!inserted && it->second != static_cast<int>(k))
                    throw invalid_tree("mark " + std::to_string(m) + " appears on two legs");
            }
        }
    }

    std::vector<std::string> names_;
    std::vector<Edge> edges_;
    std::vector<Leg> legs_;
    std::vector<std::vector<int>> adj_;
};

namespace detail {

inline std::string format_leg(const Leg& l) {
    bool all_same = std::all_of(l.marks.begin(), l.marks.end(), [&](int m) { return m == l.marks.front(); });
    if (all_same) {
        std::string s = std::to_string(l.marks.front());
        if (l.multiplicity() > 1) s += "*" + std::to_string(l.multiplicity());
        return s;
    }
    std::string s;
    for (std::size_t k = 0; k < l.marks.size(); ++k) {
        if (k) s += "+";
        s += std::to_string(l.marks[k]);
    }
    return s;
}

class TreeParser {
public:
    explicit TreeParser(std::string_view s) : s_(s) {}

    MarkedTree parse() {
        ws();
        expect_word("tree");
        ws();
        expect('{');
        std::vector<std::string> names;
        std::vector<Leg> legs;
        std::vector<std::pair<std::string, std::string>> edge_names;
        while (true) {
            ws();
            if (peek('}')) {
                ++pos_;
                break;
            }
            std::string id = ident();
            ws();
            expect(':');
            ws();
            if (id == "edges") {
                while (peek('(')) {
                    ++pos_;
                    ws();
                    std::string a = ident();
                    ws();
                    expect(',');
                    ws();
                    std::string b = ident();
                    ws();
                    expect(')');
                    edge_names.emplace_back(a, b);
                    ws();
                    if (peek(',')) {
                        ++pos_;
                        ws();
                    }
                }
            } else {
                int v = static_cast<int>(names.size());
                names.push_back(id);
                expect('[');
                ws();
                while (!peek(']')) {
                    legs.push_back(leg(v));
                    ws();
                    if (peek(',')) {
                        ++pos_;
                        ws();
                    } else if (!peek(']')) {
                        fail("expected ',' or ']'");
                    }
                }
                ++pos_;
            }
            ws();
            if (peek(';')) ++pos_;
        }
        ws();
        if (pos_ != s_.size()) fail("trailing characters after tree");
        auto index = [&](const std::string& id) {
            for (std::size_t k = 0; k < names.size(); ++k)
                if (names[k] == id) return static_cast<int>(k);
            throw invalid_tree("edge names unknown vertex '" + id + "'");
        };
        std::vector<MarkedTree::Edge> edges;
        for (const auto& [a, b] : edge_names) edges.emplace_back(index(a), index(b));
        return MarkedTree(std::move(names), std::move(edges), std::move(legs));
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw invalid_tree("tree syntax: " + what + " at position " + std::to_string(pos_));
    }
    void ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    void expect_word(std::string_view w) {
        if (s_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
        pos_ += w.size();
    }
    std::string ident() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected identifier");
        return std::string(s_.substr(start, pos_ - start));
    }
    int integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_ || pos_ - start > 6) fail("expected mark label");
        return std::stoi(std::string(s_.substr(start, pos_ - start)));
    }
    Leg leg(int v) {
        Leg l;
        l.vertex = v;
        l.marks.push_back(integer());
        ws();
        if (peek('*')) {
            ++pos_;
            ws();
            int k = integer();
            if (k < 1) fail("multiplicity must be positive");
            l.marks.assign(k, l.marks.front());
        } else {
            while (peek('+')) {
                ++pos_;
                ws();
                l.marks.push_back(integer());
                ws();
            }
        }
        return l;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// `tree{ v1: [1,2,3]; v2: [4,5,6,7]; edges: (v1,v2) }`; legs may be `l*k` or collided `1+2+3`.
inline MarkedTree parse_tree(std::string_view text) { return detail::TreeParser(text).parse(); }

inline std::string format_tree(const MarkedTree& t) {
    std::ostringstream os;
    os << "tree{ ";
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (v) os << "; ";
        os << t.name(v) << ": [";
        bool first = true;
        for (const Leg* l : t.legs_at(v)) {
            if (!first) os << ",";
            os << detail::format_leg(*l);
            first = false;
        }
        os << "]";
    }
    if (!t.edges().empty()) {
        os << "; edges: ";
        for (std::size_t k = 0; k < t.edges().size(); ++k) {
            if (k) os << ", ";
            os << "(" << t.name(t.edges()[k].first) << "," << t.name(t.edges()[k].second) << ")";
        }
    }
    os << " }";
    return os.str();
}

}  // namespace m0n
