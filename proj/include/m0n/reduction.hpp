#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "m0n/marked_tree.hpp"
#include "m0n/rational.hpp"

namespace m0n {

class invalid_weights : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct WeightData {
    std::vector<Rational> weights;  // a_1..a_n, indexed by mark label - 1
    Rational gamma = 0;
    int d = 1;

    static WeightData uniform(int n, const Rational& a, const Rational& gamma = 0, int d = 1) {
        return WeightData{std::vector<Rational>(n, a), gamma, d};
    }

    Rational total() const {
        Rational s = 0;
        for (const auto& a : weights) s += a;
        return s;
    }

    const Rational& at(int mark) const {
        if (mark < 1 || mark > static_cast<int>(weights.size()))
            throw invalid_weights("no weight for mark " + std::to_string(mark));
        return weights[mark - 1];
    }

    Rational weight_of(const std::vector<int>& marks) const {
        Rational s = 0;
        for (int m : marks) s += at(m);
        return s;
    }

    void check_entries() const {
        for (const auto& a : weights)
            if (a <= 0 || a > 1) throw invalid_weights("weights must satisfy 0 < a_i <= 1, got " + to_string(a));
    }

    void check_hassett() const {
        check_entries();
        if (total() <= 2) throw invalid_weights("weight sum " + to_string(total()) + " is not > 2");
    }

    /// 0 <= gamma < 1, d >= 1 and (d-1)gamma + sum a_i = d+1.
    void check_veronese() const {
        check_entries();
        if (gamma >= 1) throw invalid_weights("gamma must be < 1, got " + to_string(gamma));
        if (gamma < 0) throw invalid_weights("gamma must be >= 0, got " + to_string(gamma));
        if (d < 1) throw invalid_weights("degree d must be >= 1");
        Rational lhs = Rational(d - 1) * gamma + total();
        if (lhs != d + 1)
            throw invalid_weights("normalization (d-1)gamma + sum a_i = d+1 fails: got " + to_string(lhs));
    }
};

struct Contraction {
    std::vector<std::string> vertices;
    std::string reason;
    int attachments = 0;     // incident edges of the contracted set
    std::vector<int> marks;  // marks carried by the contracted set
};

struct ReductionReport {
    MarkedTree result;
    std::vector<Contraction> contracted;
    std::map<std::string, int> sigma_values;  // Veronese only, keyed by input vertex id
    std::vector<std::string> notes;
};

/// Ampleness of omega + sum a_i x_i: every vertex has leg weight + edges > 2, and no point carries weight > 1.
inline bool validate_hassett_stable(const MarkedTree& t, const WeightData& a) {
    for (const auto& l : t.legs())
        if (a.weight_of(l.marks) > 1) return false;
    for (int v = 0; v < t.vertex_count(); ++v) {
        Rational w = t.degree(v);
        for (const Leg* l : t.legs_at(v)) w += a.weight_of(l->marks);
        if (w <= 2) return false;
    }
    return true;
}

namespace detail {

/// Remove `tail` and hang all its marks on `target` as one leg.
inline MarkedTree contract_into(const MarkedTree& t, const std::vector<int>& tail, int target) {
    auto in_tail = [&](int v) { return std::binary_search(tail.begin(), tail.end(), v); };
    std::vector<int> remap(t.vertex_count(), -1);
    std::vector<std::string> names;
    for (int v = 0; v < t.vertex_count(); ++v)
        if (!in_tail(v)) {
            remap[v] = static_cast<int>(names.size());
            names.push_back(t.name(v));
        }
    std::vector<MarkedTree::Edge> edges;
    for (auto [a, b] : t.edges())
        if (!in_tail(a) && !in_tail(b)) edges.emplace_back(remap[a], remap[b]);
    std::vector<Leg> legs;
    Leg merged;
    merged.vertex = remap[target];
    for (const auto& l : t.legs()) {
        if (in_tail(l.vertex))
            merged.marks.insert(merged.marks.end(), l.marks.begin(), l.marks.end());
        else
            legs.push_back(Leg{l.marks, remap[l.vertex]});
    }
    if (!merged.marks.empty()) legs.push_back(std::move(merged));
    return MarkedTree(std::move(names), std::move(edges), std::move(legs));
}

struct TailCandidate {
    std::vector<int> vertices;
    int attach = 0;
};

inline std::vector<TailCandidate> light_tails(const MarkedTree& t, const WeightData& a) {
    std::vector<TailCandidate> out;
    for (auto [x, y] : t.edges()) {
        for (auto [inner, outer] : {std::pair{x, y}, std::pair{y, x}}) {
            auto side = t.side_of_edge(inner, outer);
            if (a.weight_of(t.marks_on(side)) <= 1) out.push_back({side, outer});
        }
    }
    // canonical order: smallest vertex first, then the smaller tail
    std::sort(out.begin(), out.end(), [](const TailCandidate& p, const TailCandidate& q) {
        if (p.vertices.front() != q.vertices.front()) return p.vertices.front() < q.vertices.front();
        if (p.vertices.size() != q.vertices.size()) return p.vertices.size() < q.vertices.size();
        return p.vertices < q.vertices;
    });
    return out;
}

/// Hassett reduction where `pick` chooses which light tail to contract next.
inline ReductionReport hassett_reduce_with(const MarkedTree& t, const WeightData& a,
                                           const std::function<std::size_t(std::size_t)>& pick) {
    a.check_hassett();
    if (t.n() > static_cast<int>(a.weights.size()))
        throw invalid_weights("tree has more marks than weights");
    if (!t.is_stable()) throw invalid_tree("hassett_reduce expects an ordinary stable curve");
    ReductionReport report{t, {}, {}, {}};
    while (true) {
        auto tails = light_tails(report.result, a);
        if (tails.empty()) break;
        const auto& c = tails.at(pick(tails.size()));
        Contraction rec;
        for (int v : c.vertices) rec.vertices.push_back(report.result.name(v));
        rec.marks = report.result.marks_on(c.vertices);
        rec.attachments = 1;
        rec.reason = "tail of weight " + to_string(a.weight_of(rec.marks)) + " <= 1 contracted to a point of multiplicity " +
                     std::to_string(rec.marks.size()) + " on " + report.result.name(c.attach);
        report.result = contract_into(report.result, c.vertices, c.attach);
        report.contracted.push_back(std::move(rec));
    }
    return report;
}

}  // namespace detail

/// Contract tails of weight sum <= 1 onto their attaching point, smallest vertex id first.
inline ReductionReport hassett_reduce(const MarkedTree& t, const WeightData& a) {
    return detail::hassett_reduce_with(t, a, [](std::size_t) { return std::size_t{0}; });
}

/// min{max{ceil((w - 1)/(1 - gamma)), 0}, d}
inline int sigma_value(const Rational& weight_sum, const WeightData& a) {
    if (a.gamma >= 1) throw invalid_weights("gamma must be < 1, got " + to_string(a.gamma));
    Rational q = (weight_sum - 1) / (1 - a.gamma);
    long c = ceil_to_long(q);
    return static_cast<int>(std::min<long>(std::max<long>(c, 0), a.d));
}

/// sigma of every vertex, telescoping from `root`, which must have degree <= 1.
inline std::vector<int> vertex_sigmas(const MarkedTree& t, const WeightData& a, int root) {
    if (a.gamma >= 1) throw invalid_weights("gamma must be < 1, got " + to_string(a.gamma));
    const int nv = t.vertex_count();
    if (root < 0 || root >= nv || t.degree(root) > 1) throw invalid_tree("sigma root must be a leaf vertex");
    std::vector<int> out(nv, 0);
    if (nv == 1) {
        out[0] = sigma_value(a.weight_of(t.marks_on({0})), a);
        return out;
    }
    auto adj = t.adjacency();
    std::vector<int> parent(nv, -1), order;
    std::vector<int> stack = {root};
    parent[root] = root;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int w : adj[v])
            if (parent[w] < 0) {
                parent[w] = v;
                stack.push_back(w);
            }
    }
    // below[v]: weight of the subtree under v, a tail for every v != root
    std::vector<Rational> below(nv);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        below[v] += a.weight_of(t.marks_on({v}));
        if (v != root) below[parent[v]] += below[v];
    }
    for (int v : order) {
        if (v == root) {
            out[v] = sigma_value(a.weight_of(t.marks_on({v})), a);
            continue;
        }
        int s = sigma_value(below[v], a);
        for (int w : adj[v])
            if (w != parent[v]) s -= sigma_value(below[w], a);
        out[v] = s;
    }
    return out;
}

inline int default_sigma_root(const MarkedTree& t) {
    for (int v = 0; v < t.vertex_count(); ++v)
        if (t.degree(v) <= 1) return v;
    throw invalid_tree("tree without leaves");
}

inline std::vector<int> vertex_sigmas(const MarkedTree& t, const WeightData& a) {
    return vertex_sigmas(t, a, default_sigma_root(t));
}

/// sigma of a connected vertex set: the formula on tails and on the whole curve, the telescoped sum otherwise.
inline int sigma(const MarkedTree& t, std::vector<int> component, const WeightData& a) {
    if (a.gamma >= 1) throw invalid_weights("gamma must be < 1, got " + to_string(a.gamma));
    std::sort(component.begin(), component.end());
    component.erase(std::unique(component.begin(), component.end()), component.end());
    if (!t.is_connected_subset(component)) throw invalid_tree("sigma needs a connected vertex set");
    if (static_cast<int>(component.size()) == t.vertex_count() || t.is_tail(component))
        return sigma_value(a.weight_of(t.marks_on(component)), a);
    auto per_vertex = vertex_sigmas(t, a);
    int s = 0;
    for (int v : component) s += per_vertex[v];
    return s;
}

/// The ceiling in sigma is off its jumps: (w - 1)/(1 - gamma) is never an integer for the
/// weight w of a tail of t. Telescoped sigmas only add up to d when this holds.
inline bool general_for(const MarkedTree& t, const WeightData& a) {
    for (auto [x, y] : t.edges())
        for (auto [inner, outer] : {std::pair{x, y}, std::pair{y, x}}) {
            Rational r = (a.weight_of(t.marks_on(t.side_of_edge(inner, outer))) - 1) / (1 - a.gamma);
            if (is_integer(r)) return false;
        }
    return true;
}

/// Contract every component with sigma = 0 into a neighbour, recording k-fold points.
inline ReductionReport veronese_reduce(const MarkedTree& t, const WeightData& a) {
    a.check_veronese();
    if (t.n() > static_cast<int>(a.weights.size()))
        throw invalid_weights("tree has more marks than weights");
    if (!t.is_stable()) throw invalid_tree("veronese_reduce expects a stable curve");
    ReductionReport report{t, {}, {}, {}};
    auto sig = vertex_sigmas(t, a);
    for (int v = 0; v < t.vertex_count(); ++v) report.sigma_values[t.name(v)] = sig[v];
    if (!general_for(t, a))
        report.notes.push_back("weights are not general for this curve: some tail sits on a jump of the sigma ceiling");

    std::map<std::string, int> current_sigma = report.sigma_values;
    while (true) {
        const MarkedTree& cur = report.result;
        int victim = -1;
        for (int v = 0; v < cur.vertex_count() && victim < 0; ++v)
            if (current_sigma.at(cur.name(v)) == 0 && cur.vertex_count() > 1) victim = v;
        if (victim < 0) break;
        auto adj = cur.adjacency();
        int target = adj[victim].front();
        for (int w : adj[victim])
            if (current_sigma.at(cur.name(w)) > 0) {
                target = w;
                break;
            }
        Contraction rec;
        rec.vertices = {cur.name(victim)};
        rec.attachments = cur.degree(victim);
        rec.marks = cur.marks_on({victim});
        std::string carrying = rec.marks.empty() ? "" : " carrying " + std::to_string(rec.marks.size()) + " marked point(s)";
        if (rec.attachments >= 3)
            rec.reason = "spine with " + std::to_string(rec.attachments) + " attachments contracted to a " +
                         std::to_string(rec.attachments) + "-fold point" + carrying;
        else if (rec.attachments == 2)
            rec.reason = "bridge with 2 attachments contracted to a node" + carrying;
        else
            rec.reason = "tail contracted to a smooth point" + carrying;
        // merge victim into target: reattach its edges and legs
        std::vector<std::string> names;
        std::vector<int> remap(cur.vertex_count());
        for (int v = 0; v < cur.vertex_count(); ++v) {
            if (v == victim) continue;
            remap[v] = static_cast<int>(names.size());
            names.push_back(cur.name(v));
        }
        remap[victim] = remap[target];
        std::vector<MarkedTree::Edge> edges;
        for (auto [x, y] : cur.edges()) {
            if ((x == victim && y == target) || (y == victim && x == target)) continue;
            edges.emplace_back(remap[x], remap[y]);
        }
        std::vector<Leg> legs;
        for (const auto& l : cur.legs()) legs.push_back(Leg{l.marks, remap[l.vertex]});
        current_sigma.erase(cur.name(victim));
        report.result = MarkedTree(std::move(names), std::move(edges), std::move(legs));
        report.contracted.push_back(std::move(rec));
    }
    return report;
}

}  // namespace m0n
