#include "m0n/marked_tree.hpp"
#include "m0n/reduction.hpp"
#include "m0n/strata.hpp"
#include "m0n/tree_enum.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <sstream>

using namespace m0n;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

const char* kFigure2 = "tree{ tail: [1,2,3]; spine: [4,5,6,7]; edges: (tail,spine) }";
const char* kChain = "tree{ C1: [1,2]; C2: [3]; C3: [4,5,6,7]; edges: (C1,C2), (C2,C3) }";
const char* kComb = "tree{ C1: [1,2]; C2: [3,4]; C3: [5,6]; C4: [7]; edges: (C1,C4), (C2,C4), (C3,C4) }";

WeightData example43() { return WeightData::uniform(7, q(4, 7), 0, 3); }

std::vector<WeightData> hassett_weights(int n) {
    std::vector<WeightData> out;
    for (long k : {1, 2, 3, 4}) {
        auto a = WeightData::uniform(n, q(1, k));
        if (a.total() > 2) out.push_back(a);
    }
    WeightData mixed;
    for (int i = 0; i < n; ++i) mixed.weights.push_back(i % 2 == 0 ? q(1, 2) : q(1, 3));
    if (mixed.total() > 2) out.push_back(mixed);
    WeightData heavy;
    for (int i = 0; i < n; ++i) heavy.weights.push_back(i == 0 ? q(1) : q(3, 2 * n));
    if (heavy.total() > 2) out.push_back(heavy);
    return out;
}

// Normalized (d-1)gamma + sum a = d+1 with 2 < sum a <= d+1 and every a_i < 1.
std::vector<WeightData> veronese_weights(int n) {
    std::vector<WeightData> out;
    for (int d = 2; d <= 4; ++d) {
        std::vector<Rational> totals = {Rational(d + 1), Rational(d + 3, 2), 2 + Rational(3 * (d - 1), 5),
                                      d + 1 - Rational(1, 11)};
        for (Rational total : totals) {
            total.canonicalize();
            Rational a = total / n;
            if (a >= 1 || total <= 2) continue;
            WeightData w = WeightData::uniform(n, a, (Rational(d + 1) - total) / (d - 1), d);
            w.gamma.canonicalize();
            out.push_back(w);
            WeightData p = w;
            p.weights[0] += q(1, 97);
            p.weights[1] -= q(1, 97);
            if (p.weights[0] < 1) out.push_back(p);
        }
    }
    return out;
}

std::vector<int> sigmas_from(const MarkedTree& t, const WeightData& a, int root) { return vertex_sigmas(t, a, root); }

}  // namespace

// ---- tree format ----

TEST(MarkedTree, ParsePrintRoundTrip) {
    for (const char* text : {kFigure2, kChain, kComb, "tree{ v1: [1,2,3,4,5,6,7] }",
                             "tree{ a: [1+2+3,4]; b: [5*3,6]; edges: (a,b) }"}) {
        auto t = parse_tree(text);
        EXPECT_EQ(format_tree(t), text);
        EXPECT_EQ(parse_tree(format_tree(t)), t);
    }
}

TEST(MarkedTree, MultiplicityAndCounts) {
    auto t = parse_tree("tree{ a: [1+2+3, 4]; b: [5*3, 6]; edges: (a,b) }");
    EXPECT_EQ(t.n(), 8);
    EXPECT_EQ(t.legs().size(), 4u);
    EXPECT_EQ(t.special_points(0), 3);
    auto fig = parse_tree(kFigure2);
    EXPECT_EQ(fig.n(), 7);
    EXPECT_TRUE(fig.is_stable());
}

TEST(MarkedTree, RejectsMalformedInput) {
    EXPECT_THROW(parse_tree("tree{ a: [1]; b: [2]; c: [3]; edges: (a,b) }"), invalid_tree);          // disconnected
    EXPECT_THROW(parse_tree("tree{ a: [1]; b: [2]; edges: (a,b), (b,a) }"), invalid_tree);           // cycle
    EXPECT_THROW(parse_tree("tree{ a: [1,2]; b: [2,3]; edges: (a,b) }"), invalid_tree);              // mark twice
    EXPECT_THROW(parse_tree("tree{ a: [1,2]; edges: (a,z) }"), invalid_tree);                        // unknown vertex
    EXPECT_THROW(parse_tree("tree{ a: [1,2 }"), invalid_tree);                                       // syntax
    EXPECT_THROW(parse_tree("tree{ a: [1]; a: [2]; edges: (a,a) }"), invalid_tree);                  // duplicate id
    EXPECT_THROW(parse_tree("tree{ a: [1] } junk"), invalid_tree);
}

// ---- Hassett ----

TEST(Hassett, StabilityExamples) {
    auto smooth = parse_tree("tree{ v: [1,2,3,4,5,6,7] }");
    EXPECT_TRUE(validate_hassett_stable(smooth, WeightData::uniform(7, 1)));
    EXPECT_FALSE(validate_hassett_stable(parse_tree(kFigure2), WeightData::uniform(7, q(1, 3))));
    auto collided = parse_tree("tree{ v: [1*4, 5, 6, 7] }");
    EXPECT_FALSE(validate_hassett_stable(collided, WeightData::uniform(7, q(1, 3))));
}

TEST(Hassett, Figure2ContractsTheTail) {
    auto r = hassett_reduce(parse_tree(kFigure2), WeightData::uniform(7, q(1, 3)));
    ASSERT_EQ(r.result.vertex_count(), 1);
    EXPECT_EQ(r.result.name(0), "spine");
    ASSERT_EQ(r.contracted.size(), 1u);
    EXPECT_EQ(r.contracted[0].vertices, std::vector<std::string>{"tail"});
    bool found = false;
    for (const auto& l : r.result.legs())
        if (l.multiplicity() == 3) {
            EXPECT_EQ(l.marks, (std::vector<int>{1, 2, 3}));
            found = true;
        }
    EXPECT_TRUE(found);
    EXPECT_EQ(format_tree(r.result), "tree{ spine: [1+2+3,4,5,6,7] }");
    EXPECT_TRUE(validate_hassett_stable(r.result, WeightData::uniform(7, q(1, 3))));
}

TEST(Hassett, UnitWeightsAreIdentity) {
    for (const char* text : {kFigure2, kChain, kComb}) {
        auto t = parse_tree(text);
        auto r = hassett_reduce(t, WeightData::uniform(7, 1));
        EXPECT_EQ(r.result, t);
        EXPECT_TRUE(r.contracted.empty());
    }
}

TEST(Hassett, ChainContractsBothEnds) {
    auto t = parse_tree("tree{ v1: [1,2]; v2: [3,4,5]; v3: [6,7]; edges: (v1,v2), (v2,v3) }");
    auto a = WeightData::uniform(7, q(1, 3));
    auto r = hassett_reduce(t, a);
    EXPECT_EQ(r.contracted.size(), 2u);
    EXPECT_EQ(format_tree(r.result), "tree{ v2: [1+2,3,4,5,6+7] }");
    EXPECT_TRUE(validate_hassett_stable(r.result, a));
}

TEST(Hassett, RejectsBadWeights) {
    auto t = parse_tree(kFigure2);
    EXPECT_THROW(hassett_reduce(t, WeightData::uniform(7, q(2, 7))), invalid_weights);  // sum exactly 2
    EXPECT_THROW(hassett_reduce(t, WeightData::uniform(7, q(3, 2))), invalid_weights);  // a_i > 1
    EXPECT_THROW(hassett_reduce(t, WeightData::uniform(6, 1)), invalid_weights);        // missing weight
}

// ---- sigma and Veronese ----

TEST(Sigma, FormulaExamples) {
    auto a = example43();
    EXPECT_EQ(sigma_value(q(8, 7), a), 1);   // two marks
    EXPECT_EQ(sigma_value(q(12, 7), a), 1);  // three marks
    EXPECT_EQ(sigma_value(0, a), 0);         // no marks: clamped
    EXPECT_EQ(sigma_value(4, a), 3);         // whole curve: clamped at d
    WeightData bad = a;
    bad.gamma = 1;
    EXPECT_THROW(sigma_value(1, bad), invalid_weights);
}

TEST(Sigma, ChainMiddleIsZero) {
    auto t = parse_tree(kChain);
    auto a = example43();
    EXPECT_EQ(sigma(t, {t.vertex_index("C1"), t.vertex_index("C2")}, a), 1);
    EXPECT_EQ(sigma(t, {t.vertex_index("C2")}, a), 0);
    EXPECT_EQ(sigma(t, {t.vertex_index("C3")}, a), 2);
}

TEST(Veronese, ChainContractsOnlyTheMiddle) {
    auto r = veronese_reduce(parse_tree(kChain), example43());
    EXPECT_EQ(r.sigma_values, (std::map<std::string, int>{{"C1", 1}, {"C2", 0}, {"C3", 2}}));
    ASSERT_EQ(r.contracted.size(), 1u);
    EXPECT_EQ(r.contracted[0].vertices, std::vector<std::string>{"C2"});
    EXPECT_EQ(r.contracted[0].attachments, 2);
    EXPECT_EQ(r.result.vertex_count(), 2);
    EXPECT_EQ(r.result.n(), 7);
}

TEST(Veronese, CombSpineBecomesTriplePoint) {
    auto r = veronese_reduce(parse_tree(kComb), example43());
    EXPECT_EQ(r.sigma_values, (std::map<std::string, int>{{"C1", 1}, {"C2", 1}, {"C3", 1}, {"C4", 0}}));
    ASSERT_EQ(r.contracted.size(), 1u);
    EXPECT_EQ(r.contracted[0].vertices, std::vector<std::string>{"C4"});
    EXPECT_EQ(r.contracted[0].attachments, 3);
    EXPECT_EQ(r.contracted[0].marks, std::vector<int>{7});
    EXPECT_NE(r.contracted[0].reason.find("spine with 3 attachments"), std::string::npos);
    EXPECT_EQ(r.result.vertex_count(), 3);
}

TEST(Veronese, SmoothCurveIsIdentity) {
    auto t = parse_tree("tree{ v1: [1,2,3,4,5,6,7] }");
    auto r = veronese_reduce(t, example43());
    EXPECT_EQ(r.result, t);
    EXPECT_EQ(r.sigma_values.at("v1"), 3);
}

TEST(Veronese, RejectsUnnormalizedWeights) {
    auto t = parse_tree(kComb);
    EXPECT_THROW(veronese_reduce(t, WeightData::uniform(7, q(1, 2), 0, 3)), invalid_weights);
    EXPECT_THROW(veronese_reduce(t, WeightData::uniform(7, q(4, 7), 1, 3)), invalid_weights);
}

// Off the general locus the telescoping breaks: both tails sit on a jump of the ceiling.
TEST(Sigma, NonGeneralWeightsLoseDegree) {
    auto t = parse_tree("tree{ v1: [1,2]; v2: [3,4]; edges: (v1,v2) }");
    auto a = WeightData::uniform(4, 1, 0, 3);
    EXPECT_FALSE(general_for(t, a));
    auto s = vertex_sigmas(t, a);
    EXPECT_EQ(s[0] + s[1], 2);  // not d = 3
    EXPECT_EQ(sigma(t, {0, 1}, a), 3);
    EXPECT_FALSE(veronese_reduce(t, a).notes.empty());
    EXPECT_TRUE(general_for(parse_tree(kComb), example43()));
    EXPECT_TRUE(veronese_reduce(parse_tree(kComb), example43()).notes.empty());
}

// ---- strata ----

TEST(Strata, PaperCounts) {
    EXPECT_EQ(enumerate_strata(7, 3).size(), 105u);
    EXPECT_EQ(enumerate_strata(7, 4).size(), 0u);
    EXPECT_EQ(enumerate_strata(6, 3).size(), 15u);
}

TEST(Strata, ClosedFormMatchesBruteForce) {
    for (int n = 4; n <= 10; ++n) {
        for (int i = 1; i <= n / 2; ++i) {
            // brute force: subsets of the C(n,2) pairs of size i that are pairwise disjoint
            std::vector<std::pair<int, int>> pairs;
            for (int a = 1; a <= n; ++a)
                for (int b = a + 1; b <= n; ++b) pairs.emplace_back(a, b);
            unsigned long long brute = 0;
            auto rec = [&](auto&& self, std::size_t start, int left, unsigned used) -> void {
                if (left == 0) {
                    ++brute;
                    return;
                }
                for (std::size_t k = start; k < pairs.size(); ++k) {
                    unsigned bits = (1u << pairs[k].first) | (1u << pairs[k].second);
                    if (used & bits) continue;
                    self(self, k + 1, left - 1, used | bits);
                }
            };
            rec(rec, 0, i, 0);
            EXPECT_EQ(strata_count(n, i), brute) << n << " " << i;
            EXPECT_EQ(enumerate_strata(n, i).size(), brute) << n << " " << i;
        }
    }
}

TEST(Strata, ThreePairsInSevenAreF1222Curves) {
    std::set<std::string> names;
    for (const auto& s : enumerate_strata(7, 3)) {
        auto f = s.fcurve();
        ASSERT_TRUE(f.has_value());
        EXPECT_EQ(f->type(), (std::array<int, 4>{1, 2, 2, 2}));
        names.insert(f->name());
        for (const auto& b : s.components()) EXPECT_EQ(b.size(), 2);
    }
    EXPECT_EQ(names.size(), 105u);
}

// ---- corpus properties ----

TEST(TreeEnum, CorpusCoversAllShapes) {
    auto corpus = small_tree_corpus(6);
    std::set<int> sizes;
    for (const auto& t : corpus) {
        EXPECT_TRUE(t.is_stable());
        sizes.insert(t.vertex_count());
    }
    EXPECT_EQ(sizes, (std::set<int>{1, 2, 3, 4, 5, 6}));
    // unlabelled trees on 1..6 vertices: 1, 1, 1, 2, 3, 6
    std::set<std::string> shapes;
    for (int v = 1; v <= 6; ++v)
        for (const auto& e : labeled_trees(v)) {
            std::vector<Leg> none;
            shapes.insert(shape_key(MarkedTree(default_vertex_names(v), e, none)));
        }
    EXPECT_EQ(shapes.size(), 14u);
}

TEST(TreeEnum, CayleyAndStrataCounts) {
    EXPECT_EQ(labeled_trees(5).size(), 125u);
    EXPECT_EQ(labeled_trees(6).size(), 1296u);
    // boundary strata of the moduli space for n = 4..7
    EXPECT_EQ(stable_marked_trees(4).size(), 4u);
    EXPECT_EQ(stable_marked_trees(5).size(), 26u);
    EXPECT_EQ(stable_marked_trees(6).size(), 236u);
    EXPECT_EQ(stable_marked_trees(7).size(), 2752u);
}

TEST(CurveGraphProperties, HassettIdempotentOrderIndependentConserving) {
    std::mt19937 rng(7);
    std::size_t runs = 0;
    for (const auto& t : small_tree_corpus(6)) {
        for (const auto& a : hassett_weights(t.n())) {
            auto r = hassett_reduce(t, a);
            ASSERT_TRUE(validate_hassett_stable(r.result, a)) << format_tree(t);
            EXPECT_EQ(r.result.n(), t.n());
            EXPECT_EQ(hassett_reduce(r.result, a).result, r.result) << format_tree(t);
            auto last = detail::hassett_reduce_with(t, a, [](std::size_t k) { return k - 1; });
            EXPECT_EQ(last.result, r.result) << format_tree(t);
            for (int trial = 0; trial < 8; ++trial) {
                auto shuffled = detail::hassett_reduce_with(t, a, [&](std::size_t k) {
                    return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
                });
                EXPECT_EQ(shuffled.result, r.result) << format_tree(t);
            }
            ++runs;
        }
    }
    EXPECT_GT(runs, 500u);
}

TEST(CurveGraphProperties, SigmaTelescopingWellDefined) {
    std::vector<std::string> counterexamples;
    for (const auto& t : small_tree_corpus(6)) {
        for (const auto& a : veronese_weights(t.n())) {
            if (!general_for(t, a)) continue;
            std::vector<int> reference;
            for (int root = 0; root < t.vertex_count(); ++root) {
                if (t.degree(root) > 1) continue;
                auto s = sigmas_from(t, a, root);
                if (reference.empty())
                    reference = s;
                else if (s != reference)
                    counterexamples.push_back("root choice: " + format_tree(t));
            }
            // every tail and the whole curve: formula agrees with the telescoped vertex sum
            std::vector<std::vector<int>> pieces;
            for (auto [x, y] : t.edges()) {
                pieces.push_back(t.side_of_edge(x, y));
                pieces.push_back(t.side_of_edge(y, x));
            }
            std::vector<int> all(t.vertex_count());
            std::iota(all.begin(), all.end(), 0);
            pieces.push_back(all);
            for (const auto& c : pieces) {
                int sum = 0;
                for (int v : c) sum += reference[v];
                if (sum != sigma_value(a.weight_of(t.marks_on(c)), a))
                    counterexamples.push_back("tail sum: " + format_tree(t));
            }
        }
    }
    EXPECT_TRUE(counterexamples.empty()) << counterexamples.size() << " counterexamples, first: "
                                         << (counterexamples.empty() ? "" : counterexamples.front());
}

TEST(CurveGraphProperties, VeroneseIdempotentAndConserving) {
    for (const auto& t : small_tree_corpus(6)) {
        for (const auto& a : veronese_weights(t.n())) {
            if (!general_for(t, a)) continue;
            auto r = veronese_reduce(t, a);
            EXPECT_EQ(r.result.n(), t.n());
            auto again = veronese_reduce(r.result, a);
            EXPECT_EQ(again.result, r.result) << format_tree(t);
            EXPECT_TRUE(again.contracted.empty());
            int total = 0;
            for (auto s : vertex_sigmas(r.result, a)) total += s;
            EXPECT_EQ(total, a.d) << format_tree(t);
        }
    }
}

TEST(CurveGraphProperties, DegreeConservationOnAllSevenPointStrata) {
    auto a = example43();
    for (const auto& t : stable_marked_trees(7)) {
        auto r = veronese_reduce(t, a);
        int total = 0;
        for (const auto& [v, s] : r.sigma_values) total += s;
        EXPECT_EQ(total, 3) << format_tree(t);
        int survivors = 0;
        for (auto s : vertex_sigmas(r.result, a)) {
            EXPECT_GT(s, 0);
            survivors += s;
        }
        EXPECT_EQ(survivors, 3) << format_tree(t);
    }
}

// With A = (4/7,...,4/7) the paper lists two contraction types: a 1-marked bridge between a
// 2-marked tail and a 4-marked remainder, and a 1-marked spine with three 2-marked tails. Counting
// each own mark as a branch of size 1, every contracted component is one of these or the comb with
// its spine mark bubbled onto a tail (branches 3,2,2), which lies in the closure of the comb locus.
TEST(CurveGraphProperties, ContractionTypesForExample43) {
    auto a = example43();
    std::map<std::multiset<std::size_t>, int> seen;
    int general_combs = 0;
    for (const auto& t : stable_marked_trees(7)) {
        auto sig = vertex_sigmas(t, a);
        auto adj = t.adjacency();
        for (int v = 0; v < t.vertex_count(); ++v) {
            if (sig[v] != 0) continue;
            std::multiset<std::size_t> branch;
            for (std::size_t k = 0; k < t.marks_on({v}).size(); ++k) branch.insert(1);
            for (int w : adj[v]) branch.insert(t.marks_on(t.side_of_edge(w, v)).size());
            ++seen[branch];
            if (branch == std::multiset<std::size_t>{1, 2, 2, 2} && t.vertex_count() == 4) ++general_combs;
        }
    }
    std::map<std::multiset<std::size_t>, int> expected_keys = {{{1, 2, 4}, 0}, {{1, 2, 2, 2}, 0}, {{2, 2, 3}, 0}};
    for (const auto& [branch, count] : seen) EXPECT_TRUE(expected_keys.count(branch)) << count;
    EXPECT_EQ(seen.size(), 3u);
    EXPECT_EQ(general_combs, 105);  // one per F-curve of type F_{1,2,2,2}
}
