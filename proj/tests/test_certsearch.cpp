#include "m0n/base_locus.hpp"
#include "m0n/builtin_certificates.hpp"
#include "m0n/certsearch.hpp"
#include "m0n/expr.hpp"
#include "m0n/simplex.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace m0n;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

CertificateProblem problem7(const std::string& target, const std::string& forbid) {
    CertificateProblem p;
    p.n = 7;
    p.target = parse_divisor(target, 7);
    for (const auto& b : parse_boundary_list(forbid, 7)) p.forbidden.insert(b);
    return p;
}

Permutation random_perm(int n, std::mt19937& rng) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(img);
}

}  // namespace

TEST(ExactSimplex, TinyFeasibleAndInfeasible) {
    // x + y = 2, x - y = 0  ->  (1, 1)
    auto r = find_feasible_point({{1, 1}, {1, -1}}, {2, 0});
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.x, (RationalVector{1, 1}));
    // x + y = -1 has no nonnegative solution.
    EXPECT_FALSE(find_feasible_point({{1, 1}}, {-1}).feasible);
    // Redundant rows are fine.
    auto red = find_feasible_point({{1, 2}, {2, 4}}, {q(1, 2), 1});
    ASSERT_TRUE(red.feasible);
    EXPECT_EQ(red.x[0] + 2 * red.x[1], q(1, 2));
}

TEST(ExactSimplex, DegenerateProblemTerminates) {
    // Highly degenerate: many zero right-hand sides.
    std::vector<RationalVector> a;
    RationalVector b;
    for (int r = 0; r < 6; ++r) {
        RationalVector row(10);
        for (int c = 0; c < 10; ++c) row[c] = ((r + 1) * (c + 2)) % 5 - 2;
        a.push_back(row);
        b.push_back(0);
    }
    auto res = find_feasible_point(a, b);
    EXPECT_TRUE(res.feasible);
}

TEST(VerifyCertificate, BuiltinsPass) {
    auto builtins = builtin_certificates();
    ASSERT_EQ(builtins.size(), 3u);
    for (const auto& b : builtins) {
        auto rep = verify_certificate(b.problem, b.certificate);
        EXPECT_TRUE(rep.verdict) << b.name;
        EXPECT_TRUE(rep.oracles_agree());
        EXPECT_TRUE(rep.failing_fcurves.empty());
    }
}

TEST(VerifyCertificate, BuiltinContents) {
    auto builtins = builtin_certificates();
    const auto& first = builtins[0].certificate;
    EXPECT_EQ(first.support_size(), 35u);
    EXPECT_EQ(first.coeffs.at(BoundaryIndex::of(7, {1, 4})), 12);
    EXPECT_EQ(first.coeffs.at(BoundaryIndex::of(7, {2, 5, 6})), 15);
    for (const auto& [b, c] : first.coeffs) EXPECT_NE(c, 18);
    const auto& third = builtins[2].certificate;
    EXPECT_EQ(third.coeffs.at(BoundaryIndex::of(7, {2, 4, 6})), 18);
    EXPECT_EQ(third.coeffs.at(BoundaryIndex::of(7, {1, 3, 5})), 15);
    EXPECT_EQ(third.coeffs.at(BoundaryIndex::of(7, {1, 3, 7})), 15);
    EXPECT_EQ(builtins[2].problem.target, parse_divisor("4*B2 + 3*B3", 7));
    EXPECT_TRUE(class_equal(builtins[0].problem.target, parse_divisor("3/2*psi - 15/2*K", 7)));
}

TEST(VerifyCertificate, TargetItselfWhenSupportIsAllowed) {
    auto p = problem7("5*B2 + 3*B3", "");
    Certificate c{7, {}, 1};
    for (const auto& [b, v] : p.target.boundary_coeffs()) c.coeffs[b] = v;
    EXPECT_TRUE(verify_certificate(p, c).verdict);
}

TEST(VerifyCertificate, NegatedCoefficientFails) {
    auto b = builtin_certificates()[0];
    b.certificate.coeffs.begin()->second *= -1;
    auto rep = verify_certificate(b.problem, b.certificate);
    EXPECT_FALSE(rep.nonnegative);
    EXPECT_FALSE(rep.verdict);
    EXPECT_FALSE(rep.class_matches);
    EXPECT_FALSE(rep.failing_fcurves.empty());
    EXPECT_TRUE(rep.oracles_agree());
}

TEST(VerifyCertificate, ForbiddenSupportFails) {
    auto b = builtin_certificates()[0];
    b.certificate.coeffs[BoundaryIndex::of(7, {1, 2})] = 1;
    auto rep = verify_certificate(b.problem, b.certificate);
    EXPECT_FALSE(rep.support_ok);
    ASSERT_EQ(rep.forbidden_used.size(), 1u);
    EXPECT_EQ(rep.forbidden_used[0].name(), "B{1,2}");
    EXPECT_FALSE(rep.verdict);
}

TEST(VerifyCertificate, MismatchedN) {
    auto b = builtin_certificates()[0];
    Certificate c{6, {}, 1};
    EXPECT_THROW(verify_certificate(b.problem, c), mismatched_n);
}

TEST(VerifyCertificate, RejectsPsiTarget) {
    auto p = problem7("psi_1", "");
    EXPECT_THROW(verify_certificate(p, Certificate{7, {}, 1}), std::invalid_argument);
}

TEST(FindCertificate, RediscoversPublishedProblems) {
    for (const auto& b : builtin_certificates()) {
        auto found = find_certificate(b.problem);
        ASSERT_TRUE(found.feasible()) << b.name << ": " << found.reason;
        EXPECT_TRUE(verify_certificate(b.problem, *found.certificate).verdict);
        for (const auto& [idx, c] : found.certificate->coeffs) EXPECT_TRUE(is_integer(c));
    }
}

TEST(FindCertificate, CliExamples) {
    auto e = find_certificate(problem7("5*B2+3*B3", "B{1,2},B{3,4,5}"));
    EXPECT_TRUE(e.feasible());
    auto f = find_certificate(problem7("4*B2+3*B3", "B{1,2},B{3,4}"));
    EXPECT_TRUE(f.feasible());
}

TEST(FindCertificate, RigidBoundariesAreInfeasible) {
    auto p = problem7("B2", "B{1,2}");
    p.require_integral = true;
    auto r = find_certificate(p);
    EXPECT_FALSE(r.feasible());
    EXPECT_FALSE(r.reason.empty());
    EXPECT_FALSE(find_certificate(problem7("B3", "B{1,2,3}")).feasible());
    // A single component is rigid too.
    EXPECT_FALSE(find_certificate(problem7("B{1,2}", "B{1,2}")).feasible());
}

TEST(FindCertificate, Deterministic) {
    auto p = problem7("5*B2+3*B3", "B{1,2},B{3,4,5}");
    auto a = find_certificate(p);
    auto b = find_certificate(p);
    ASSERT_TRUE(a.feasible() && b.feasible());
    EXPECT_EQ(*a.certificate, *b.certificate);
    EXPECT_EQ(a.pivots, b.pivots);
}

TEST(FindCertificate, IntegralScalingUsesMultiple) {
    auto p = problem7("1/6*B2 + 1/10*B3", "B{1,2},B{3,4,5}");
    p.require_integral = true;
    auto r = find_certificate(p);
    ASSERT_TRUE(r.feasible()) << r.reason;
    EXPECT_GT(r.certificate->multiple, 1);
    for (const auto& [idx, c] : r.certificate->coeffs) EXPECT_TRUE(is_integer(c));
    EXPECT_TRUE(verify_certificate(p, *r.certificate).verdict);

    p.allow_multiple = false;
    EXPECT_FALSE(find_certificate(p).feasible());
    p.allow_multiple = true;
    p.m_max = 1;
    EXPECT_FALSE(find_certificate(p).feasible());
}

TEST(FindCertificate, SoundOnRandomTargets) {
    std::mt19937 rng(99);
    auto cols = all_boundaries(7);
    std::uniform_int_distribution<std::size_t> pick(0, cols.size() - 1);
    std::uniform_int_distribution<int> coef(0, 4);
    for (int t = 0; t < 20; ++t) {
        CertificateProblem p;
        p.n = 7;
        p.target = DivisorClass(7);
        for (int k = 0; k < 8; ++k) p.target.add(cols[pick(rng)], coef(rng));
        p.target += expand_symmetric(SymmetricDivisor(7, {Rational(1), Rational(1)}));
        p.forbidden = {cols[pick(rng)], cols[pick(rng)]};
        auto r = find_certificate(p);
        if (r.feasible()) {
            EXPECT_TRUE(verify_certificate(p, *r.certificate).verdict);
        }
    }
}

TEST(FindCertificate, PermutationEquivariantVerdicts) {
    std::mt19937 rng(5040);
    auto base = problem7("5*B2+3*B3", "B{1,2},B{3,4,5}");
    auto found = find_certificate(base);
    ASSERT_TRUE(found.feasible());
    for (int t = 0; t < 20; ++t) {
        Permutation p = random_perm(7, rng);
        auto permuted_problem = base.permuted(p);
        // solve-then-permute vs permute-then-solve
        auto after = verify_certificate(permuted_problem, found.certificate->permuted(p));
        auto direct = find_certificate(permuted_problem);
        ASSERT_TRUE(direct.feasible());
        EXPECT_EQ(after.verdict, verify_certificate(permuted_problem, *direct.certificate).verdict);
        EXPECT_TRUE(after.verdict);
    }
}

TEST(BaseLocusReport, RangesAndWitnesses) {
    auto report = base_locus_report();
    ASSERT_EQ(report.size(), 5u);
    EXPECT_TRUE(report[0].nef_endpoints);
    EXPECT_EQ(report[0].locus, BaseLocus::Empty);

    EXPECT_EQ(report[1].locus, BaseLocus::B3);
    ASSERT_EQ(report[1].inclusion.size(), 1u);
    EXPECT_EQ(report[1].inclusion[0].curve.name(), "F1,1,1,4");
    EXPECT_LT(report[1].inclusion[0].pairing_at_end, 0);

    EXPECT_EQ(report[3].locus, BaseLocus::B2Squared);
    EXPECT_EQ(report[3].inclusion[1].curve.name(), "A");
    EXPECT_EQ(report[4].locus, BaseLocus::B2);
    EXPECT_EQ(report[4].inclusion.back().curve.name(), "C5");

    for (const auto& r : report) {
        for (const auto& w : r.inclusion) EXPECT_TRUE(w.holds) << r.interval << " " << w.curve.name();
        for (const auto& x : r.exclusion) {
            EXPECT_TRUE(x.report.verdict) << x.orbit;
            EXPECT_GT(x.orbit_size, 0u);
            EXPECT_EQ(x.orbit_verified, x.orbit_size) << x.orbit;
        }
    }
    EXPECT_EQ(report[3].exclusion[0].orbit_size, 210u);
    EXPECT_EQ(report[3].exclusion[1].orbit_size, 105u);
    EXPECT_EQ(report[2].exclusion[2].orbit_size, 105u);
}

TEST(BaseLocusReport, DualConsistencyInsideChambers) {
    // Interior points of the B2^2 and B2^3 chambers: witnesses negative and certificates exist.
    auto [k, psi] = canonical_and_psi(7);
    const auto b = [](std::initializer_list<int> e) { return BoundaryIndex::of(7, e); };
    struct Case {
        SymmetricDivisor d;
        std::vector<std::pair<BoundaryIndex, BoundaryIndex>> reps;
        std::vector<CurveClass> negative;
    };
    std::vector<Case> cases = {
        {psi - Rational(4) * k, {{b({1, 2}), b({3, 4, 5})}, {b({1, 2}), b({1, 2, 3})}},
         {CurveClass::fcurve(7, {1, 2, 2, 2}), CurveClass::curve_a(7)}},
        {psi - Rational(2) * k,
         {{b({1, 2}), b({3, 4, 5})}, {b({1, 2}), b({1, 2, 3})}, {b({1, 2}), b({3, 4})}},
         {CurveClass::fcurve(7, {1, 2, 2, 2})}},
    };
    for (const auto& c : cases) {
        EXPECT_FALSE(chamber_lookup(c.d).on_wall);
        for (const auto& curve : c.negative) EXPECT_LT(pair_curve(curve, c.d), 0) << curve.name();
        for (const auto& [x, y] : c.reps) {
            CertificateProblem p;
            p.n = 7;
            p.target = expand_symmetric(c.d);
            p.forbidden = {x, y};
            auto r = find_certificate(p);
            ASSERT_TRUE(r.feasible()) << format_symmetric(c.d) << " avoiding " << x.name() << "," << y.name();
            EXPECT_TRUE(verify_certificate(p, *r.certificate).verdict);
        }
    }
}
