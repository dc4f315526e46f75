#pragma once

#include "m0n/certsearch.hpp"
#include "m0n/chamber.hpp"
#include "m0n/symmetric.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

namespace m0n {

/// A curve class with negative pairing on a whole range, so it lies in the stable base locus.
struct InclusionWitness {
    CurveClass curve;
    Rational pairing_at_start;
    Rational pairing_at_end;
    bool holds = false;  // negative on every divisor of the range
};

/// Certificates excluding an S_7-orbit of intersections B_I ∩ B_J from the stable base locus.
struct ExclusionWitness {
    std::string orbit;             // e.g. "B{1,2} ∩ B{3,4,5}"
    CertificateProblem problem;    // orbit representative
    Certificate certificate;       // found by find_certificate
    VerifyReport report;
    std::size_t orbit_size = 0;
    std::size_t orbit_verified = 0;  // members whose permuted certificate verifies
};

struct BaseLocusRange {
    std::string interval;  // interval notation in terms of the wall names
    SymmetricDivisor start, end;
    bool start_closed = false, end_closed = false;
    BaseLocus locus = BaseLocus::Empty;
    std::vector<InclusionWitness> inclusion;
    std::vector<ExclusionWitness> exclusion;
    std::string exclusion_note;  // containment argument not carried by certificates
    bool nef_endpoints = false;  // meaningful for the semi-ample range only
};

namespace detail {

inline BaseLocusRange make_range(std::string interval, SymmetricDivisor start, SymmetricDivisor end, bool start_closed,
                                 bool end_closed, BaseLocus locus) {
    BaseLocusRange r;
    r.interval = std::move(interval);
    r.start = std::move(start);
    r.end = std::move(end);
    r.start_closed = start_closed;
    r.end_closed = end_closed;
    r.locus = locus;
    return r;
}

/// Permutation sending the Venn regions of (a, b) onto those of (a2, b2), in increasing order.
inline Permutation venn_permutation(int n, PointMask a, PointMask b, PointMask a2, PointMask b2) {
    const PointMask full = full_mask(n);
    const std::array<PointMask, 4> src = {a & b, a & ~b, b & ~a, full & ~(a | b)};
    const std::array<PointMask, 4> dst = {a2 & b2, a2 & ~b2, b2 & ~a2, full & ~(a2 | b2)};
    std::vector<int> image(n, 0);
    for (int r = 0; r < 4; ++r) {
        auto from = mask_elements(src[r]);
        auto to = mask_elements(dst[r]);
        if (from.size() != to.size()) throw std::logic_error("venn regions differ in size");
        for (std::size_t k = 0; k < from.size(); ++k) image[from[k] - 1] = to[k];
    }
    return Permutation(image);
}

/// All pairs in the S_n-orbit of the canonical pair (a, b), as canonical masks.
inline std::vector<std::pair<PointMask, PointMask>> pair_orbit(int n, PointMask a, PointMask b) {
    const auto key = [n](PointMask x, PointMask y) {
        PointMask full = full_mask(n);
        return std::array<int, 4>{mask_size(x & y), mask_size(x & ~y), mask_size(y & ~x), mask_size(full & ~(x | y))};
    };
    const auto want = key(a, b);
    const bool same_size = mask_size(a) == mask_size(b);
    std::vector<std::pair<PointMask, PointMask>> out;
    for (const auto& x : boundaries_of_size(n, mask_size(a)))
        for (const auto& y : boundaries_of_size(n, mask_size(b))) {
            if (same_size && !(x < y)) continue;
            if (key(x.mask(), y.mask()) == want) out.emplace_back(x.mask(), y.mask());
        }
    return out;
}

inline InclusionWitness inclusion_witness(const CurveClass& c, const BaseLocusRange& r) {
    InclusionWitness w{c, pair_curve(c, r.start), pair_curve(c, r.end), false};
    // Linear in the divisor, so sign on the range is decided at the endpoints.
    bool start_ok = r.start_closed ? w.pairing_at_start < 0 : w.pairing_at_start <= 0;
    bool end_ok = r.end_closed ? w.pairing_at_end < 0 : w.pairing_at_end <= 0;
    w.holds = start_ok && end_ok && (w.pairing_at_start < 0 || w.pairing_at_end < 0);
    return w;
}

}  // namespace detail

/// Certificate for one orbit representative, checked over the whole S_7-orbit.
inline ExclusionWitness exclusion_witness(const SymmetricDivisor& target, const BoundaryIndex& a,
                                          const BoundaryIndex& b) {
    ExclusionWitness w;
    w.orbit = a.name() + " ∩ " + b.name();
    w.problem.n = target.n();
    w.problem.target = expand_symmetric(target);
    w.problem.forbidden = {a, b};
    w.problem.require_integral = true;
    auto found = find_certificate(w.problem);
    if (!found.feasible()) return w;
    w.certificate = *found.certificate;
    w.report = verify_certificate(w.problem, w.certificate);
    const auto orbit = detail::pair_orbit(target.n(), a.mask(), b.mask());
    w.orbit_size = orbit.size();
    for (const auto& [x, y] : orbit) {
        Permutation p = detail::venn_permutation(target.n(), a.mask(), b.mask(), x, y);
        if (verify_certificate(w.problem.permuted(p), w.certificate.permuted(p)).verdict) ++w.orbit_verified;
    }
    return w;
}

/// Stable base loci of symmetric divisors on M̄_{0,7}, range by range, with witnesses.
inline std::vector<BaseLocusRange> base_locus_report() {
    auto [k, psi] = canonical_and_psi(7);
    const auto b2 = SymmetricDivisor::boundary(7, 2);
    const auto b3 = SymmetricDivisor::boundary(7, 3);
    const SymmetricDivisor nef_top = k + make_rational(1, 3) * psi;
    const SymmetricDivisor nef_bottom = psi - k;
    const SymmetricDivisor flip1 = psi - Rational(3) * k;
    const SymmetricDivisor flip2 = psi - Rational(5) * k;
    // 5B2+3B3 = (3/2)(psi-5K) and 4B2+3B3 = (3/2)(psi-3K).
    const SymmetricDivisor e_target(7, {Rational(5), Rational(3)});
    const SymmetricDivisor f_target(7, {Rational(4), Rational(3)});
    const auto f1114 = CurveClass::fcurve(7, {1, 1, 1, 4});
    const auto f1222 = CurveClass::fcurve(7, {1, 2, 2, 2});
    const auto curve_a = CurveClass::curve_a(7);
    const auto c5 = CurveClass::sweeping(7, 5);
    const auto b = [](std::initializer_list<int> e) { return BoundaryIndex::of(7, e); };

    std::vector<BaseLocusRange> out;

    auto r1 = detail::make_range("[psi-K, K+psi/3]", nef_bottom, nef_top, true, true, BaseLocus::Empty);
    r1.nef_endpoints = nef_check(nef_bottom) && nef_check(nef_top);
    r1.exclusion_note = "both endpoints are nef, hence semi-ample";
    out.push_back(std::move(r1));

    auto r2 = detail::make_range("(K+psi/3, B3]", nef_top, b3, false, true, BaseLocus::B3);
    r2.inclusion.push_back(detail::inclusion_witness(f1114, r2));
    r2.exclusion_note = "nonnegative combination of the semi-ample K+psi/3 and B3";
    out.push_back(std::move(r2));

    const ExclusionWitness e_disjoint = exclusion_witness(e_target, b({1, 2}), b({3, 4, 5}));
    const ExclusionWitness e_nested = exclusion_witness(e_target, b({1, 2}), b({1, 2, 3}));
    const ExclusionWitness f_disjoint = exclusion_witness(f_target, b({1, 2}), b({3, 4}));

    auto r3 = detail::make_range("[psi-3K, psi-K)", flip1, nef_bottom, true, false, BaseLocus::B2Cubed);
    r3.inclusion.push_back(detail::inclusion_witness(f1222, r3));
    r3.exclusion = {e_disjoint, e_nested, f_disjoint};
    r3.exclusion_note = "certificates for 5B2+3B3 and 4B2+3B3 combined with the semi-ample psi-K";
    out.push_back(std::move(r3));

    auto r4 = detail::make_range("[psi-5K, psi-3K)", flip2, flip1, true, false, BaseLocus::B2Squared);
    r4.inclusion.push_back(detail::inclusion_witness(f1222, r4));
    r4.inclusion.push_back(detail::inclusion_witness(curve_a, r4));
    r4.exclusion = {e_disjoint, e_nested};
    r4.exclusion_note = "certificates for 5B2+3B3 combined with the semi-ample psi-K";
    out.push_back(std::move(r4));

    auto r5 = detail::make_range("[B2, psi-5K)", b2, flip2, true, false, BaseLocus::B2);
    r5.inclusion.push_back(detail::inclusion_witness(f1222, r5));
    r5.inclusion.push_back(detail::inclusion_witness(curve_a, r5));
    r5.inclusion.push_back(detail::inclusion_witness(c5, r5));
    r5.exclusion_note = "nonnegative combination of B2 and the semi-ample psi-K";
    out.push_back(std::move(r5));
    return out;
}

}  // namespace m0n
