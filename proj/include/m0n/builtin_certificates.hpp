#pragma once

#include "m0n/certsearch.hpp"
#include "m0n/symmetric.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace m0n {

/// A certificate recorded as golden data together with the problem it answers.
struct BuiltinCertificate {
    std::string name;
    CertificateProblem problem;
    Certificate certificate;
};

namespace detail {

struct CoefficientGroup {
    long coeff;
    std::vector<std::vector<int>> indices;
};

inline Certificate certificate_from_groups(int n, std::initializer_list<CoefficientGroup> groups) {
    Certificate c{n, {}, 1};
    for (const auto& g : groups)
        for (const auto& idx : g.indices) c.coeffs[BoundaryIndex::from_elements(n, idx)] += g.coeff;
    return c;
}

inline CertificateProblem seven_point_problem(long b2, long b3, std::vector<std::vector<int>> forbidden) {
    CertificateProblem p;
    p.n = 7;
    SymmetricDivisor s(7, {Rational(b2), Rational(b3)});
    p.target = expand_symmetric(s);
    for (const auto& f : forbidden) p.forbidden.insert(BoundaryIndex::from_elements(7, f));
    p.require_integral = true;
    return p;
}

}  // namespace detail

/// Integral effective expressions of 5B2+3B3 and 4B2+3B3 on M̄_{0,7} avoiding a pair of
/// intersecting boundary components, one per S_7-orbit of such pairs.
inline std::vector<BuiltinCertificate> builtin_certificates() {
    using detail::certificate_from_groups;
    std::vector<BuiltinCertificate> out;

    out.push_back({"E' avoiding B{1,2}, B{3,4,5}",
                   detail::seven_point_problem(5, 3, {{1, 2}, {3, 4, 5}}),
                   certificate_from_groups(
                       7, {
                              {12, {{1, 4}}},
                              {9, {{2, 5}, {2, 6}, {5, 6}}},
                              {6, {{1, 3}, {1, 7}, {2, 3}, {2, 7}, {3, 4}, {3, 7}, {4, 7}}},
                              {3, {{1, 5}, {1, 6}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 7}, {6, 7}}},
                              {15, {{2, 5, 6}}},
                              {12, {{1, 4, 7}, {1, 3, 4}}},
                              {6,
                               {{1, 3, 7}, {1, 4, 5}, {1, 4, 6}, {2, 3, 5}, {2, 3, 6}, {2, 3, 7}, {2, 5, 7},
                                {2, 6, 7}, {3, 4, 7}}},
                              {3, {{1, 5, 6}, {3, 5, 6}, {4, 5, 6}, {5, 6, 7}}},
                          })});

    out.push_back({"E' avoiding B{1,2}, B{1,2,3}",
                   detail::seven_point_problem(5, 3, {{1, 2}, {1, 2, 3}}),
                   certificate_from_groups(
                       7, {
                              {12, {{1, 4}}},
                              {9, {{2, 6}, {2, 7}, {6, 7}}},
                              {6, {{1, 3}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}},
                              {3, {{1, 6}, {1, 7}, {3, 6}, {3, 7}, {4, 6}, {4, 7}, {5, 6}, {5, 7}}},
                              {15, {{2, 6, 7}}},
                              {12, {{1, 3, 4}, {1, 4, 5}}},
                              {6,
                               {{1, 3, 5}, {1, 4, 6}, {1, 4, 7}, {2, 3, 5}, {2, 3, 6}, {2, 3, 7}, {2, 5, 6},
                                {2, 5, 7}, {3, 4, 5}}},
                              {3, {{1, 6, 7}, {3, 6, 7}, {4, 6, 7}, {5, 6, 7}}},
                          })});

    out.push_back({"F' avoiding B{1,2}, B{3,4}",
                   detail::seven_point_problem(4, 3, {{1, 2}, {3, 4}}),
                   certificate_from_groups(
                       7, {
                              {12, {{1, 3}}},
                              {9, {{2, 4}, {2, 6}, {4, 6}}},
                              {6, {{1, 5}, {1, 7}, {3, 5}, {3, 7}}},
                              {3, {{2, 5}, {2, 7}, {4, 5}, {4, 7}, {5, 6}, {5, 7}, {6, 7}}},
                              {18, {{2, 4, 6}}},
                              {15, {{1, 3, 5}, {1, 3, 7}}},
                              {6,
                               {{1, 5, 7}, {2, 4, 5}, {2, 4, 7}, {2, 5, 6}, {2, 6, 7}, {3, 5, 7}, {4, 5, 6},
                                {4, 6, 7}}},
                              {3, {{1, 2, 3}, {1, 3, 4}, {1, 3, 6}}},
                          })});
    return out;
}

}  // namespace m0n
