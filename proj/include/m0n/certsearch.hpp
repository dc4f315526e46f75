#pragma once

#include "m0n/boundary.hpp"
#include "m0n/divisor.hpp"
#include "m0n/fcurve.hpp"
#include "m0n/keel.hpp"
#include "m0n/simplex.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace m0n {

/// Search for an effective boundary expression of m * target avoiding `forbidden`.
struct CertificateProblem {
    int n = 0;
    DivisorClass target;
    std::set<BoundaryIndex> forbidden;
    bool require_integral = false;
    bool allow_multiple = true;
    long m_max = 60;

    void validate() const {
        check_point_count(n);
        require_same_n(n, target.n());
        if (target.has_psi()) throw std::invalid_argument("certificate target must be boundary-supported");
        for (const auto& b : forbidden) require_same_n(n, b.n());
        if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
    }

    CertificateProblem permuted(const Permutation& p) const {
        CertificateProblem out = *this;
        out.target = target.permuted(p);
        out.forbidden.clear();
        for (const auto& b : forbidden) out.forbidden.insert(p.apply(b));
        return out;
    }
};

/// Nonnegative boundary coefficients whose class is `multiple` times the target.
struct Certificate {
    int n = 0;
    std::map<BoundaryIndex, Rational> coeffs;
    long multiple = 1;

    DivisorClass as_class() const {
        DivisorClass d(n);
        for (const auto& [b, c] : coeffs) d.add(b, c);
        return d;
    }

    Certificate permuted(const Permutation& p) const {
        Certificate out{n, {}, multiple};
        for (const auto& [b, c] : coeffs) out.coeffs[p.apply(b)] += c;
        return out;
    }

    std::size_t support_size() const {
        std::size_t k = 0;
        for (const auto& [b, c] : coeffs) k += (c != 0);
        return k;
    }

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct FCurveDisagreement {
    FCurve curve;
    Rational certificate_pairing;
    Rational target_pairing;  // already multiplied by the certificate's multiple
};

struct VerifyReport {
    bool normal_form_matches = false;
    bool pairing_matches = false;
    bool class_matches = false;
    bool nonnegative = false;
    bool support_ok = false;
    std::vector<FCurveDisagreement> failing_fcurves;
    std::vector<BoundaryIndex> negative_entries;
    std::vector<BoundaryIndex> forbidden_used;
    bool verdict = false;

    /// The two class checks must never disagree; a mismatch means a defect in the algebra layer.
    bool oracles_agree() const { return normal_form_matches == pairing_matches; }
};

/// Checks a certificate: class equality (normal form and all F-curve pairings), nonnegativity, support.
inline VerifyReport verify_certificate(const CertificateProblem& p, const Certificate& cert) {
    p.validate();
    require_same_n(p.n, cert.n);
    VerifyReport rep;

    rep.nonnegative = cert.multiple >= 1;
    rep.support_ok = true;
    for (const auto& [b, c] : cert.coeffs) {
        require_same_n(p.n, b.n());
        if (c < 0) {
            rep.nonnegative = false;
            rep.negative_entries.push_back(b);
        }
        if (c != 0 && p.forbidden.count(b) != 0) {
            rep.support_ok = false;
            rep.forbidden_used.push_back(b);
        }
    }

    const DivisorClass lhs = cert.as_class();
    const DivisorClass rhs = Rational(cert.multiple) * p.target;
    rep.normal_form_matches = normal_form(lhs - rhs).is_zero();

    rep.pairing_matches = true;
    for (const auto& f : all_fcurves(p.n)) {
        Rational a = pair_fcurve(f, lhs);
        Rational b = pair_fcurve(f, rhs);
        if (a != b) {
            rep.pairing_matches = false;
            rep.failing_fcurves.push_back({f, a, b});
        }
    }
    rep.class_matches = rep.normal_form_matches && rep.pairing_matches;
    rep.verdict = rep.class_matches && rep.nonnegative && rep.support_ok;
    return rep;
}

struct CertificateSearch {
    std::optional<Certificate> certificate;  // empty means infeasible
    std::string reason;
    std::size_t pivots = 0;

    bool feasible() const { return certificate.has_value(); }
};

/// Exact LP feasibility over the echelon-reduced coordinates of N^1.
///
/// Variables are the coefficients of the allowed boundary classes; the
/// constraints say that their combination minus the target reduces to zero.
inline CertificateSearch find_certificate(const CertificateProblem& p) {
    p.validate();
    auto basis = relation_basis(p.n);
    const auto free_cols = basis->free_columns();

    std::vector<BoundaryIndex> vars;
    for (const auto& b : basis->boundaries())
        if (p.forbidden.count(b) == 0) vars.push_back(b);

    std::vector<RationalVector> a(free_cols.size(), RationalVector(vars.size()));
    for (std::size_t j = 0; j < vars.size(); ++j) {
        RationalVector v(basis->boundaries().size());
        v[basis->column(vars[j])] = 1;
        basis->rref().reduce(v);
        for (std::size_t r = 0; r < free_cols.size(); ++r) a[r][j] = v[free_cols[r]];
    }
    RationalVector t = basis->to_vector(p.target);
    basis->rref().reduce(t);
    RationalVector rhs(free_cols.size());
    for (std::size_t r = 0; r < free_cols.size(); ++r) rhs[r] = t[free_cols[r]];

    CertificateSearch out;
    FeasibilityResult lp = find_feasible_point(a, rhs);
    out.pivots = lp.pivots;
    if (!lp.feasible) {
        out.reason = "no nonnegative combination of the allowed boundaries represents the target";
        return out;
    }

    mpz_class lcm = 1;
    for (const auto& x : lp.x)
        if (x != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());

    Certificate cert{p.n, {}, 1};
    Rational scale = 1;
    if (p.require_integral && lcm != 1) {
        if (!p.allow_multiple) {
            out.reason = "rational certificate found but integral coefficients need multiple " + lcm.get_str() +
                         " and multiples are disabled";
            return out;
        }
        if (lcm > p.m_max) {
            out.reason = "rational certificate found but integral coefficients need multiple " + lcm.get_str() +
                         " > m_max " + std::to_string(p.m_max);
            return out;
        }
        cert.multiple = lcm.get_si();
        scale = Rational(lcm);
    }
    for (std::size_t j = 0; j < vars.size(); ++j)
        if (lp.x[j] != 0) cert.coeffs.emplace(vars[j], lp.x[j] * scale);
    out.certificate = std::move(cert);
    return out;
}

}  // namespace m0n
