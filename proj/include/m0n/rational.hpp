#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace m0n {

/// Exact rational scalar used everywhere in the library.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// "p/q" in lowest terms with q > 0; bare "p" when q == 1.
inline std::string to_string(const Rational& q) {
    Rational c(q);
    c.canonicalize();
    return c.get_str(10);
}

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false;
    bool digit_after = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (c == '/') {
            if (seen_slash) throw std::invalid_argument("malformed rational literal: " + s);
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw std::invalid_argument("malformed rational literal: " + s);
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw std::invalid_argument("malformed rational literal: " + s);
    if (s[0] == '+') s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
    if (q.get_den() == 0) throw std::domain_error("rational with zero denominator: " + s);
    q.canonicalize();
    return q;
}

/// Ceiling of a rational as a signed integer.
inline long ceil_to_long(const Rational& q) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!c.fits_slong_p()) throw std::overflow_error("ceiling does not fit in long");
    return c.get_si();
}

/// Fits-in-int64 integer check used by JSON emitters.
inline bool fits_int64(const Rational& q) {
    return is_integer(q) && q.get_num().fits_slong_p();
}

}  // namespace m0n
