#pragma once

#include "m0n/boundary.hpp"
#include "m0n/divisor.hpp"
#include "m0n/rational.hpp"
#include "m0n/symmetric.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace m0n {

/// Syntax error in a divisor expression; `position` is a byte offset into the input.
class parse_error : public std::invalid_argument {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace expr {

struct ExplicitBoundary {
    std::vector<int> elements;
};
struct SymmetricBoundary {
    int size;
};
struct Psi {};
struct PsiI {
    int index;
};
struct Canonical {};

using Symbol = std::variant<ExplicitBoundary, SymmetricBoundary, Psi, PsiI, Canonical>;

struct Term {
    Rational coeff;
    Symbol symbol;
    std::size_t position = 0;
};

/// A divisor expression before it is bound to a particular n.
struct Expression {
    std::vector<Term> terms;

    bool is_symmetric() const {
        for (const auto& t : terms)
            if (std::holds_alternative<ExplicitBoundary>(t.symbol) || std::holds_alternative<PsiI>(t.symbol))
                return false;
        return true;
    }
};

class Parser {
public:
    explicit Parser(std::string_view text) : s_(normalize(text)) {}

    Expression parse() {
        Expression e;
        skip_ws();
        if (pos_ == s_.size()) throw parse_error("empty divisor expression", pos_);
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw parse_error("expected '+' or '-'", pos_);
            }
            parse_term(e, sign);
            first = false;
            skip_ws();
            if (pos_ == s_.size()) break;
        }
        return e;
    }

private:
    // Unicode minus (U+2212) is accepted as '-'; positions refer to the normalized text.
    static std::string normalize(std::string_view in) {
        std::string out;
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (in.substr(i, 3) == "\xE2\x88\x92") {
                out.push_back('-');
                i += 2;
            } else {
                out.push_back(in[i]);
            }
        }
        return out;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek_digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

    long parse_int() {
        if (!peek_digit()) throw parse_error("expected integer", pos_);
        long v = 0;
        while (peek_digit()) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1'000'000'000L) throw parse_error("integer too large", pos_);
            ++pos_;
        }
        return v;
    }

    Rational parse_coeff() {
        std::size_t start = pos_;
        while (peek_digit()) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            if (!peek_digit()) throw parse_error("expected denominator", pos_);
            while (peek_digit()) ++pos_;
        }
        std::string lit = s_.substr(start, pos_ - start);
        try {
            return parse_rational(lit);
        } catch (const std::exception&) {
            throw parse_error("invalid rational coefficient '" + lit + "'", start);
        }
    }

    void parse_term(Expression& e, int sign) {
        std::size_t start = pos_;
        Rational coeff = sign;
        if (peek_digit()) {
            coeff *= parse_coeff();
            skip_ws();
            if (pos_ == s_.size() || s_[pos_] == '+' || s_[pos_] == '-') {
                if (coeff != 0) throw parse_error("bare nonzero constant is not a divisor", start);
                return;  // "0"
            }
            if (s_[pos_] != '*') throw parse_error("expected '*' after coefficient", pos_);
            ++pos_;
            skip_ws();
        }
        std::size_t sym_pos = pos_;
        Symbol sym = parse_symbol();
        e.terms.push_back({coeff, std::move(sym), sym_pos});
    }

    Symbol parse_symbol() {
        std::size_t start = pos_;
        if (s_.compare(pos_, 3, "psi") == 0) {
            pos_ += 3;
            if (pos_ < s_.size() && s_[pos_] == '_') {
                ++pos_;
                long i = parse_int();
                return PsiI{static_cast<int>(i)};
            }
            return Psi{};
        }
        if (pos_ < s_.size() && s_[pos_] == 'K') {
            ++pos_;
            return Canonical{};
        }
        if (pos_ < s_.size() && s_[pos_] == 'B') {
            ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '{') {
                ++pos_;
                std::vector<int> elems;
                while (true) {
                    skip_ws();
                    elems.push_back(static_cast<int>(parse_int()));
                    skip_ws();
                    if (pos_ < s_.size() && s_[pos_] == ',') {
                        ++pos_;
                        continue;
                    }
                    if (pos_ < s_.size() && s_[pos_] == '}') {
                        ++pos_;
                        break;
                    }
                    throw parse_error("expected ',' or '}' in boundary index", pos_);
                }
                return ExplicitBoundary{std::move(elems)};
            }
            if (peek_digit()) return SymmetricBoundary{static_cast<int>(parse_int())};
            throw parse_error("expected '{' or size after 'B'", pos_);
        }
        throw parse_error("unknown symbol", start);
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace expr

inline expr::Expression parse_expression(std::string_view text) { return expr::Parser(text).parse(); }

namespace detail {

inline void check_symmetric_size(int n, const expr::SymmetricBoundary& b, std::size_t pos) {
    if (b.size < 2 || b.size > n - 2)
        throw parse_error("B" + std::to_string(b.size) + " is not a boundary for n=" + std::to_string(n), pos);
}

}  // namespace detail

/// Binds an expression to M̄_{0,n}; K and psi are expanded into boundary coordinates.
inline DivisorClass to_divisor_class(const expr::Expression& e, int n) {
    check_point_count(n);
    DivisorClass d(n);
    auto [k, psi] = canonical_and_psi(n);
    for (const auto& t : e.terms) {
        std::visit(
            [&](const auto& sym) {
                using T = std::decay_t<decltype(sym)>;
                if constexpr (std::is_same_v<T, expr::ExplicitBoundary>) {
                    try {
                        d.add(BoundaryIndex::from_elements(n, sym.elements), t.coeff);
                    } catch (const invalid_boundary& ex) {
                        throw parse_error(ex.what(), t.position);
                    }
                } else if constexpr (std::is_same_v<T, expr::SymmetricBoundary>) {
                    detail::check_symmetric_size(n, sym, t.position);
                    d += t.coeff * expand_symmetric(SymmetricDivisor::boundary(n, sym.size));
                } else if constexpr (std::is_same_v<T, expr::Psi>) {
                    d += t.coeff * expand_symmetric(psi);
                } else if constexpr (std::is_same_v<T, expr::PsiI>) {
                    if (sym.index < 1 || sym.index > n)
                        throw parse_error("psi_" + std::to_string(sym.index) + " out of range", t.position);
                    d.add_psi(sym.index, t.coeff);
                } else {
                    d += t.coeff * expand_symmetric(k);
                }
            },
            t.symbol);
    }
    return d;
}

/// Binds a symmetric expression; throws std::invalid_argument if it names explicit boundaries or psi_i.
inline SymmetricDivisor to_symmetric(const expr::Expression& e, int n) {
    if (!e.is_symmetric())
        throw std::invalid_argument("divisor is not symmetric: use only B2..B" + std::to_string(n / 2) +
                                    ", psi and K");
    SymmetricDivisor s(n);
    auto [k, psi] = canonical_and_psi(n);
    for (const auto& t : e.terms) {
        if (auto b = std::get_if<expr::SymmetricBoundary>(&t.symbol)) {
            detail::check_symmetric_size(n, *b, t.position);
            s += t.coeff * SymmetricDivisor::boundary(n, b->size);
        } else if (std::holds_alternative<expr::Psi>(t.symbol)) {
            s += t.coeff * psi;
        } else {
            s += t.coeff * k;
        }
    }
    return s;
}

inline DivisorClass parse_divisor(std::string_view text, int n) { return to_divisor_class(parse_expression(text), n); }
inline SymmetricDivisor parse_symmetric(std::string_view text, int n) { return to_symmetric(parse_expression(text), n); }

namespace detail {

inline void append_term(std::ostringstream& os, bool& first, const Rational& c, const std::string& sym) {
    if (c == 0) return;
    Rational mag = abs(c);
    if (first) {
        if (c < 0) os << '-';
    } else {
        os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) os << to_string(mag) << '*';
    os << sym;
    first = false;
}

}  // namespace detail

/// Prints a class in the expression grammar, boundary terms in pivot order, then psi_i.
inline std::string format_divisor(const DivisorClass& d) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, c] : d.boundary_coeffs()) detail::append_term(os, first, c, b.name());
    for (const auto& [i, c] : d.psi_coeffs()) detail::append_term(os, first, c, "psi_" + std::to_string(i));
    if (first) return "0";
    return os.str();
}

inline std::string format_symmetric(const SymmetricDivisor& s) {
    std::ostringstream os;
    bool first = true;
    for (int i = 2; i <= s.n() / 2; ++i) detail::append_term(os, first, s[i], "B" + std::to_string(i));
    if (first) return "0";
    return os.str();
}

/// Parses a comma-separated list of explicit boundaries, e.g. "B{1,2},B{3,4,5}".
inline std::vector<BoundaryIndex> parse_boundary_list(std::string_view text, int n) {
    std::vector<BoundaryIndex> out;
    if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
    // Commas inside braces belong to the index, so split on "}," boundaries.
    std::string s(text);
    std::string cur;
    int depth = 0;
    std::size_t start = 0;
    auto flush = [&](std::size_t at) {
        auto e = parse_expression(cur);
        if (e.terms.size() != 1 || e.terms[0].coeff != 1 ||
            !std::holds_alternative<expr::ExplicitBoundary>(e.terms[0].symbol))
            throw parse_error("expected explicit boundary B{...}", start);
        const auto& elems = std::get<expr::ExplicitBoundary>(e.terms[0].symbol).elements;
        try {
            out.push_back(BoundaryIndex::from_elements(n, elems));
        } catch (const invalid_boundary& ex) {
            throw parse_error(ex.what(), start);
        }
        cur.clear();
        start = at + 1;
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (c == ',' && depth == 0) {
            flush(i);
            continue;
        }
        cur.push_back(c);
    }
    flush(s.size());
    return out;
}

}  // namespace m0n
