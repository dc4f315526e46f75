#pragma once

#include "m0n/symmetric.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace m0n {

/// Cases of the symmetric Mori chamber decomposition of M̄_{0,7}, plus non-effective rays.
enum class ChamberId {
    AmpleInterior = 1,       // (psi-K, K+psi/3): M̄_{0,7}
    WeightedHassett = 2,     // [K+psi/3, B3): M̄_{0,A}, A = (1/3,...,1/3)
    VeroneseQuotient = 3,    // psi-K: V_A^3, A = (4/7,...,4/7)
    FirstFlip = 4,           // (psi-3K, psi-K)
    SmallContraction = 5,    // psi-3K
    SecondFlip = 6,          // (psi-5K, psi-3K)
    DivisorialContraction = 7,  // (B2, psi-5K]
    Point = 8,               // B2 or B3
    OutsideEffective = 0,
};

enum class BaseLocus { Empty, B3, B2Cubed, B2Squared, B2, Everything };

inline std::string_view to_string(BaseLocus b) {
    switch (b) {
        case BaseLocus::Empty: return "empty";
        case BaseLocus::B3: return "B3";
        case BaseLocus::B2Cubed: return "B2^3";
        case BaseLocus::B2Squared: return "B2^2";
        case BaseLocus::B2: return "B2";
        case BaseLocus::Everything: return "everything";
    }
    return "?";
}

inline std::string_view chamber_name(ChamberId id) {
    switch (id) {
        case ChamberId::AmpleInterior: return "ample_interior";
        case ChamberId::WeightedHassett: return "weighted_hassett";
        case ChamberId::VeroneseQuotient: return "veronese_quotient";
        case ChamberId::FirstFlip: return "first_flip";
        case ChamberId::SmallContraction: return "small_contraction";
        case ChamberId::SecondFlip: return "second_flip";
        case ChamberId::DivisorialContraction: return "divisorial_contraction";
        case ChamberId::Point: return "point";
        case ChamberId::OutsideEffective: return "outside_effective";
    }
    return "?";
}

struct ChamberReport {
    ChamberId chamber_id = ChamberId::OutsideEffective;
    std::string model_label;
    std::string model_description;
    BaseLocus stable_base_locus = BaseLocus::Everything;
    bool on_wall = false;
    std::vector<std::string> wall_names;       // the wall hit, or the two bounding walls
    std::vector<std::string> adjacent_models;  // models of the open chambers touching a wall

    friend bool operator==(const ChamberReport&, const ChamberReport&) = default;
};

struct ChamberWall {
    std::string name;
    SymmetricDivisor ray;
};

/// The six rays bounding the symmetric chambers of M̄_{0,7}, ordered from B3 down to B2.
inline std::vector<ChamberWall> chamber_walls_n7() {
    auto [k, psi] = canonical_and_psi(7);
    const Rational third = make_rational(1, 3);
    return {
        {"B3", SymmetricDivisor::boundary(7, 3)},
        {"K+psi/3", k + third * psi},
        {"psi-K", psi - k},
        {"psi-3K", psi - Rational(3) * k},
        {"psi-5K", psi - Rational(5) * k},
        {"B2", SymmetricDivisor::boundary(7, 2)},
    };
}

namespace detail {

struct ModelEntry {
    ChamberId id;
    const char* label;
    const char* description;
    BaseLocus locus;
};

// Open sectors between consecutive walls, in wall order.
inline const std::array<ModelEntry, 5>& open_chambers() {
    static const std::array<ModelEntry, 5> table = {{
        {ChamberId::WeightedHassett, "M̄₀,A", "weighted pointed stable curves, A=(1/3,...,1/3)", BaseLocus::B3},
        {ChamberId::AmpleInterior, "M̄₀,₇", "M̄₀,₇ itself (ample cone)", BaseLocus::Empty},
        {ChamberId::FirstFlip, "M̄₀,₇³", "flip of M̄₀,₇ over V_A^3, flipping locus B2^3", BaseLocus::B2Cubed},
        {ChamberId::SecondFlip, "M̄₀,₇²", "flip of M̄₀,₇³, flipping locus proper transform of B2^2",
         BaseLocus::B2Squared},
        {ChamberId::DivisorialContraction, "M̄₀,₇¹", "divisorial contraction of M̄₀,₇² contracting B2",
         BaseLocus::B2},
    }};
    return table;
}

// Rays themselves, in wall order.
inline const std::array<ModelEntry, 6>& wall_models() {
    static const std::array<ModelEntry, 6> table = {{
        {ChamberId::Point, "point", "B3 is rigid; the model is a point", BaseLocus::B3},
        {ChamberId::WeightedHassett, "M̄₀,A", "weighted pointed stable curves, A=(1/3,...,1/3)",
         BaseLocus::Empty},
        {ChamberId::VeroneseQuotient, "V_A^3", "Veronese quotient, A=(4/7,...,4/7)", BaseLocus::Empty},
        {ChamberId::SmallContraction, "M̄₀,₇(ψ−3K)", "small contraction of M̄₀,₇³", BaseLocus::B2Cubed},
        {ChamberId::DivisorialContraction, "M̄₀,₇¹", "divisorial contraction of M̄₀,₇² contracting B2",
         BaseLocus::B2Squared},
        {ChamberId::Point, "point", "B2 is rigid; the model is a point", BaseLocus::B2},
    }};
    return table;
}

// Orientation of v relative to w in the (B2, B3) plane.
inline int side(const SymmetricDivisor& w, const SymmetricDivisor& v) {
    Rational cross = w[2] * v[3] - w[3] * v[2];
    return sgn(cross);
}

}  // namespace detail

/// Classifies the ray of a symmetric divisor on M̄_{0,7} by model and stable base locus.
inline ChamberReport chamber_lookup(const SymmetricDivisor& s) {
    if (s.n() != 7) throw std::invalid_argument("chamber lookup is defined for n = 7 only");
    if (s.is_zero()) throw std::invalid_argument("chamber lookup of the zero divisor");

    ChamberReport r;
    if (s[2] < 0 || s[3] < 0) {
        r.chamber_id = ChamberId::OutsideEffective;
        r.model_label = "none";
        r.model_description = "not effective";
        r.stable_base_locus = BaseLocus::Everything;
        return r;
    }
    const auto walls = chamber_walls_n7();
    const auto& opens = detail::open_chambers();
    const auto& on = detail::wall_models();
    for (std::size_t w = 0; w < walls.size(); ++w) {
        if (detail::side(walls[w].ray, s) == 0) {
            r.chamber_id = on[w].id;
            r.model_label = on[w].label;
            r.model_description = on[w].description;
            r.stable_base_locus = on[w].locus;
            r.on_wall = true;
            r.wall_names = {walls[w].name};
            if (w > 0) r.adjacent_models.emplace_back(opens[w - 1].label);
            if (w < opens.size()) r.adjacent_models.emplace_back(opens[w].label);
            return r;
        }
    }
    // Walls go clockwise from B3 to B2; s sits clockwise of walls[k] and counter-clockwise of walls[k+1].
    for (std::size_t k = 0; k + 1 < walls.size(); ++k) {
        if (detail::side(walls[k].ray, s) < 0 && detail::side(walls[k + 1].ray, s) > 0) {
            r.chamber_id = opens[k].id;
            r.model_label = opens[k].label;
            r.model_description = opens[k].description;
            r.stable_base_locus = opens[k].locus;
            r.wall_names = {walls[k].name, walls[k + 1].name};
            return r;
        }
    }
    throw std::logic_error("first-quadrant ray not located among chamber walls");
}

}  // namespace m0n
