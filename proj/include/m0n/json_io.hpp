#pragma once

// JSON mirrors of the library types. Rationals are always strings "p/q" (or "p").

#include <string>

#include <json.hpp>

#include "m0n/base_locus.hpp"
#include "m0n/certsearch.hpp"
#include "m0n/chamber.hpp"
#include "m0n/expr.hpp"
#include "m0n/marked_tree.hpp"
#include "m0n/reduction.hpp"
#include "m0n/symmetric.hpp"

namespace m0n::json_io {

using json = nlohmann::ordered_json;

inline json rational(const Rational& q) { return to_string(q); }

inline Rational rational_from(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw std::invalid_argument("rational must be a \"p/q\" string or an integer");
}

inline json divisor(const DivisorClass& d) {
    json boundary = json::object();
    for (const auto& [b, c] : d.boundary_coeffs()) boundary[b.name()] = rational(c);
    json psi = json::object();
    for (const auto& [i, c] : d.psi_coeffs()) psi[std::to_string(i)] = rational(c);
    return json{{"n", d.n()}, {"text", format_divisor(d)}, {"boundary", boundary}, {"psi", psi}};
}

inline json symmetric(const SymmetricDivisor& s) {
    json coeffs = json::object();
    for (int i = 2; i <= s.n() / 2; ++i) coeffs["B" + std::to_string(i)] = rational(s[i]);
    return json{{"n", s.n()}, {"text", format_symmetric(s)}, {"coeffs", coeffs}};
}

inline json certificate(const Certificate& c) {
    json coeffs = json::object();
    for (const auto& [b, v] : c.coeffs)
        if (v != 0) coeffs[b.name()] = rational(v);
    return json{{"n", c.n}, {"multiple", c.multiple}, {"coeffs", coeffs}};
}

inline Certificate certificate_from(const json& j, int default_n) {
    Certificate c;
    c.n = j.value("n", default_n);
    c.multiple = j.value("multiple", 1L);
    if (c.multiple < 1) throw std::invalid_argument("certificate multiple must be >= 1");
    if (!j.contains("coeffs") || !j.at("coeffs").is_object())
        throw std::invalid_argument("certificate needs an object \"coeffs\"");
    for (const auto& [name, value] : j.at("coeffs").items()) {
        auto bs = parse_boundary_list(name, c.n);
        if (bs.size() != 1) throw std::invalid_argument("bad boundary key '" + name + "'");
        c.coeffs[bs.front()] += rational_from(value);
    }
    return c;
}

inline json problem(const CertificateProblem& p) {
    json forbidden = json::array();
    for (const auto& b : p.forbidden) forbidden.push_back(b.name());
    return json{{"n", p.n},
                {"target", format_divisor(p.target)},
                {"forbidden", forbidden},
                {"require_integral", p.require_integral},
                {"m_max", p.m_max}};
}

inline json verify_report(const VerifyReport& r) {
    json failing = json::array();
    for (const auto& f : r.failing_fcurves)
        failing.push_back(json{{"fcurve", f.curve.name()},
                               {"certificate_pairing", rational(f.certificate_pairing)},
                               {"target_pairing", rational(f.target_pairing)}});
    json negative = json::array();
    for (const auto& b : r.negative_entries) negative.push_back(b.name());
    json forbidden = json::array();
    for (const auto& b : r.forbidden_used) forbidden.push_back(b.name());
    return json{{"verdict", r.verdict},
                {"normal_form_matches", r.normal_form_matches},
                {"pairing_matches", r.pairing_matches},
                {"class_matches", r.class_matches},
                {"nonnegative", r.nonnegative},
                {"support_ok", r.support_ok},
                {"failing_fcurves", failing},
                {"negative_entries", negative},
                {"forbidden_used", forbidden}};
}

inline json chamber(const ChamberReport& r) {
    return json{{"chamber_id", static_cast<int>(r.chamber_id)},
                {"chamber", std::string(chamber_name(r.chamber_id))},
                {"model_label", r.model_label},
                {"model_description", r.model_description},
                {"stable_base_locus", std::string(to_string(r.stable_base_locus))},
                {"on_wall", r.on_wall},
                {"walls", r.wall_names},
                {"adjacent_models", r.adjacent_models}};
}

inline json tree(const MarkedTree& t) {
    json vertices = json::array();
    for (int v = 0; v < t.vertex_count(); ++v) {
        json legs = json::array();
        for (const Leg* l : t.legs_at(v))
            legs.push_back(json{{"label", l->label()}, {"multiplicity", l->multiplicity()}, {"marks", l->marks}});
        vertices.push_back(json{{"id", t.name(v)}, {"legs", legs}});
    }
    json edges = json::array();
    for (auto [a, b] : t.edges()) edges.push_back(json::array({t.name(a), t.name(b)}));
    return json{{"vertices", vertices}, {"edges", edges}, {"n", t.n()}, {"text", format_tree(t)}};
}

/// Accepts the object produced by tree(); legs may give "marks" or "label" with "multiplicity".
inline MarkedTree tree_from(const json& j) {
    std::vector<std::string> names;
    std::vector<Leg> legs;
    for (const auto& v : j.at("vertices")) {
        int index = static_cast<int>(names.size());
        names.push_back(v.at("id").get<std::string>());
        for (const auto& l : v.value("legs", json::array())) {
            Leg leg;
            leg.vertex = index;
            if (l.contains("marks"))
                leg.marks = l.at("marks").get<std::vector<int>>();
            else
                leg.marks.assign(l.value("multiplicity", 1), l.at("label").get<int>());
            legs.push_back(std::move(leg));
        }
    }
    auto index = [&](const std::string& id) {
        for (std::size_t k = 0; k < names.size(); ++k)
            if (names[k] == id) return static_cast<int>(k);
        throw invalid_tree("edge names unknown vertex '" + id + "'");
    };
    std::vector<MarkedTree::Edge> edges;
    for (const auto& e : j.value("edges", json::array()))
        edges.emplace_back(index(e.at(0).get<std::string>()), index(e.at(1).get<std::string>()));
    return MarkedTree(std::move(names), std::move(edges), std::move(legs));
}

inline json reduction(const ReductionReport& r) {
    json contracted = json::array();
    for (const auto& c : r.contracted)
        contracted.push_back(json{{"vertices", c.vertices},
                                  {"attachments", c.attachments},
                                  {"marks", c.marks},
                                  {"reason", c.reason}});
    json out{{"result", tree(r.result)}, {"contracted", contracted}};
    if (!r.sigma_values.empty()) {
        json sig = json::object();
        for (const auto& [v, s] : r.sigma_values) sig[v] = s;
        out["sigma_values"] = sig;
    }
    out["notes"] = r.notes;
    return out;
}

}  // namespace m0n::json_io
