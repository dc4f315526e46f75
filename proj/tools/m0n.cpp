// m0n: command line front end for the exact divisor/curve calculus on M0,n.

#include <CLI11.hpp>

#include "m0n/builtin_certificates.hpp"
#include "m0n/certsearch.hpp"
#include "m0n/chamber.hpp"
#include "m0n/expr.hpp"
#include "m0n/fcurve.hpp"
#include "m0n/json_io.hpp"
#include "m0n/keel.hpp"
#include "m0n/reduction.hpp"
#include "m0n/reference_checks.hpp"
#include "m0n/strata.hpp"
#include "m0n/symmetric.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <variant>

using namespace m0n;
using json_io::json;

namespace {

struct Failure : std::runtime_error {
    Failure(std::string code, const std::string& message) : std::runtime_error(message), code(std::move(code)) {}
    std::string code;
};

struct Outcome {
    std::string status = "ok";  // ok | infeasible | error
    json result = json::object();
    std::string error_code, message;

    int exit_code() const { return status == "ok" ? 0 : status == "infeasible" ? 2 : 1; }
};

struct Globals {
    int n = 7;
    std::string format = "text";
    std::uint64_t seed = 0;
};

// ---- text rendering: the JSON payload flattened to "path: value" lines ----

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool all_scalars(const json& a) {
    for (const auto& x : a)
        if (x.is_structured()) return false;
    return true;
}

void flatten(const json& v, const std::string& path, std::ostringstream& os) {
    if (v.is_object()) {
        if (v.empty()) os << path << ": {}\n";
        for (const auto& [k, x] : v.items()) flatten(x, path.empty() ? k : path + "." + k, os);
    } else if (v.is_array()) {
        if (all_scalars(v)) {
            os << path << ": ";
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
            os << "\n";
        } else {
            for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", os);
        }
    } else {
        os << path << ": " << scalar_text(v) << "\n";
    }
}

void emit(const std::string& command, const Outcome& out, const Globals& g) {
    json doc{{"command", command}, {"status", out.status}};
    if (out.status == "error") doc["error"] = json{{"code", out.error_code}, {"message", out.message}};
    if (!out.result.empty()) doc["result"] = out.result;
    if (g.format == "json") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ostringstream os;
    flatten(doc, "", os);
    (out.status == "error" ? std::cerr : std::cout) << os.str();
}

// ---- argument helpers ----

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure("io_error", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

using ParsedCurve = std::variant<CurveClass, FCurve>;

/// `Fa,b,c,d`, `F{1}{2}{3}{4,5,6,7}`, `C4` or `A`.
ParsedCurve parse_curve(const std::string& text, int n) {
    auto bad = [&](const std::string& why) { return Failure("parse_error", "curve '" + text + "': " + why); };
    if (text == "A") return CurveClass::curve_a(n);
    if (text.size() >= 2 && text[0] == 'C') return CurveClass::sweeping(n, std::stoi(text.substr(1)));
    if (text.size() >= 2 && text[0] == 'F' && text[1] == '{') {
        std::array<PointMask, 4> blocks{};
        std::size_t pos = 1;
        for (int b = 0; b < 4; ++b) {
            if (pos >= text.size() || text[pos] != '{') throw bad("expected four {...} blocks");
            auto close = text.find('}', pos);
            if (close == std::string::npos) throw bad("unterminated block");
            std::stringstream items(text.substr(pos + 1, close - pos - 1));
            std::string item;
            while (std::getline(items, item, ',')) {
                int e = std::stoi(item);
                if (e < 1 || e > n) throw bad("point " + item + " outside [1," + std::to_string(n) + "]");
                blocks[b] |= PointMask{1} << (e - 1);
            }
            pos = close + 1;
        }
        if (pos != text.size()) throw bad("trailing characters");
        return FCurve(n, blocks);
    }
    if (text.size() >= 2 && text[0] == 'F') {
        std::array<int, 4> sizes{};
        std::stringstream items(text.substr(1));
        std::string item;
        int k = 0;
        while (std::getline(items, item, ',')) {
            if (k == 4) throw bad("expected four parts");
            sizes[k++] = std::stoi(item);
        }
        if (k != 4) throw bad("expected four parts");
        return CurveClass::fcurve(n, sizes);
    }
    throw bad("expected Fa,b,c,d, F{..}{..}{..}{..}, Cj or A");
}

std::vector<Rational> parse_weights(const std::string& text, int n) {
    std::vector<Rational> out;
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) out.push_back(parse_rational(item));
    if (out.size() == 1 && n > 1) out.assign(n, out.front());
    if (static_cast<int>(out.size()) != n)
        throw Failure("invalid_weights", "expected 1 or " + std::to_string(n) + " weights, got " + std::to_string(out.size()));
    return out;
}

MarkedTree load_tree(const std::string& path) {
    std::string text = read_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return json_io::tree_from(json::parse(text));
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    return parse_tree(text.substr(first == std::string::npos ? 0 : first));
}

CertificateProblem make_problem(int n, const std::string& target, const std::string& forbid, bool integral, long mmax) {
    CertificateProblem p;
    p.n = n;
    p.target = parse_divisor(target, n);
    if (!forbid.empty())
        for (const auto& b : parse_boundary_list(forbid, n)) p.forbidden.insert(b);
    p.require_integral = integral;
    p.m_max = mmax;
    p.validate();
    return p;
}

// ---- commands ----

Outcome cmd_pair(const Globals& g, const std::string& curve_text, const std::string& divisor_text) {
    Outcome out;
    auto curve = parse_curve(curve_text, g.n);
    auto e = parse_expression(divisor_text);
    Rational value;
    std::string method;
    if (auto f = std::get_if<FCurve>(&curve)) {
        value = pair_fcurve(*f, to_divisor_class(e, g.n));
        method = "F-curve pairing";
    } else {
        const auto& c = std::get<CurveClass>(curve);
        if (e.is_symmetric()) {
            value = pair_curve(c, to_symmetric(e, g.n));
            method = "symmetric pairing";
        } else if (auto t = std::get_if<CurveClass::FType>(&c.kind())) {
            auto rep = FCurve::of_type(g.n, t->sizes);
            value = pair_fcurve(rep, to_divisor_class(e, g.n));
            method = "representative " + rep.name();
        } else {
            throw Failure("not_symmetric", c.name() + " is only paired with symmetric divisors");
        }
    }
    out.result = json{{"n", g.n}, {"curve", curve_text}, {"divisor", divisor_text}, {"value", json_io::rational(value)},
                      {"method", method}};
    return out;
}

Outcome cmd_eq(const Globals& g, const std::string& lhs, const std::string& rhs) {
    Outcome out;
    DivisorClass a = parse_divisor(lhs, g.n), b = parse_divisor(rhs, g.n);
    bool nf = class_equal(a, b);
    bool pairing = true;
    std::string witness;
    for (const auto& f : all_fcurves(g.n))
        if (pair_fcurve(f, a) != pair_fcurve(f, b)) {
            pairing = false;
            witness = f.name();
            break;
        }
    out.result = json{{"n", g.n}, {"lhs", format_divisor(a)}, {"rhs", format_divisor(b)}, {"equal", nf && pairing},
                      {"normal_form_equal", nf}, {"pairing_equal", pairing}};
    if (!witness.empty()) out.result["witness"] = witness;
    return out;
}

Outcome cmd_nf(const Globals& g, const std::string& divisor) {
    Outcome out;
    DivisorClass d = parse_divisor(divisor, g.n);
    out.result = json{{"input", format_divisor(d)}, {"normal_form", json_io::divisor(normal_form(d))}};
    return out;
}

Outcome cmd_relations(const Globals& g, int sample) {
    Outcome out;
    auto basis = relation_basis(g.n);
    json free = json::array();
    for (auto c : basis->free_columns()) free.push_back(basis->boundaries()[c].name());
    out.result = json{{"n", g.n},
                      {"boundaries", basis->boundaries().size()},
                      {"relations", basis->relations().size()},
                      {"rank", basis->rank()},
                      {"quotient_dimension", basis->quotient_dimension()},
                      {"expected_dimension", picard_dimension(g.n)},
                      {"free_coordinates", free}};
    if (sample > 0) {
        std::mt19937_64 rng(g.seed);
        std::size_t nonzero = 0, total = 0;
        for (const auto& rel : basis->relations())
            for (int k = 0; k < sample; ++k) {
                nonzero += pair_fcurve(random_fcurve(g.n, rng), rel) != 0;
                ++total;
            }
        out.result["sample"] = json{{"seed", g.seed}, {"pairings", total}, {"nonzero", nonzero}};
    }
    return out;
}

Outcome cmd_table(const Globals& g) {
    Outcome out;
    if (g.n != 7) throw Failure("invalid_argument", "the intersection table is defined for n = 7");
    auto t = intersection_table(7);
    json rows = json::array();
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        json values = json::array();
        for (const auto& v : t.entries[r]) values.push_back(json_io::rational(v));
        rows.push_back(json{{"curve", t.rows[r]}, {"values", values}});
    }
    out.result = json{{"columns", t.columns}, {"rows", rows}};
    return out;
}

Outcome cmd_chamber(const Globals& g, const std::string& divisor) {
    Outcome out;
    auto s = parse_symmetric(divisor, g.n);
    out.result = json{{"divisor", json_io::symmetric(s)}, {"chamber", json_io::chamber(chamber_lookup(s))}};
    return out;
}

Outcome cmd_nef(const Globals& g, const std::string& divisor) {
    Outcome out;
    auto s = parse_symmetric(divisor, g.n);
    json negative = json::array();
    for (const auto& type : fcurve_types(g.n)) {
        auto c = CurveClass::fcurve(g.n, type);
        Rational v = pair_curve(c, s);
        if (v < 0) negative.push_back(json{{"curve", c.name()}, {"value", json_io::rational(v)}});
    }
    out.result = json{{"divisor", json_io::symmetric(s)}, {"nef", nef_check(s)}, {"negative_fcurves", negative}};
    return out;
}

Outcome cmd_cert_find(const Globals& g, const std::string& target, const std::string& forbid, bool integral, long mmax) {
    Outcome out;
    auto p = make_problem(g.n, target, forbid, integral, mmax);
    auto found = find_certificate(p);
    out.result = json{{"problem", json_io::problem(p)}, {"pivots", found.pivots}};
    if (!found.certificate) {
        out.status = "infeasible";
        out.result["reason"] = found.reason;
        return out;
    }
    out.result["certificate"] = json_io::certificate(*found.certificate);
    out.result["verification"] = json_io::verify_report(verify_certificate(p, *found.certificate));
    return out;
}

Outcome cmd_cert_verify(const Globals& g, int builtin, const std::string& cert_file, const std::string& target,
                        const std::string& forbid, bool integral, long mmax) {
    Outcome out;
    CertificateProblem p;
    Certificate c;
    std::string name;
    if (builtin > 0) {
        auto all = builtin_certificates();
        if (builtin > static_cast<int>(all.size()))
            throw Failure("invalid_argument", "builtin index must be 1.." + std::to_string(all.size()));
        p = all[builtin - 1].problem;
        c = all[builtin - 1].certificate;
        name = all[builtin - 1].name;
    } else {
        if (cert_file.empty()) throw Failure("usage", "cert verify needs --builtin K or --cert FILE");
        if (target.empty()) throw Failure("usage", "cert verify --cert needs --target");
        p = make_problem(g.n, target, forbid, integral, mmax);
        c = json_io::certificate_from(json::parse(read_file(cert_file)), g.n);
        name = cert_file;
    }
    auto rep = verify_certificate(p, c);
    out.result = json{{"name", name}, {"problem", json_io::problem(p)}, {"certificate", json_io::certificate(c)},
                      {"report", json_io::verify_report(rep)}};
    if (!rep.verdict) {
        out.status = "error";
        out.error_code = "verification_failed";
        out.message = "certificate does not verify";
    }
    return out;
}

Outcome cmd_reduce(const std::string& tree_file, const std::string& weights, const std::string& gamma, int d,
                   const std::string& mode) {
    Outcome out;
    MarkedTree t = load_tree(tree_file);
    int marks = 0;
    for (const auto& l : t.legs())
        for (int m : l.marks) marks = std::max(marks, m);
    WeightData a{parse_weights(weights, marks), parse_rational(gamma), d};
    ReductionReport r = mode == "hassett" ? hassett_reduce(t, a) : veronese_reduce(t, a);
    out.result = json{{"mode", mode}, {"input", format_tree(t)}, {"report", json_io::reduction(r)}};
    return out;
}

Outcome cmd_strata(const Globals& g, int i, bool list) {
    Outcome out;
    auto strata = enumerate_strata(g.n, i);
    out.result = json{{"n", g.n}, {"i", i}, {"count", strata.size()}, {"closed_form", strata_count(g.n, i)}};
    if (list) {
        json items = json::array();
        for (const auto& s : strata) {
            json item{{"pairs", s.name()}};
            if (auto f = s.fcurve()) item["fcurve"] = f->name();
            items.push_back(item);
        }
        out.result["strata"] = items;
    }
    return out;
}

Outcome cmd_verify_paper(bool corrupt, bool sequential, std::string& text) {
    Outcome out;
    checks::CheckOptions opt;
    opt.corrupt_builtin = corrupt;
    opt.parallel = !sequential;
    auto results = checks::run_all(opt);
    json items = json::array();
    int passed = 0;
    for (const auto& r : results) {
        items.push_back(json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"details", r.details}});
        passed += r.passed;
    }
    out.result = json{{"checks", items}, {"passed", passed}, {"total", results.size()}};
    text = checks::format_results(results);
    if (passed != static_cast<int>(results.size())) {
        out.status = "error";
        out.error_code = "checks_failed";
        out.message = std::to_string(results.size() - passed) + " check(s) failed";
    }
    return out;
}

template <class F>
Outcome guarded(F&& f) {
    Outcome out;
    auto fail = [&](const std::string& code, const std::string& msg) {
        out = Outcome{};
        out.status = "error";
        out.error_code = code;
        out.message = msg;
    };
    try {
        out = f();
    } catch (const Failure& e) {
        fail(e.code, e.what());
    } catch (const parse_error& e) {
        fail("parse_error", e.what());
    } catch (const invalid_tree& e) {
        fail("invalid_tree", e.what());
    } catch (const invalid_weights& e) {
        fail("invalid_weights", e.what());
    } catch (const invalid_boundary& e) {
        fail("invalid_boundary", e.what());
    } catch (const mismatched_n& e) {
        fail("mismatched_n", e.what());
    } catch (const json::exception& e) {
        fail("json_error", e.what());
    } catch (const std::invalid_argument& e) {
        fail("invalid_argument", e.what());
    } catch (const std::exception& e) {
        fail("internal_error", e.what());
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact divisor and curve calculus on M0,n"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--n", g.n, "number of marked points")->check(CLI::Range(4, static_cast<int>(kMaxPoints)));
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", g.seed, "seed for sampled checks");

    std::string curve, divisor, lhs, rhs, target, forbid, cert_file, tree_file, weights = "1", gamma = "0",
                                                                          mode = "hassett";
    bool integral = false, list = false, corrupt = false, sequential = false;
    long mmax = 60;
    int builtin = 0, sample = 0, d = 1, strata_i = 1;

    auto* pair = app.add_subcommand("pair", "intersection number of a curve and a divisor");
    pair->add_option("--curve", curve, "Fa,b,c,d | F{..}{..}{..}{..} | Cj | A")->required();
    pair->add_option("--divisor", divisor)->required();

    auto* eq = app.add_subcommand("eq", "class equality by normal form and by F-curve pairing");
    eq->add_option("--lhs", lhs)->required();
    eq->add_option("--rhs", rhs)->required();

    auto* nf = app.add_subcommand("nf", "normal form modulo the boundary relations");
    nf->add_option("--divisor", divisor)->required();

    auto* rel = app.add_subcommand("relations", "relation basis summary");
    rel->add_option("--sample", sample, "pair every relation with this many random F-curves (uses --seed)");

    auto* table = app.add_subcommand("table", "intersection table on M0,7");

    auto* chamber = app.add_subcommand("chamber", "birational model and stable base locus of a symmetric divisor");
    chamber->add_option("--divisor", divisor)->required();

    auto* nef = app.add_subcommand("nef", "nefness of a symmetric divisor against all F-curve types");
    nef->add_option("--divisor", divisor)->required();

    auto* cert = app.add_subcommand("cert", "effective boundary expressions avoiding given boundaries");
    cert->require_subcommand(1);
    cert->fallthrough();
    auto* find = cert->add_subcommand("find", "search by exact linear programming");
    auto* verify = cert->add_subcommand("verify", "check a certificate");
    for (auto* sub : {find, verify}) {
        sub->add_option("--target", target, "boundary-supported divisor");
        sub->add_option("--forbid", forbid, "comma separated boundaries, e.g. B{1,2},B{3,4,5}");
        sub->add_flag("--integral", integral, "require integral coefficients (scaling by a multiple)");
        sub->add_option("--mmax", mmax, "largest allowed multiple");
    }
    find->get_option("--target")->required();
    verify->add_option("--builtin", builtin, "published certificate 1..3");
    verify->add_option("--cert", cert_file, "certificate JSON file");

    auto* reduce = app.add_subcommand("reduce", "Hassett or Veronese reduction of a dual graph");
    reduce->add_option("--tree", tree_file, "tree file (text or JSON)")->required();
    reduce->add_option("--weights", weights, "one weight for all marks, or a comma separated list");
    reduce->add_option("--gamma", gamma);
    reduce->add_option("--d", d);
    reduce->add_option("--mode", mode)->check(CLI::IsMember({"hassett", "veronese"}));

    auto* strata = app.add_subcommand("strata", "sets of i disjoint pairs (components of B2^i)");
    strata->add_option("--i", strata_i)->required();
    strata->add_flag("--list", list);

    auto* vp = app.add_subcommand("verify-paper", "run the acceptance checks");
    vp->add_flag("--corrupt-builtin", corrupt, "fault injection: perturb the first published certificate");
    vp->add_flag("--sequential", sequential, "run checks one after another");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        Outcome out;
        out.status = "error";
        out.error_code = "usage";
        out.message = e.what();
        emit("usage", out, g);
        return 1;
    }

    std::string name = app.get_subcommands().front()->get_name();
    Outcome out;
    std::string vp_text;
    if (*pair) out = guarded([&] { return cmd_pair(g, curve, divisor); });
    else if (*eq) out = guarded([&] { return cmd_eq(g, lhs, rhs); });
    else if (*nf) out = guarded([&] { return cmd_nf(g, divisor); });
    else if (*rel) out = guarded([&] { return cmd_relations(g, sample); });
    else if (*table) out = guarded([&] { return cmd_table(g); });
    else if (*chamber) out = guarded([&] { return cmd_chamber(g, divisor); });
    else if (*nef) out = guarded([&] { return cmd_nef(g, divisor); });
    else if (*find) {
        name = "cert find";
        out = guarded([&] { return cmd_cert_find(g, target, forbid, integral, mmax); });
    } else if (*verify) {
        name = "cert verify";
        out = guarded([&] { return cmd_cert_verify(g, builtin, cert_file, target, forbid, integral, mmax); });
    } else if (*reduce) out = guarded([&] { return cmd_reduce(tree_file, weights, gamma, d, mode); });
    else if (*strata) out = guarded([&] { return cmd_strata(g, strata_i, list); });
    else if (*vp) {
        out = guarded([&] { return cmd_verify_paper(corrupt, sequential, vp_text); });
        if (g.format == "text" && !vp_text.empty()) {
            std::cout << vp_text;
            if (out.status == "error") std::cerr << "error: " << out.error_code << ": " << out.message << "\n";
            return out.exit_code();
        }
    }
    emit(name, out, g);
    return out.exit_code();
}
