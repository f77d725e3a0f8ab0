#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

#include "g2cm/bounds.hpp"
#include "g2cm/cmfield.hpp"
#include "g2cm/galois_tables.hpp"
#include "g2cm/hasse_witt.hpp"
#include "g2cm/invariants.hpp"
#include "g2cm/papercheck.hpp"
#include "g2cm/theta.hpp"

using namespace g2cm;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_top_level(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[' || ch == '(') ++depth;
        if (ch == ']' || ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

std::vector<FieldElement> parse_coeffs(const FieldPtr& F, const std::string& text) {
    std::vector<FieldElement> r;
    for (const auto& s : split_top_level(text)) r.push_back(FieldElement::parse(F, s));
    return r;
}

json element(const FieldElement& x) {
    if (x.field()->is_rational() || x.field()->degree() == 1) return x.to_string();
    json a = json::array();
    for (auto c : x.coeffs()) a.push_back(std::to_string(c));
    return a;
}

json ball(const ComplexBall& z, int digits) {
    return {{"mid_re", z.re().to_string(digits)}, {"mid_im", z.im().to_string(digits)}, {"radius", z.rad().to_string(6)}};
}

json int_poly(const IntPoly& f) {
    json c = json::array();
    for (const auto& v : f) c.push_back(v.get_str());
    return {{"coefficients_low_first", c}, {"text", poly_to_string(f)}};
}

json shape(const SplittingShape& s) {
    json a = json::array();
    for (auto [e, f] : s) a.push_back(json::array({e, f}));
    return a;
}

std::string factored(const Integer& n) {
    std::string s;
    for (auto [q, k] : factor_integer(n)) s += (s.empty() ? "" : "*") + q.get_str() + (k > 1 ? "^" + std::to_string(k) : "");
    return s.empty() ? "1" : s;
}

json bound(const RationalBound& b) {
    return {{"value", b.value.to_string(20)}, {"regime", to_string(b.regime)},
            {"rounding", b.rounded_down ? "down" : "up"}};
}

json row_json(const TableRow& r) {
    json cols = json::object();
    for (const auto& c : r.columns) cols[c.field] = c.text;
    return {{"row", r.id},         {"I", r.I_text},          {"D", r.D_text},
            {"columns", cols},     {"type_norm", r.type_norm}, {"a", r.a},
            {"f", r.f},            {"superspecial", r.superspecial}};
}

json check_json(const ColumnCheck& c) {
    return {{"row", c.row}, {"field", c.field}, {"printed", c.printed}, {"computed", c.computed}};
}

QuarticCMField cm_field(const std::string& d, const std::string& alpha, const std::string& beta) {
    return QuarticCMField::make(Integer(d), Integer(alpha), Integer(beta));
}

PeriodMatrix matrix_from_json(const json& m, int digits) {
    auto part = [&](const char* key, const char* p) {
        if (!m.contains(key) || !m[key].contains(p)) throw UsageError(std::string("tau file: missing ") + key + "." + p);
        return m[key][p].get<std::string>();
    };
    return PeriodMatrix::parse({part("tau11", "re"), part("tau11", "im"), part("tau12", "re"), part("tau12", "im"),
                                part("tau22", "re"), part("tau22", "im")},
                               digits);
}

std::vector<PeriodMatrix> read_taus(const std::string& path, int digits) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
    std::vector<PeriodMatrix> out;
    if (doc.is_array()) {
        for (const auto& m : doc) out.push_back(matrix_from_json(m, digits));
    } else {
        out.push_back(matrix_from_json(doc, digits));
    }
    if (out.empty()) throw UsageError(path + ": no period matrices");
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genus-2 CM invariants, reduction types and bounds"};
    app.require_subcommand(1);
    int digits = 30;
    bool as_json = false;
    app.add_option("--prec", digits, "working precision in decimal digits")->check(CLI::Range(10, 2000));
    app.add_flag("--json", as_json, "machine-readable output where a text form exists");

    std::function<void()> action;
    int status = 0;

    std::string field_spec, coeff_text;
    auto* inv = app.add_subcommand("invariants", "Igusa-Clebsch, J, gamma and absolute invariants of a sextic");
    inv->add_option("--field", field_spec, "QQ, GF(p) or GF(p^k; modulus)")->required();
    inv->add_option("--sextic", coeff_text, "u0,...,u6 leading first")->required();
    inv->callback([&] {
        action = [&] {
            auto F = FieldDescriptor::parse(field_spec);
            auto c = parse_coeffs(F, coeff_text);
            if (c.size() != 7) throw UsageError("--sextic needs 7 coefficients");
            auto m = HyperellipticModel::from_leading_first(F, c);
            auto ic = igusa_clebsch(m);
            auto J = j_from_igusa_clebsch(ic);
            json out = {{"field", F->to_string()}, {"A", element(ic.A)}, {"B", element(ic.B)},
                        {"C", element(ic.C)},      {"D", element(ic.D)}};
            out["J"] = json::array();
            for (const auto& x : J.J) out["J"].push_back(element(x));
            try {
                auto g = gamma_from_j(J);
                out["gamma"] = json::array();
                for (const auto& x : g.g) out["gamma"].push_back(element(x));
            } catch (const DomainError&) {
                out["gamma"] = nullptr;
            }
            try {
                auto a = absolute_from_igusa_clebsch(ic);
                out["i"] = json::array({element(a.i1), element(a.i2), element(a.i3)});
            } catch (const DomainError&) {
                out["i"] = nullptr;
            }
            emit(out);
        };
    });

    auto* hwc = app.add_subcommand("hassewitt", "Hasse-Witt matrix and (a, f) of y^2 = f(x)");
    hwc->add_option("--field", field_spec)->required();
    hwc->add_option("--poly", coeff_text, "6 or 7 coefficients, leading first; a^N allowed")->required();
    hwc->callback([&] {
        action = [&] {
            auto F = FieldDescriptor::parse(field_spec);
            auto m = hasse_witt_from_coeffs(F, parse_coeffs(F, coeff_text));
            auto pr = af_numbers(m);
            json M = json::array();
            for (int i = 0; i < 2; ++i) M.push_back(json::array({element(m.M.at(i, 0)), element(m.M.at(i, 1))}));
            emit({{"field", F->to_string()},
                  {"M", M},
                  {"a", pr.a_number},
                  {"f", pr.f_number},
                  {"superspecial", pr.superspecial},
                  {"ordinary", pr.ordinary}});
        };
    });

    std::string d, alpha, beta, prime;
    auto field_opts = [&](CLI::App* s, bool need_p) {
        s->add_option("--d", d, "squarefree d > 1")->required();
        s->add_option("--alpha", alpha)->required();
        s->add_option("--beta", beta)->required();
        auto* o = s->add_option("--p", prime, "prime");
        if (need_p) o->required();
    };

    std::string cm_action = "info";
    auto* cm = app.add_subcommand("cmfield", "Galois type, discriminant, reflex field and splitting shapes");
    field_opts(cm, false);
    cm->add_option("action", cm_action)->check(CLI::IsMember({"info", "shapes"}));
    cm->callback([&] {
        action = [&] {
            auto K = cm_field(d, alpha, beta);
            if (cm_action == "shapes") {
                if (prime.empty()) throw UsageError("shapes needs --p");
                auto s = shape_profile(K, Integer(prime));
                json out = {{"p", prime}, {"K", shape(s.K)}, {"K+", shape(s.Kplus)}};
                out["K*"] = s.Kstar ? shape(*s.Kstar) : json(nullptr);
                out["K*+"] = s.Kstar_plus ? shape(*s.Kstar_plus) : json(nullptr);
                out["experimental"] = s.experimental;
                emit(out);
                return;
            }
            auto R = reflex_field(K);
            Integer disc = field_discriminant(K.minpoly());
            json reflex = {{"real_subfield_d", R.real_subfield_d.get_str()}, {"primitive", R.primitive}};
            if (R.primitive) {
                reflex["minpoly"] = int_poly(R.minpoly);
            } else {
                reflex["imaginary_discriminants"] = json::array();
                for (const auto& v : R.imaginary_discs) reflex["imaginary_discriminants"].push_back(v.get_str());
                reflex["marked"] = R.marked;
            }
            json out = {{"d", d},
                        {"alpha", alpha},
                        {"beta", beta},
                        {"galois_type", to_string(galois_type(K))},
                        {"minpoly", int_poly(K.minpoly())},
                        {"discriminant", disc.get_str()},
                        {"discriminant_factored", factored(disc)},
                        {"reflex", reflex}};
            if (!prime.empty()) {
                auto s = shape_profile(K, Integer(prime));
                out["shapes"] = {{"p", prime}, {"K", shape(s.K)}, {"K+", shape(s.Kplus)}};
            }
            emit(out);
        };
    });

    auto* pred = app.add_subcommand("predict", "Table rows compatible with the splitting of p");
    field_opts(pred, true);
    pred->callback([&] {
        action = [&] {
            auto r = predict(cm_field(d, alpha, beta), Integer(prime));
            json rows = json::array();
            for (const auto& x : r.rows) {
                json sh = json::object();
                for (const auto& [name, s] : x.shapes) sh[name] = shape(s);
                rows.push_back({{"row", x.row->id},
                                {"a", x.row->a},
                                {"f", x.row->f},
                                {"superspecial", x.row->superspecial},
                                {"shapes", sh},
                                {"type_norm", x.row->type_norm},
                                {"matches_marked_type", x.matches_marked_type}});
            }
            emit({{"galois_type", to_string(r.type)},
                  {"p", prime},
                  {"rows", rows},
                  {"ramification_N", r.ramification_N},
                  {"warnings", r.warnings}});
        };
    });

    std::string kind;
    bool verify = false;
    auto* tab = app.add_subcommand("tables", "Dump or verify a reduction table");
    tab->add_option("--kind", kind)->required()->check(CLI::IsMember({"cyclic", "biquadratic", "nongalois"}));
    tab->add_flag("--verify", verify, "recompute every shape column from the group data");
    tab->callback([&] {
        action = [&] {
            auto k = parse_table_kind(kind);
            if (!verify) {
                json rows = json::array();
                for (const auto& r : table_rows(k)) rows.push_back(row_json(r));
                emit({{"kind", kind}, {"rows", rows}});
                return;
            }
            auto v = verify_table(k);
            json mm = json::array(), lm = json::array();
            for (const auto& c : v.mismatches) mm.push_back(check_json(c));
            for (const auto& c : v.label_mismatches) lm.push_back(check_json(c));
            emit({{"kind", kind},
                  {"ok", v.ok()},
                  {"rows", v.rows},
                  {"columns", v.columns},
                  {"mismatches", mm},
                  {"label_mismatches", lm},
                  {"duplicate_pairs", v.duplicate_pairs},
                  {"missing_pairs", v.missing_pairs},
                  {"profile_errors", v.profile_errors}});
            if (!v.ok()) status = 1;
        };
    });

    auto* bnd = app.add_subcommand("bounds", "Valuation and deformation bounds");
    bnd->require_subcommand(1);
    std::string p_s, d_s, tr_s;
    long k = 1, e = 1, idx = 1, coef = 0, n = 1;
    auto arith_opts = [&](CLI::App* s) {
        s->add_option("--p", p_s)->required();
        s->add_option("--d", d_s, "discriminant of the real quadratic subfield data")->required();
        s->add_option("--trace", tr_s, "trace of r")->required();
    };
    auto* th = bnd->add_subcommand("theorem", "lower bound for val of a theta quotient");
    arith_opts(th);
    th->add_option("--k", k)->check(CLI::PositiveNumber);
    th->add_option("--e", e)->check(CLI::PositiveNumber);
    th->callback([&] {
        action = [&] {
            BoundParams bp{k, e, Integer(p_s), Integer(d_s), Integer(tr_s)};
            emit(bound(theta_valuation_bound(bp)));
        };
    });
    auto* cp = bnd->add_subcommand("classpoly", "lower bound for val of a class polynomial coefficient");
    arith_opts(cp);
    cp->add_option("--i", idx)->check(CLI::Range(1, 3));
    cp->add_option("--a", coef, "coefficient index from the top")->check(CLI::NonNegativeNumber);
    cp->add_option("--e", e)->check(CLI::PositiveNumber);
    cp->callback([&] {
        action = [&] {
            emit(bound(class_poly_coeff_bound(static_cast<int>(idx), coef, Integer(p_s), Integer(d_s), Integer(tr_s), e)));
        };
    });
    auto* ci = bnd->add_subcommand("classinv", "bound for a class invariant");
    arith_opts(ci);
    ci->add_option("--estar", e, "ramification index in the reflex field")->check(CLI::PositiveNumber);
    ci->callback([&] {
        action = [&] { emit(bound(class_invariant_bound(e, Integer(p_s), Integer(d_s), Integer(tr_s)))); };
    });
    auto* df = bnd->add_subcommand("deform", "index bounds for deformations");
    df->add_option("--p", p_s)->required();
    df->add_option("--e", e)->check(CLI::PositiveNumber);
    df->add_option("--n", n)->check(CLI::PositiveNumber);
    df->callback([&] {
        action = [&] {
            auto b = deformation_index_bounds(Integer(p_s), e, n);
            emit({{"lower_exponent", b.lower_exponent.get_str()},
                  {"upper_exponent", b.upper_exponent},
                  {"regime", to_string(b.regime)}});
        };
    });
    std::string fixture_id, fixture_dir = default_fixture_dir();
    auto* vf = bnd->add_subcommand("verify-fixture", "check a shipped class polynomial against the bounds at p");
    vf->add_option("--fixture", fixture_id)->required()->check(CLI::IsMember({"cyclic17", "dihedral11"}));
    vf->add_option("--prime", p_s)->required();
    vf->add_option("--fixture-dir", fixture_dir);
    vf->callback([&] {
        action = [&] {
            auto rep = verify_fixture(load_fixture(fixture_id, fixture_dir), Integer(p_s));
            json checks = json::array();
            for (const auto& c : rep.checks) {
                checks.push_back({{"poly", c.poly},
                                  {"a", c.a},
                                  {"valuation", c.valuation ? json(*c.valuation) : json(nullptr)},
                                  {"bound", c.bound},
                                  {"bound_ok", c.bound_ok},
                                  {"integral_ok", c.integral_ok}});
            }
            emit({{"fixture", rep.fixture},
                  {"p", rep.p.get_str()},
                  {"e", rep.e},
                  {"predicted_rows", rep.predicted_rows},
                  {"superspecial_predicted", rep.superspecial_predicted},
                  {"in_denominator", rep.in_denominator},
                  {"pass", rep.pass},
                  {"checks", checks}});
            if (!rep.pass) status = 1;
        };
    });

    std::string tau_file, theta_action = "invariants";
    auto* tc = app.add_subcommand("theta", "Theta constants and invariants from period matrices");
    tc->add_option("--tau", tau_file, "JSON period matrix file")->required();
    tc->add_option("--prec", digits)->check(CLI::Range(10, 2000));
    tc->add_option("action", theta_action)->check(CLI::IsMember({"constants", "bigtheta", "rosenhain", "invariants"}));
    tc->callback([&] {
        action = [&] {
            json out = json::array();
            for (const auto& tau : read_taus(tau_file, digits)) {
                json r;
                if (theta_action == "constants") {
                    r = json::object();
                    for (const auto& ch : ThetaChar::even()) r[ch.to_string()] = ball(theta_constant(tau, ch), digits);
                } else if (theta_action == "bigtheta") {
                    r = ball(big_theta(tau), digits);
                } else {
                    auto v = theta_action == "rosenhain" ? rosenhain(tau) : invariants_from_tau(tau);
                    r = json::array({ball(v[0], digits), ball(v[1], digits), ball(v[2], digits)});
                }
                out.push_back(r);
            }
            emit(out);
        };
    });

    std::string taus_file, denom = "auto", primes_text, tol_text;
    auto* cpc = app.add_subcommand("classpoly", "Class polynomials with rational coefficients from period matrices");
    cpc->add_option("--taus", taus_file, "JSON list of period matrices")->required();
    cpc->add_option("--denom", denom, "auto or a positive integer");
    cpc->add_option("--prec", digits)->check(CLI::Range(10, 2000));
    cpc->add_option("--d", d);
    cpc->add_option("--alpha", alpha);
    cpc->add_option("--beta", beta);
    cpc->add_option("--primes", primes_text, "primes for the automatic denominator, comma separated");
    cpc->add_option("--tol", tol_text, "rounding tolerance, default 10^-(prec/2)");
    cpc->callback([&] {
        action = [&] {
            DenominatorSpec spec;
            if (denom == "auto") {
                if (d.empty() || alpha.empty() || beta.empty() || primes_text.empty())
                    throw UsageError("--denom auto needs --d, --alpha, --beta and --primes");
                spec.field = cm_field(d, alpha, beta);
                for (const auto& s : split_top_level(primes_text)) spec.primes.push_back(Integer(s));
            } else {
                Integer B;
                if (B.set_str(denom, 10) != 0 || B <= 0) throw UsageError("--denom must be auto or a positive integer");
                spec.fixed = B;
            }
            Real tol = tol_text.empty() ? Real("1e-" + std::to_string(digits / 2), 64) : Real(tol_text, 64);
            auto res = class_polynomial(read_taus(taus_file, digits), spec, tol);
            json out = json::object();
            for (int i = 0; i < 3; ++i) {
                json c = json::array(), b = json::array();
                for (const auto& q : res.h[i].coeffs) c.push_back(q.get_str());
                for (const auto& q : res.h[i].denominators) b.push_back(q.get_str());
                out["h" + std::to_string(i + 1)] = {
                    {"coefficients", c}, {"denominator_bounds", b}, {"max_residual", res.h[i].max_residual.to_string(6)}};
            }
            emit(out);
        };
    });

    std::string only;
    auto* pc = app.add_subcommand("papercheck", "Run every reference example check");
    pc->add_option("--only", only, "a group (hassewitt, invariants, cmfield, tables, predict, bounds, theta, "
                                   "properties) or a single check name");
    pc->callback([&] {
        action = [&] {
            auto results = run_reference_checks(only);
            bool all = true;
            for (const auto& r : results) all = all && r.pass;
            if (as_json) {
                json arr = json::array();
                for (const auto& r : results)
                    arr.push_back({{"check", r.name},
                                   {"criterion", r.criterion},
                                   {"pass", r.pass},
                                   {"seconds", std::round(r.seconds * 1000) / 1000},
                                   {"detail", r.detail}});
                emit({{"pass", all}, {"checks", arr}});
            } else {
                for (const auto& r : results) {
                    char t[32];
                    std::snprintf(t, sizeof t, "%8.3fs", r.seconds);
                    std::cout << (r.pass ? "PASS " : "FAIL ") << t << "  " << r.name << ": " << r.detail << "\n";
                }
                std::cout << (all ? "all checks passed" : "some checks failed") << "\n";
            }
            if (!all) status = 1;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: malformed number\n";
        return 2;
    } catch (const std::exception& e) {
        emit({{"error", {{"kind", "domain"}, {"message", e.what()}}}});
        return 1;
    }
    return status;
}
