#include "g2cm/papercheck.hpp"

#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "g2cm/bounds.hpp"
#include "g2cm/cmfield.hpp"
#include "g2cm/galois_tables.hpp"
#include "g2cm/hasse_witt.hpp"
#include "g2cm/invariants.hpp"
#include "g2cm/theta.hpp"

namespace g2cm {

namespace {

struct Collector {
    std::vector<std::string> fails;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) fails.push_back(what);
    }
    CheckOutcome done(const std::string& summary) const {
        std::ostringstream os;
        if (fails.empty()) {
            os << summary;
        } else {
            os << fails.size() << " failed: ";
            for (size_t i = 0; i < fails.size() && i < 6; ++i) os << (i ? "; " : "") << fails[i];
        }
        for (const auto& n : notes) os << " | " << n;
        return {fails.empty(), os.str()};
    }
};

std::vector<FieldElement> elements(const FieldPtr& F, const std::string& list) {
    std::vector<FieldElement> r;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) r.push_back(FieldElement::parse(F, item));
    return r;
}

HasseWittMatrix hw(const FieldPtr& F, const std::string& list) { return hasse_witt_from_coeffs(F, elements(F, list)); }

std::pair<int, int> af(const HasseWittMatrix& m) {
    auto r = af_numbers(m);
    return {r.a_number, r.f_number};
}

std::string af_str(std::pair<int, int> p) {
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

std::vector<Integer> primes_between(long lo, long hi) {
    std::vector<Integer> r;
    Integer p = lo - 1;
    for (;;) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p > hi) break;
        r.push_back(p);
    }
    return r;
}

std::set<std::string> row_ids(const PredictResult& r) {
    std::set<std::string> s;
    for (const auto& p : r.rows) s.insert(p.row->id);
    return s;
}

std::set<std::pair<int, int>> row_profiles(const PredictResult& r) {
    std::set<std::pair<int, int>> s;
    for (const auto& p : r.rows) s.insert({p.row->a, p.row->f});
    return s;
}

std::string join(const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
    return "{" + out + "}";
}

const QuarticCMField& cyclic_field() {
    static const QuarticCMField K = QuarticCMField::make(17, -119, 28);
    return K;
}

const QuarticCMField& dihedral_field() {
    static const QuarticCMField K = QuarticCMField::make(11, -67, 20);
    return K;
}

const char* kF89 = "GF(89^2; a^2+82a+3)";
const char* kF313 = "GF(313^2; a^2+310a+10)";
const char* kF47 = "GF(47^2; a^2+45a+5)";
const char* kF13 = "GF(13^2; a^2+12a+2)";

const std::vector<std::string> kCurves89 = {
    "a^5245,a^2244,a^7129,a^1567,a^2060,a^5783,a^3905", "a^2667,a^795,a^1956,a^5619,a^5331,a^7272,52",
    "a^6464,a^795,a^4574,a^2946,a^1544,a^6684,a^803", "a^132,a^3403,a^2326,a^3493,a^5184,a^1943,a^4418"};
const char* kCurve313 = "a^20046,a^18815,a^77496,a^26504,a^19266,a^53721,a^1332";
const std::vector<std::string> kOrdinary47 = {
    "a^829,a^1842,a^622,a^1262,a^956,a^398,a^1255", "a^929,a^1219,a^1483,a^1511,a^251,a^224,a^1437",
    "a^1852,a^2038,a^1790,a^1078,a^1166,a^1634,a^1518", "a^1783,a^892,a^1454,a^665,a^1014,a^871,a^1754"};
const char* kSuperspecial47Prime = "40,22,43,1,29,8,28";
const std::vector<std::string> kSuperspecial47 = {"a^487,a^977,a^1698,a^1530,a^1790,a^1618,a^1063",
                                                  "a^809,a^1759,a^318,a^1254,a^226,a^974,a^1385"};
const char* kCurve13 = "a^99,a^47,a^156,a^75,a^27,1,a^148";

bool matrix_is(const HasseWittMatrix& m, const FieldPtr& F, const std::array<const char*, 4>& c) {
    return m.M.at(0, 0) == FieldElement::parse(F, c[0]) && m.M.at(0, 1) == FieldElement::parse(F, c[1]) &&
           m.M.at(1, 0) == FieldElement::parse(F, c[2]) && m.M.at(1, 1) == FieldElement::parse(F, c[3]);
}

CheckOutcome check_x5plus1() {
    Collector c;
    int n = 0;
    for (const auto& P : primes_between(3, 99)) {
        long p = P.get_si();
        if (p == 5) continue;
        auto got = af(hw(FieldDescriptor::prime(p), "1,0,0,0,0,1"));
        std::pair<int, int> want = p % 5 == 1 ? std::pair{0, 2} : p % 5 == 4 ? std::pair{2, 0} : std::pair{1, 0};
        c.expect(got == want, "p=" + std::to_string(p) + " gives " + af_str(got) + " expected " + af_str(want));
        ++n;
    }
    c.expect(hw(FieldDescriptor::prime(5), "1,0,0,0,-1,0").M.is_zero(), "x^5-x over GF(5) has nonzero M");
    return c.done(std::to_string(n) + " primes match the case list by p mod 5; x^5-x over GF(5) has M = 0");
}

CheckOutcome check_cm_curve_hw() {
    Collector c;
    std::vector<Integer> f = {-8, -64, 1120, 4760, -48400, 22627, -91839};
    auto lift = hasse_witt_integer_lift(f, 5);
    std::array<Integer, 4> want = {Integer("2352249680"), Integer("-3064600880"), Integer(-219520), Integer(1419520)};
    c.expect(lift == want, "integer coefficients of f^2 differ");
    for (std::uint64_t p : {5u, 13u})
        for (const auto& v : hasse_witt_integer_lift(f, p))
            c.expect(v % Integer(p) == 0, "M mod " + std::to_string(p) + " nonzero");
    return c.done("c4, c3, c9, c8 of f^2 = 2352249680, -3064600880, -219520, 1419520; M = 0 mod 5 and mod 13");
}

CheckOutcome check_x6plus16() {
    Collector c;
    auto F = FieldDescriptor::prime(17);
    auto m = HyperellipticModel::from_leading_first(F, elements(F, "1,0,0,0,0,0,16"));
    auto ic = igusa_clebsch(m);
    IgusaClebsch target{FieldElement::from_int(F, 1), FieldElement::from_int(F, 14), FieldElement::from_int(F, 8),
                        FieldElement::from_int(F, 13)};
    c.expect(is_isomorphic(ic, target), "Igusa-Clebsch not weighted-projectively equal to (1,14,8,13)");
    auto a = absolute_from_igusa_clebsch(ic);
    c.expect(a.i1 == FieldElement::from_int(F, -13) && a.i2 == FieldElement::from_int(F, -12) &&
                 a.i3 == FieldElement::from_int(F, -2),
             "absolute invariants differ from (-13,-12,-2)");
    c.expect(hasse_witt(m.poly()).M.is_zero(), "M nonzero");
    return c.done("IC ~ (1,14,8,13), i = (-13,-12,-2), M = 0");
}

CheckOutcome check_curves89() {
    Collector c;
    auto F = FieldDescriptor::parse(kF89);
    for (size_t i = 0; i < kCurves89.size(); ++i) {
        auto m = hw(F, kCurves89[i]);
        auto p = af(m);
        c.expect(m.M.rank() == 1 && p.second == 1, "curve " + std::to_string(i + 1) + " profile " + af_str(p));
        if (i == 0)
            c.expect(matrix_is(m, F, {"a^7555", "a^7787", "a^950", "a^1182"}), "curve 1 c88, c87, c177, c176 differ");
    }
    return c.done("4 curves with rank M = rank M^(p)M = 1; c88, c87, c177, c176 match for curve 1");
}

CheckOutcome check_curve313() {
    Collector c;
    auto F = FieldDescriptor::parse(kF313);
    auto m = hw(F, kCurve313);
    c.expect(matrix_is(m, F, {"a^91834", "a^18900", "a^62990", "a^88024"}), "c312, c311, c625, c624 differ");
    auto p = af(m);
    c.expect(m.M.rank() == 1 && p.second == 1, "profile " + af_str(p));
    return c.done("c coefficients match the printed powers; ranks (1,1)");
}

CheckOutcome check_superspecial47() {
    Collector c;
    c.expect(hw(FieldDescriptor::prime(47), kSuperspecial47Prime).M.is_zero(), "curve over GF(47) has M != 0");
    auto F = FieldDescriptor::parse(kF47);
    for (size_t i = 0; i < kSuperspecial47.size(); ++i)
        c.expect(hw(F, kSuperspecial47[i]).M.is_zero(), "curve " + std::to_string(i + 1) + " over GF(47^2) has M != 0");
    return c.done("M = 0 for the curve over GF(47) and both curves over GF(47^2)");
}

CheckOutcome check_curve13() {
    Collector c;
    auto m = hw(FieldDescriptor::parse(kF13), kCurve13);
    auto p = af(m);
    c.expect(m.M.rank() == 1, "rank M = " + std::to_string(m.M.rank()));
    c.expect(p.second == 0, "rank M^(p)M = " + std::to_string(p.second));
    return c.done("rank M = 1, rank M^(p)M = 0");
}

CheckOutcome check_ordinary47() {
    Collector c;
    auto F = FieldDescriptor::parse(kF47);
    for (size_t i = 0; i < kOrdinary47.size(); ++i) {
        auto m = hw(F, kOrdinary47[i]);
        auto p = af(m);
        c.expect(m.M.rank() == 2 && p.second == 2, "curve " + std::to_string(i + 1) + " profile " + af_str(p));
    }
    return c.done("4 curves with rank M = rank M^(p)M = 2");
}

CheckOutcome check_field(const QuarticCMField& K, GaloisType type, const IntPoly& minpoly, const Integer& disc,
                         const std::optional<IntPoly>& reflex) {
    Collector c;
    c.expect(galois_type(K) == type, "Galois type " + to_string(galois_type(K)));
    c.expect(K.minpoly() == minpoly, "minimal polynomial " + poly_to_string(K.minpoly()));
    Integer D = field_discriminant(K.minpoly());
    c.expect(D == disc, "discriminant " + D.get_str());
    if (reflex) {
        auto R = reflex_field(K);
        c.expect(R.minpoly == *reflex, "reflex minimal polynomial " + poly_to_string(R.minpoly));
    }
    std::string s = to_string(type) + ", " + poly_to_string(minpoly) + ", discriminant " + disc.get_str();
    if (reflex) s += ", reflex " + poly_to_string(*reflex);
    return c.done(s);
}

CheckOutcome check_cm_curve_field() {
    auto K = QuarticCMField::make(5, -65, 26);
    Integer disc = 125 * 169;
    auto out = check_field(K, GaloisType::Cyclic, K.minpoly(), disc, std::nullopt);
    Collector c;
    c.expect(out.pass, out.detail);
    for (auto [p, row] : {std::pair{5L, "cyclic.vi"}, std::pair{13L, "cyclic.v"}}) {
        auto r = predict(K, p);
        c.expect(row_ids(r) == std::set<std::string>{row}, "p=" + std::to_string(p) + " predicts " + join(row_ids(r)));
        for (const auto& x : r.rows) c.expect(x.row->superspecial, "p=" + std::to_string(p) + " row not superspecial");
    }
    return c.done("cyclic, discriminant 5^3*13^2; p=5 -> vi, p=13 -> v, both superspecial");
}

CheckOutcome check_cyclotomic5() {
    Collector c;
    auto K = QuarticCMField::make(5, -10, -2);
    c.expect(galois_type(K) == GaloisType::Cyclic, "Q(sqrt(-10-2sqrt5)) is not cyclic");
    int n = 0;
    for (const auto& P : primes_between(3, 99)) {
        long p = P.get_si();
        std::pair<int, int> curve =
            p == 5 ? af(hw(FieldDescriptor::prime(5), "1,0,0,0,-1,0")) : af(hw(FieldDescriptor::prime(p), "1,0,0,0,0,1"));
        auto prof = row_profiles(predict(K, P));
        c.expect(prof.count(curve), "p=" + std::to_string(p) + " curve " + af_str(curve) + " not predicted");
        ++n;
    }
    return c.done("y^2 = x^5 + 1 agrees with the predictions for Q(zeta_5) at " + std::to_string(n) + " primes");
}

CheckOutcome check_table(TableKind kind) {
    auto v = verify_table(kind);
    Collector c;
    for (const auto& m : v.mismatches)
        c.expect(false, m.row + " " + m.field + ": printed " + m.printed + ", computed " + m.computed);
    for (const auto& m : v.label_mismatches) c.expect(false, m.row + " " + m.field + ": prime labels " + m.printed);
    for (const auto& e : v.profile_errors) c.expect(false, e);
    for (const auto& d : v.duplicate_pairs) c.notes.push_back("reported: duplicate (I, D) " + d);
    for (const auto& d : v.missing_pairs) c.notes.push_back("reported: pair without a row " + d);
    return c.done(std::to_string(v.rows) + " rows, " + std::to_string(v.columns) + " columns reproduced");
}

CheckOutcome check_predict_cyclic() {
    Collector c;
    const auto& K = cyclic_field();
    auto r7 = predict(K, 7), r17 = predict(K, 17);
    c.expect(row_ids(r7) == std::set<std::string>{"cyclic.v"}, "p=7 predicts " + join(row_ids(r7)));
    c.expect(row_ids(r17) == std::set<std::string>{"cyclic.vi"}, "p=17 predicts " + join(row_ids(r17)));
    for (const auto* r : {&r7, &r17})
        for (const auto& x : r->rows) c.expect(x.row->superspecial, x.row->id + " not superspecial");
    auto curve = af(hw(FieldDescriptor::prime(17), "1,0,0,0,0,0,16"));
    c.expect(row_profiles(r17).count(curve), "x^6+16 profile " + af_str(curve) + " not predicted at 17");
    return c.done("p=7 -> {v}, p=17 -> {vi}, both superspecial; x^6+16 over GF(17) is superspecial");
}

CheckOutcome check_predict_dihedral() {
    Collector c;
    const auto& K = dihedral_field();
    auto r13 = predict(K, 13);
    c.expect(r13.rows.size() == 1 && row_profiles(r13) == std::set<std::pair<int, int>>{{1, 0}},
             "p=13 predicts " + join(row_ids(r13)));
    c.expect(row_profiles(r13).count(af(hw(FieldDescriptor::parse(kF13), kCurve13))), "p=13 curve not predicted");

    auto r47 = predict(K, 47);
    std::set<std::tuple<int, int, bool>> got;
    for (const auto& x : r47.rows) got.insert({x.row->a, x.row->f, x.row->superspecial});
    c.expect(got == std::set<std::tuple<int, int, bool>>{{2, 0, true}, {0, 2, false}}, "p=47 predicts " + join(row_ids(r47)));
    auto F47 = FieldDescriptor::parse(kF47);
    c.expect(row_profiles(r47).count(af(hw(FieldDescriptor::prime(47), kSuperspecial47Prime))),
             "p=47 superspecial curve not predicted");
    for (const auto& s : kSuperspecial47) c.expect(row_profiles(r47).count(af(hw(F47, s))), "p=47 curve not predicted");
    for (const auto& s : kOrdinary47) c.expect(row_profiles(r47).count(af(hw(F47, s))), "p=47 ordinary curve not predicted");

    auto r89 = predict(K, 89);
    c.expect(row_profiles(r89).count({1, 1}), "p=89 predicts " + join(row_ids(r89)));
    auto F89 = FieldDescriptor::parse(kF89);
    for (const auto& s : kCurves89) c.expect(row_profiles(r89).count(af(hw(F89, s))), "p=89 curve not predicted");

    auto r313 = predict(K, 313);
    c.expect(row_profiles(r313).count({1, 1}), "p=313 predicts " + join(row_ids(r313)));
    c.expect(row_profiles(r313).count(af(hw(FieldDescriptor::parse(kF313), kCurve313))), "p=313 curve not predicted");
    return c.done("p=13 " + join(row_ids(r13)) + ", p=47 " + join(row_ids(r47)) + ", p=89 " + join(row_ids(r89)) +
                  ", p=313 " + join(row_ids(r313)) + "; every curve profile is in its prediction set");
}

CheckOutcome check_fixture(const std::string& id) {
    Collector c;
    auto fx = load_fixture(id);
    int n = 0;
    for (const auto& p : primes_between(5, 200)) {
        auto rep = verify_fixture(fx, p);
        ++n;
        if (!rep.pass) {
            std::string why = rep.in_denominator && !rep.superspecial_predicted ? "denominator without superspecial row"
                                                                                : "coefficient bound violated";
            for (const auto& ch : rep.checks)
                if (!ch.bound_ok || !ch.integral_ok)
                    why = ch.poly + "[" + std::to_string(ch.a) + "] valuation " +
                          (ch.valuation ? std::to_string(*ch.valuation) : "-") + " bound " + ch.bound;
            c.expect(false, "p=" + p.get_str() + ": " + why);
        }
    }
    std::string dens;
    for (const auto& q : fx.denominator_primes) {
        dens += (dens.empty() ? "" : ",") + q.get_str();
        if (q >= 5) {
            auto rep = verify_fixture(fx, q);
            c.expect(rep.superspecial_predicted, "denominator prime " + q.get_str() + " has no superspecial row");
        }
    }
    return c.done(std::to_string(n) + " primes in [5,200] satisfy the coefficient bounds; denominator primes {" + dens +
                  "} have superspecial rows");
}

Poly reduce(const FixturePolynomial& h, std::uint64_t p) {
    auto F = FieldDescriptor::prime(p);
    std::vector<FieldElement> c;
    for (auto it = h.coeffs.rbegin(); it != h.coeffs.rend(); ++it) c.push_back(FieldElement::from_rational(F, *it));
    return Poly(F, c);
}

// product of factors given low first, with multiplicities
Poly product(std::uint64_t p, const std::vector<std::pair<std::vector<long>, int>>& factors) {
    auto F = FieldDescriptor::prime(p);
    Poly r = Poly::constant(FieldElement::one(F));
    for (const auto& [f, e] : factors) {
        std::vector<FieldElement> c;
        for (long v : f) c.push_back(FieldElement::from_int(F, v));
        for (int i = 0; i < e; ++i) r = r * Poly(F, c);
    }
    return r;
}

CheckOutcome check_fixture_reductions() {
    Collector c;
    auto cyc = load_fixture("cyclic17");
    long r17[] = {13, 12, 2};
    for (int i = 0; i < 3; ++i)
        c.expect(reduce(cyc.polys[i], 17) == product(17, {{{r17[i], 1}, 2}}), "cyclic h" + std::to_string(i + 1) + " mod 17");

    auto dih = load_fixture("dihedral11");
    using F = std::vector<std::pair<std::vector<long>, int>>;
    std::map<std::uint64_t, std::array<F, 3>> printed = {
        {89, {F{{{9, 17, 1}, 2}, {{25, 18, 1}, 2}}, F{{{67, 37, 1}, 2}, {{57, 69, 1}, 2}}, F{{{83, 83, 1}, 2}, {{45, 85, 1}, 2}}}},
        {313,
         {F{{{273, 25, 1}, 1}, {{39, 137, 1}, 1}, {{108, 200, 1}, 1}, {{249, 312, 1}, 1}},
          F{{{121, 20, 1}, 1}, {{119, 90, 1}, 1}, {{297, 138, 1}, 1}, {{78, 173, 1}, 1}},
          F{{{276, 105, 1}, 1}, {{230, 133, 1}, 1}, {{183, 232, 1}, 1}, {{91, 289, 1}, 1}}}},
        {47,
         {F{{{18, 1}, 2}, {{12, 22, 1}, 1}, {{19, 33, 1}, 1}, {{6, 37, 1}, 1}},
          F{{{23, 1}, 2}, {{46, 10, 1}, 1}, {{17, 6, 1}, 1}, {{39, 9, 1}, 1}},
          F{{{2, 1}, 2}, {{26, 42, 1}, 1}, {{19, 1, 1}, 1}, {{7, 27, 1}, 1}}}},
        {13,
         {F{{{9, 2, 1}, 1}, {{1, 6, 1}, 1}, {{12, 0, 10, 8, 1}, 1}}, F{{{1, 5, 1}, 1}, {{1, 8, 1}, 1}, {{8, 7, 6, 7, 1}, 1}},
          F{{{2, 0, 1}, 1}, {{11, 0, 1}, 1}, {{5, 0, 4, 6, 1}, 1}}}}};
    for (const auto& [p, hs] : printed)
        for (int i = 0; i < 3; ++i)
            c.expect(reduce(dih.polys[i], p) == product(p, hs[i]),
                     "dihedral h" + std::to_string(i + 1) + " mod " + std::to_string(p));
    return c.done("cyclic fixture mod 17 and dihedral fixture mod 13, 47, 89, 313 match the printed factorizations");
}

std::string str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

PeriodMatrix sample_tau(std::mt19937_64& g, double ylo, double yhi) {
    std::uniform_real_distribution<double> U(0, 1);
    double y11 = ylo + (yhi - ylo) * U(g), y22 = ylo + (yhi - ylo) * U(g);
    double y12 = (2 * U(g) - 1) * std::min(y11, y22) / 3;
    return PeriodMatrix::parse({str(U(g) - 0.5), str(y11), str(U(g) - 0.5), str(y12), str(U(g) - 0.5), str(y22)}, 30);
}

double rel_err(const ComplexBall& a, const ComplexBall& b) {
    return (a - b).abs_upper().to_double() / b.abs_lower().to_double();
}

CheckOutcome check_theta_odd() {
    Collector c;
    std::mt19937_64 g(101);
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
        auto tau = sample_tau(g, 0.8, 1.5);
        for (const auto& ch : ThetaChar::odd()) {
            double v = theta_constant(tau, ch).abs_upper().to_double();
            worst = std::max(worst, v);
            c.expect(v < 1e-20, "odd " + ch.to_string() + " = " + str(v));
        }
    }
    return c.done("6 odd characteristics at 20 random tau, max |theta| " + str(worst));
}

CheckOutcome check_theta_diag() {
    Collector c;
    std::mt19937_64 g(102);
    std::uniform_real_distribution<double> U(0, 1);
    double worst = 0;
    for (int k = 0; k < 10; ++k) {
        auto d = PeriodMatrix::parse({str(U(g) - 0.5), str(0.7 + U(g)), "0", "0", str(U(g) - 0.5), str(0.7 + U(g))}, 30);
        double v = big_theta(d).abs_upper().to_double();
        worst = std::max(worst, v);
        c.expect(v < 1e-10, "Theta at a product point = " + str(v));
    }
    return c.done("Theta at 10 product points, max " + str(worst));
}

CheckOutcome check_theta_modular() {
    Collector c;
    std::mt19937_64 g(103);
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
        auto tau = sample_tau(g, 0.9, 1.3);
        auto base = invariants_from_tau(tau);
        for (const auto& moved : {tau.translate(1, 0, 0), tau.translate(0, 1, 0), tau.translate(0, 0, 1), tau.invert()}) {
            auto i = invariants_from_tau(moved);
            for (int j = 0; j < 3; ++j) {
                double e = rel_err(i[j], base[j]);
                worst = std::max(worst, e);
                c.expect(e < 1e-8, "relative error " + str(e));
            }
        }
    }
    return c.done("(i1,i2,i3) at 3 tau under tau+S and -tau^-1, max relative error " + str(worst));
}

CheckOutcome check_theta_genus1() {
    Collector c;
    mpfr_prec_t prec = bits_for_digits(30);
    Real tol(1e-35, 64);
    const char* pts[5][2] = {{"0", "1"}, {"0.2", "1.1"}, {"-0.4", "0.9"}, {"0.5", "1.7"}, {"0.1", "0.8"}};
    auto first = jacobi_ratio(ComplexBall::from_strings(pts[0][0], pts[0][1], prec), tol);
    double worst = 0;
    for (auto& p : pts) {
        double e = rel_err(jacobi_ratio(ComplexBall::from_strings(p[0], p[1], prec), tol), first);
        worst = std::max(worst, e);
        c.expect(e < 1e-8, std::string("ratio varies at ") + p[0] + "+" + p[1] + "i");
    }
    return c.done("(theta00 theta01 theta10)^8 / (E4^3 - E6^2) = " + first.re().to_string(12) +
                  " at 5 points, max relative spread " + str(worst));
}

CheckOutcome check_gl2() {
    Collector c;
    std::mt19937_64 gen(104);
    auto F = FieldDescriptor::parse("GF(13^2; a^2+12a+2)");
    auto rnd = [&] { return FieldElement::from_coeffs(F, {gen() % 13, gen() % 13}); };
    int n = 0;
    while (n < 30) {
        std::vector<FieldElement> cf;
        for (int i = 0; i < 7; ++i) cf.push_back(rnd());
        auto m = HyperellipticModel::from_leading_first(F, cf);
        if (m.degree() < 5 || !is_squarefree(m.poly())) continue;
        auto a = rnd(), b = rnd(), cc = rnd(), d = rnd();
        auto det = a * d - b * cc;
        if (det.is_zero()) continue;
        auto mt = transform_model(m, a, b, cc, d);
        if (mt.degree() < 5) continue;
        auto x = igusa_clebsch(m), y = igusa_clebsch(mt);
        c.expect(y.A == det.pow(6) * x.A && y.B == det.pow(12) * x.B && y.C == det.pow(18) * x.C &&
                     y.D == det.pow(30) * x.D,
                 "det-power law fails at substitution " + std::to_string(n));
        ++n;
    }
    return c.done("30 random substitutions over GF(13^2) scale (A,B,C,D) by det^(6,12,18,30)");
}

CheckOutcome check_j8_roundtrip() {
    Collector c;
    std::mt19937_64 gen(105);
    auto F = FieldDescriptor::prime(101);
    int n = 0;
    while (n < 50) {
        std::vector<FieldElement> cf;
        for (int i = 0; i < 7; ++i) cf.push_back(FieldElement::from_int(F, static_cast<long>(gen() % 101)));
        auto m = HyperellipticModel::from_leading_first(F, cf);
        if (m.degree() != 6 || !is_squarefree(m.poly())) continue;
        auto j = j_from_igusa_clebsch(igusa_clebsch(m));
        c.expect(j.J[3] * FieldElement::from_int(F, 4) == j.J[0] * j.J[2] - j.J[1] * j.J[1], "4 J8 != J2 J6 - J4^2");
        ++n;
    }
    auto Q = FieldDescriptor::rationals();
    int r = 0;
    while (r < 50) {
        auto q = [&] {
            long num = static_cast<long>(gen() % 2001) - 1000;
            long den = 1 + static_cast<long>(gen() % 50);
            return FieldElement::from_rational(Q, Rational(num, den));
        };
        AbsoluteInvariants a{q(), q(), q()};
        if (a.i1.is_zero()) continue;
        auto b = absolute_from_gamma(gamma_from_absolute(a));
        c.expect(a.i1 == b.i1 && a.i2 == b.i2 && a.i3 == b.i3, "i -> gamma -> i round trip changed the invariants");
        ++r;
    }
    return c.done("J8 identity on 50 random sextics over GF(101); i -> gamma -> i exact on 50 random rational triples");
}

CheckOutcome check_deformation_grid() {
    Collector c;
    int n = 0;
    for (long p : {3L, 5L, 7L, 11L, 13L})
        for (long e = 1; e <= 4; ++e)
            for (long k = 1; k <= 5; ++k) {
                auto b = deformation_index_bounds(p, e, k);
                std::string at = "(p,e,n)=(" + std::to_string(p) + "," + std::to_string(e) + "," + std::to_string(k) + ")";
                c.expect(b.lower_exponent <= b.upper_exponent, "lower > upper at " + at);
                c.expect(deformation_index_bounds(p, e, k + 1).lower_exponent >= b.lower_exponent,
                         "not nondecreasing in n at " + at);
                c.expect(deformation_index_bounds(p, e + 1, k).lower_exponent <= b.lower_exponent,
                         "not nonincreasing in e at " + at);
                ++n;
            }
    return c.done(std::to_string(n) + " grid points: lower <= upper, monotone in n and e");
}

}  // namespace

const std::vector<CheckDef>& reference_checks() {
    static const std::vector<CheckDef> checks = {
        {"hassewitt.x5plus1", 1, check_x5plus1},
        {"hassewitt.cm_curve_5_13", 2, check_cm_curve_hw},
        {"invariants.x6plus16", 3, check_x6plus16},
        {"hassewitt.p89_curves", 4, check_curves89},
        {"hassewitt.p313_curve", 4, check_curve313},
        {"hassewitt.p47_superspecial", 4, check_superspecial47},
        {"hassewitt.p13_curve", 4, check_curve13},
        {"hassewitt.p47_ordinary", 0, check_ordinary47},
        {"cmfield.cyclic17", 5,
         [] {
             return check_field(cyclic_field(), GaloisType::Cyclic, {833, 0, 238, 0, 1}, Integer(49 * 4913), std::nullopt);
         }},
        {"cmfield.dihedral11", 5,
         [] {
             return check_field(dihedral_field(), GaloisType::Dihedral, {89, 0, 134, 0, 1}, Integer(16 * 121 * 89),
                                IntPoly{17600, 0, 268, 0, 1});
         }},
        {"cmfield.cm_curve_5_13", 0, check_cm_curve_field},
        {"tables.cyclic", 6, [] { return check_table(TableKind::Cyclic); }},
        {"tables.biquadratic", 6, [] { return check_table(TableKind::Biquadratic); }},
        {"tables.nongalois", 6, [] { return check_table(TableKind::NonGalois); }},
        {"predict.cyclic17", 7, check_predict_cyclic},
        {"predict.dihedral11", 7, check_predict_dihedral},
        {"predict.cyclotomic5", 0, check_cyclotomic5},
        {"bounds.fixture_reductions", 8, check_fixture_reductions},
        {"bounds.cyclic17", 8, [] { return check_fixture("cyclic17"); }},
        {"bounds.dihedral11", 8, [] { return check_fixture("dihedral11"); }},
        {"theta.odd_vanishing", 9, check_theta_odd},
        {"theta.product_points", 9, check_theta_diag},
        {"theta.modular_invariance", 9, check_theta_modular},
        {"theta.genus_one", 9, check_theta_genus1},
        {"properties.gl2_homogeneity", 10, check_gl2},
        {"properties.j8_and_round_trip", 10, check_j8_roundtrip},
        {"properties.deformation_grid", 10, check_deformation_grid},
    };
    return checks;
}

std::vector<CheckResult> run_reference_checks(const std::string& only) {
    std::vector<CheckResult> out;
    bool any = false;
    for (const auto& c : reference_checks()) {
        if (!only.empty() && c.name != only && c.group() != only) continue;
        any = true;
        auto t0 = std::chrono::steady_clock::now();
        CheckOutcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back({c.name, c.criterion, o.pass, o.detail, s});
    }
    if (!any) throw DomainError("no check matches '" + only + "'");
    return out;
}

}  // namespace g2cm
