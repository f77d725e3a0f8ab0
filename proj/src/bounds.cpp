#include "g2cm/bounds.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "g2cm/galois_tables.hpp"

#ifndef G2CM_FIXTURE_DIR
#define G2CM_FIXTURE_DIR "fixtures"
#endif

namespace g2cm {

std::string to_string(BoundCase c) { return c == BoundCase::SmallRamification ? "small_ram" : "high_ram"; }

namespace {

constexpr mpfr_prec_t kBoundPrec = 256;

// exact m with x = p^m, if any
std::optional<long> exact_log(const Rational& x, const Integer& p) {
    if (x.get_den() != 1 || x <= 0) return std::nullopt;
    Integer n = x.get_num();
    long m = 0;
    while (n > 1 && mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++m;
    }
    if (n != 1) return std::nullopt;
    return m;
}

Real scale_up(const Real& a, long k) {
    Real r(kBoundPrec);
    mpfr_mul_si(r.get(), a.get(), k, MPFR_RNDU);
    return r;
}

Real add_up_si(const Real& a, long k) {
    Real r(kBoundPrec);
    mpfr_add_si(r.get(), a.get(), k, MPFR_RNDU);
    return r;
}

// c * (m L + s) rounded up, for L an upper bound of log_p and positive c, m, s
Real affine_up(const Real& L, long m, long s, long c) { return scale_up(add_up_si(scale_up(L, m), s), c); }

void require_params(const Integer& p, const Integer& d, const Integer& trace_r) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw DomainError("p must be prime");
    if (d <= 0) throw DomainError("d must be positive");
    Rational X = Rational(d * trace_r * trace_r, 2);
    if (X <= 1) throw DomainError("d*Tr(r)^2/2 must exceed 1");
}

}  // namespace

Real log_p_upper(const Integer& p, const Integer& d, const Integer& trace_r, mpfr_prec_t prec) {
    Rational X(d * trace_r * trace_r, 2);
    X.canonicalize();
    if (auto m = exact_log(X, p)) return Real(Integer(*m), prec);
    Real num(prec), den(prec), x(prec), pp(p, prec), r(prec);
    mpfr_set_q(x.get(), X.get_mpq_t(), MPFR_RNDU);
    mpfr_log(num.get(), x.get(), MPFR_RNDU);
    mpfr_log(den.get(), pp.get(), MPFR_RNDD);
    mpfr_div(r.get(), num.get(), den.get(), MPFR_RNDU);
    return r;
}

RationalBound theta_valuation_bound(const BoundParams& bp) {
    require_params(bp.p, bp.d, bp.trace_r);
    if (bp.k < 1 || bp.e < 1) throw DomainError("k and e must be positive");
    Real L = log_p_upper(bp.p, bp.d, bp.trace_r, kBoundPrec);
    bool small = bp.e <= bp.p - 1;
    Real mag = small ? affine_up(L, 1, 1, 4 * bp.k * bp.e) : affine_up(L, 8, 2, 4 * bp.k * bp.e);
    return {-mag, small ? BoundCase::SmallRamification : BoundCase::HighRamification, true};
}

RationalBound class_poly_coeff_bound(int i, long a, const Integer& p, const Integer& d, const Integer& trace_r, long e) {
    static const int kk[] = {0, 6, 4, 4};
    if (i < 1 || i > 3) throw DomainError("class polynomial index must be 1, 2 or 3");
    if (a < 0) throw DomainError("coefficient index must be non-negative");
    if (e < 1) throw DomainError("e must be positive");
    require_params(p, d, trace_r);
    bool small = e <= p - 1;
    BoundCase regime = small ? BoundCase::SmallRamification : BoundCase::HighRamification;
    if (a == 0) return {Real(0.0, kBoundPrec), regime, true};
    Real L = log_p_upper(p, d, trace_r, kBoundPrec);
    Real mag = small ? affine_up(L, 1, 1, 4 * a * kk[i]) : affine_up(L, 8, 2, 4 * a * kk[i]);
    return {-mag, regime, true};
}

RationalBound class_invariant_bound(long e_star, const Integer& p, const Integer& d, const Integer& trace_r) {
    if (e_star < 1) throw DomainError("e* must be positive");
    require_params(p, d, trace_r);
    Real L = log_p_upper(p, d, trace_r, kBoundPrec);
    bool small = e_star <= p - 1;
    Real mag = small ? affine_up(L, 1, 1, 8 * e_star) : affine_up(L, 8, 2, 8 * e_star);
    return {mag, small ? BoundCase::SmallRamification : BoundCase::HighRamification, false};
}

DeformationBounds deformation_index_bounds(const Integer& p, long e_V, long n) {
    if (p < 2 || e_V < 1 || n < 1) throw DomainError("p, e_V and n must be positive");
    long c = (n + e_V - 1) / e_V;
    Rational high = std::max(Rational(0), Rational(c - 2, 4));
    high.canonicalize();
    DeformationBounds b;
    b.upper_exponent = 3 * (n - 1);
    if (e_V <= p - 1) {
        b.lower_exponent = std::max(Rational(2 * (c - 1)), high);
        b.regime = BoundCase::SmallRamification;
    } else {
        b.lower_exponent = high;
        b.regime = BoundCase::HighRamification;
    }
    return b;
}

long basic_estimate_exponent(long r, long t, long n, const Integer& p) {
    if (r < 1 || t < 0 || n < 1 || p < 2) throw DomainError("invalid arguments");
    long pm1 = static_cast<long>(p.get_si()) - 1;
    return (r - 1) * t * ((n - 1 + pm1 - 1) / pm1);
}

namespace {

Integer parse_factored_integer(const std::string& text) {
    Integer r = 1;
    std::stringstream ss(text);
    std::string tok;
    bool any = false;
    while (std::getline(ss, tok, '*')) {
        if (tok.empty()) throw DomainError("malformed factored integer '" + text + "'");
        auto pos = tok.find('^');
        Integer base(tok.substr(0, pos));
        unsigned long e = pos == std::string::npos ? 1 : std::stoul(tok.substr(pos + 1));
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), e);
        r *= pw;
        any = true;
    }
    if (!any) throw DomainError("empty integer");
    return r;
}

}  // namespace

Rational parse_factored_rational(const std::string& text_in) {
    std::string text;
    for (char c : text_in)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    bool neg = !text.empty() && text[0] == '-';
    if (neg) text = text.substr(1);
    auto slash = text.find('/');
    try {
        Integer num = parse_factored_integer(text.substr(0, slash));
        Integer den = slash == std::string::npos ? Integer(1) : parse_factored_integer(text.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator");
        Rational q(neg ? Integer(-num) : num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed coefficient '" + text_in + "'");
    }
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw DomainError("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string default_fixture_dir() {
    if (const char* env = std::getenv("G2CM_FIXTURES")) return env;
    return G2CM_FIXTURE_DIR;
}

Fixture load_fixture(const std::string& id, const std::string& dir) {
    using nlohmann::json;
    std::ifstream mf(dir + "/MANIFEST.json");
    if (!mf) throw DomainError("fixture manifest not found in " + dir);
    json manifest;
    try {
        manifest = json::parse(mf);
    } catch (const json::exception& e) {
        throw DomainError(std::string("cannot parse manifest: ") + e.what());
    }
    std::string file, sha;
    for (const auto& ent : manifest.at("files"))
        if (ent.at("id") == id) {
            file = ent.at("file");
            sha = ent.at("sha256");
        }
    if (file.empty()) throw DomainError("unknown fixture '" + id + "'");
    std::string path = dir + "/" + file;
    if (sha256_file(path) != sha) throw DomainError("checksum mismatch for " + path);

    std::ifstream in(path);
    json j;
    try {
        j = json::parse(in);
        Fixture fx;
        fx.id = j.at("id");
        fx.description = j.value("description", "");
        const auto& f = j.at("field");
        fx.field = QuarticCMField::make(f.at("d").get<long>(), f.at("alpha").get<long>(), f.at("beta").get<long>());
        std::string norm = j.value("normalize", "none");
        std::set<Integer> primes;
        for (const auto& p : j.at("polynomials")) {
            FixturePolynomial fp;
            fp.name = p.at("name");
            for (const auto& c : p.at("coefficients")) fp.coeffs.push_back(parse_factored_rational(c.get<std::string>()));
            if (fp.coeffs.empty() || fp.coeffs[0] == 0) throw DomainError("fixture polynomial without leading term");
            if (norm == "divide_by_leading") {
                Rational lead = fp.coeffs[0];
                for (auto& c : fp.coeffs) c /= lead;
            } else if (norm != "none") {
                throw DomainError("unknown normalization '" + norm + "'");
            }
            if (fp.coeffs[0] != 1) throw DomainError("fixture polynomial is not monic after normalization");
            for (const auto& c : fp.coeffs)
                if (c.get_den() != 1)
                    for (const auto& [q, e] : factor_integer(c.get_den())) primes.insert(q);
            fx.polys.push_back(fp);
        }
        fx.denominator_primes.assign(primes.begin(), primes.end());
        return fx;
    } catch (const json::exception& e) {
        throw DomainError(std::string("cannot parse fixture: ") + e.what());
    }
}

FixtureReport verify_fixture(const Fixture& fx, const Integer& p) {
    if (p < 5) throw DomainError("fixture checks need p >= 5");
    FixtureReport rep;
    rep.fixture = fx.id;
    rep.p = p;
    auto pred = predict(fx.field, p);
    rep.e = pred.ramification_N;
    rep.superspecial_predicted = false;
    for (const auto& r : pred.rows) {
        rep.predicted_rows.push_back(r.row->id);
        rep.superspecial_predicted |= r.row->superspecial;
    }
    rep.in_denominator = std::find(fx.denominator_primes.begin(), fx.denominator_primes.end(), p) != fx.denominator_primes.end();
    rep.pass = !rep.in_denominator || rep.superspecial_predicted;
    for (const auto& poly : fx.polys) {
        int i = poly.name.size() == 2 && poly.name[0] == 'h' ? poly.name[1] - '0' : 0;
        for (size_t a = 0; a < poly.coeffs.size(); ++a) {
            CoefficientCheck c;
            c.poly = poly.name;
            c.a = static_cast<long>(a);
            auto b = class_poly_coeff_bound(i, c.a, p, fx.field.d, fx.field.trace_r(), rep.e);
            c.bound = b.value.to_string(12);
            if (poly.coeffs[a] == 0) {
                c.bound_ok = c.integral_ok = true;
            } else {
                int v = valuation(poly.coeffs[a], p);
                c.valuation = v;
                c.bound_ok = Real(Integer(v), kBoundPrec) >= b.value;
                c.integral_ok = rep.superspecial_predicted || v >= 0;
            }
            rep.pass = rep.pass && c.bound_ok && c.integral_ok;
            rep.checks.push_back(c);
        }
    }
    return rep;
}

}  // namespace g2cm
