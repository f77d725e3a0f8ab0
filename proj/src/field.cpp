#include "g2cm/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <sstream>

#include "g2cm/poly.hpp"

namespace g2cm {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw DomainError("division by zero");
    Integer r;
    Integer A(static_cast<unsigned long>(a)), P(static_cast<unsigned long>(p));
    mpz_invert(r.get_mpz_t(), A.get_mpz_t(), P.get_mpz_t());
    return r.get_ui();
}

std::uint64_t reduce_integer(const Integer& v, std::uint64_t p) {
    Integer r;
    Integer P(static_cast<unsigned long>(p));
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), P.get_mpz_t());
    return r.get_ui();
}

int valuation(const Integer& v, const Integer& p) {
    if (v == 0) throw DomainError("valuation of zero");
    Integer t = v;
    int n = 0;
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        ++n;
    }
    return n;
}

int valuation(const Rational& v, const Integer& p) {
    return valuation(v.get_num(), p) - valuation(v.get_den(), p);
}

Rational parse_rational(const std::string& text) {
    static const std::regex re(R"(\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw DomainError("cannot parse rational '" + text + "'");
    Integer num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str());
    Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool is_prime(std::uint64_t p) {
    Integer P(static_cast<unsigned long>(p));
    return p >= 2 && mpz_probab_prime_p(P.get_mpz_t(), 30) > 0;
}

using Vec = std::vector<std::uint64_t>;

void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod m, m monic
Vec poly_rem(Vec a, const Vec& m, std::uint64_t p) {
    int dm = static_cast<int>(m.size()) - 1;
    trim(a);
    for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        std::uint64_t c = a[i];
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) a[i - dm + j] = (a[i - dm + j] + p - mulmod(c, m[j], p)) % p;
    }
    trim(a);
    return a;
}

Vec poly_mul(const Vec& a, const Vec& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    Vec r(acc.size());
    const bool small = p < (1ULL << 31);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (small) {
                acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
            } else {
                acc[i + j] = (acc[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
            }
        }
    }
    for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint64_t>(acc[i] % p);
    return r;
}

// inverse of a modulo m over GF(p) by the extended Euclidean algorithm
Vec poly_inverse(const Vec& a, const Vec& m, std::uint64_t p) {
    Vec r0 = m, r1 = a, s0, s1 = {1};
    trim(r1);
    if (r1.empty()) throw DomainError("division by zero");
    while (!r1.empty()) {
        // q, r = r0 divmod r1
        Vec r = r0;
        int d1 = static_cast<int>(r1.size()) - 1;
        std::uint64_t inv = invmod(r1.back(), p);
        Vec q(std::max<int>(0, static_cast<int>(r0.size()) - d1), 0);
        for (int i = static_cast<int>(r.size()) - 1; i >= d1; --i) {
            std::uint64_t c = mulmod(r[i], inv, p);
            if (c == 0) continue;
            q[i - d1] = c;
            for (int j = 0; j <= d1; ++j) r[i - d1 + j] = (r[i - d1 + j] + p - mulmod(c, r1[j], p)) % p;
        }
        trim(r);
        Vec qs = poly_mul(q, s1, p);
        Vec s2(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < s2.size(); ++i) {
            std::uint64_t x = i < s0.size() ? s0[i] : 0;
            std::uint64_t y = i < qs.size() ? qs[i] : 0;
            s2[i] = (x + p - y) % p;
        }
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant
    std::uint64_t c = invmod(r0[0], p);
    for (auto& v : s0) v = mulmod(v, c, p);
    return s0;
}

std::string trim_ws(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

FieldPtr FieldDescriptor::rationals() {
    static const FieldPtr Q(new FieldDescriptor(0, 1, {}));
    return Q;
}

FieldPtr FieldDescriptor::prime(std::uint64_t p) {
    if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    if (p >= (1ULL << 62)) throw DomainError("characteristic too large");
    return FieldPtr(new FieldDescriptor(p, 1, {}));
}

FieldPtr FieldDescriptor::extension(std::uint64_t p, const std::vector<std::uint64_t>& modulus) {
    FieldPtr Fp = prime(p);
    if (modulus.size() < 2) throw DomainError("modulus must have degree at least 1");
    Vec m = modulus;
    for (auto& c : m) c %= p;
    if (m.back() != 1) throw DomainError("modulus must be monic");
    if (m.size() == 2) return Fp;
    std::vector<FieldElement> coeffs;
    for (auto c : m) coeffs.push_back(FieldElement::from_coeffs(Fp, {c}));
    if (!is_irreducible(Poly(Fp, coeffs))) throw DomainError("modulus is not irreducible over GF(" + std::to_string(p) + ")");
    return FieldPtr(new FieldDescriptor(p, static_cast<int>(m.size()) - 1, m));
}

namespace {

// "a^2 + 310a + 10", optionally followed by "= 0"; coefficients reduced mod p, returned low first
std::vector<std::uint64_t> parse_modulus_polynomial(std::string text, std::uint64_t p) {
    if (auto eq = text.find('='); eq != std::string::npos) {
        if (trim_ws(text.substr(eq + 1)) != "0") throw DomainError("modulus must be written as a polynomial = 0");
        text = text.substr(0, eq);
    }
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') t += c;
    for (const std::string v : {"alpha", "α", "x", "t"})
        for (size_t pos; (pos = t.find(v)) != std::string::npos;) t.replace(pos, v.size(), "a");
    static const std::regex term(R"(([+-]?)(\d*)(a(?:\^(\d+))?)?)");
    std::map<int, Integer> coeffs;
    size_t pos = 0;
    while (pos < t.size()) {
        std::smatch mt;
        std::string rest = t.substr(pos);
        if (!std::regex_search(rest, mt, term, std::regex_constants::match_continuous) || mt.length(0) == 0 ||
            (mt[2].length() == 0 && mt[3].length() == 0))
            throw DomainError("cannot parse modulus '" + text + "'");
        Integer c = mt[2].length() ? Integer(mt[2].str()) : Integer(1);
        if (mt[1].str() == "-") c = -c;
        int deg = mt[3].length() == 0 ? 0 : (mt[4].length() ? std::stoi(mt[4].str()) : 1);
        coeffs[deg] += c;
        pos += mt.length(0);
        if (pos < t.size() && t[pos] != '+' && t[pos] != '-') throw DomainError("cannot parse modulus '" + text + "'");
    }
    int n = coeffs.rbegin()->first;
    std::vector<std::uint64_t> out(n + 1, 0);
    for (const auto& [d, c] : coeffs) out[d] = reduce_integer(c, p);
    return out;
}

}  // namespace

FieldPtr FieldDescriptor::parse(const std::string& spec_in) {
    std::string spec = trim_ws(spec_in);
    if (spec == "QQ" || spec == "Q") return rationals();
    static const std::regex gfp(R"(GF\(\s*(\d+)\s*\))");
    static const std::regex gfq(R"(GF\(\s*(\d+)\s*\^\s*(\d+)\s*;\s*(.+)\))");
    static const std::regex digits(R"([0-9,\s]+)");
    std::smatch m;
    if (std::regex_match(spec, m, gfp)) return prime(std::stoull(m[1].str()));
    if (std::regex_match(spec, m, gfq)) {
        std::uint64_t p = std::stoull(m[1].str());
        int k = std::stoi(m[2].str());
        Vec mod;
        std::string body = m[3].str();
        if (std::regex_match(body, digits)) {
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ',')) mod.push_back(std::stoull(trim_ws(item)));
        } else {
            mod = parse_modulus_polynomial(body, p);
        }
        if (static_cast<int>(mod.size()) != k + 1) throw DomainError("modulus length does not match extension degree");
        return extension(p, mod);
    }
    throw DomainError("cannot parse field '" + spec_in + "'");
}

Integer FieldDescriptor::order() const {
    if (is_rational()) throw DomainError("QQ is infinite");
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), p_, k_);
    return q;
}

std::string FieldDescriptor::to_string() const {
    if (is_rational()) return "QQ";
    if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
    std::string s = "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + "; ";
    for (size_t i = 0; i < modulus_.size(); ++i) s += (i ? "," : "") + std::to_string(modulus_[i]);
    return s + ")";
}

bool FieldDescriptor::same_as(const FieldDescriptor& o) const {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!a || !b) throw DomainError("uninitialised field element");
    if (a != b && !a->same_as(*b)) throw DomainError("mixed fields: " + a->to_string() + " and " + b->to_string());
}

FieldElement FieldElement::zero(const FieldPtr& F) {
    FieldElement r;
    r.F_ = F;
    if (!F->is_rational()) r.c_.assign(F->degree(), 0);
    return r;
}

FieldElement FieldElement::one(const FieldPtr& F) { return from_int(F, 1); }

FieldElement FieldElement::from_int(const FieldPtr& F, long v) { return from_integer(F, Integer(v)); }

FieldElement FieldElement::from_integer(const FieldPtr& F, const Integer& v) {
    FieldElement r = zero(F);
    if (F->is_rational()) r.q_ = v;
    else r.c_[0] = reduce_integer(v, F->characteristic());
    return r;
}

FieldElement FieldElement::from_rational(const FieldPtr& F, const Rational& v) {
    if (F->is_rational()) {
        FieldElement r = zero(F);
        r.q_ = v;
        r.q_.canonicalize();
        return r;
    }
    std::uint64_t p = F->characteristic();
    std::uint64_t d = reduce_integer(v.get_den(), p);
    if (d == 0) throw DomainError("denominator divisible by the characteristic");
    FieldElement r = zero(F);
    r.c_[0] = mulmod(reduce_integer(v.get_num(), p), invmod(d, p), p);
    return r;
}

FieldElement FieldElement::from_coeffs(const FieldPtr& F, std::vector<std::uint64_t> c) {
    if (F->is_rational()) throw DomainError("coefficient vectors need a finite field");
    if (static_cast<int>(c.size()) > F->degree()) throw DomainError("too many coefficients for " + F->to_string());
    c.resize(F->degree(), 0);
    for (auto& v : c) v %= F->characteristic();
    FieldElement r;
    r.F_ = F;
    r.c_ = std::move(c);
    return r;
}

FieldElement FieldElement::generator(const FieldPtr& F) {
    if (F->is_rational()) throw DomainError("QQ has no generator");
    if (F->degree() == 1) throw DomainError("prime fields are not given by a generator");
    std::vector<std::uint64_t> c(F->degree(), 0);
    c[1] = 1;
    return from_coeffs(F, c);
}

FieldElement FieldElement::parse(const FieldPtr& F, const std::string& text_in) {
    std::string text = trim_ws(text_in);
    static const std::regex power(R"((?:a|alpha|α|t)\s*\^\s*([+-]?\d+))");
    std::smatch m;
    if (std::regex_match(text, m, power)) return generator(F).pow(Integer(m[1].str()));
    if (text == "a" || text == "alpha" || text == "t") return generator(F);
    if (!text.empty() && text.front() == '[' && text.back() == ']') text = text.substr(1, text.size() - 2);
    if (text.find(',') != std::string::npos) {
        if (F->is_rational()) throw DomainError("coefficient vector given for QQ");
        std::vector<std::uint64_t> c;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) c.push_back(reduce_integer(Integer(trim_ws(item)), F->characteristic()));
        return from_coeffs(F, c);
    }
    return from_rational(F, parse_rational(text));
}

bool FieldElement::is_zero() const {
    if (F_->is_rational()) return q_ == 0;
    return std::all_of(c_.begin(), c_.end(), [](std::uint64_t v) { return v == 0; });
}

bool FieldElement::is_one() const {
    if (F_->is_rational()) return q_ == 1;
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](std::uint64_t v) { return v == 0; });
}

const Rational& FieldElement::rational() const {
    if (!F_->is_rational()) throw DomainError("element is not rational");
    return q_;
}

FieldElement FieldElement::operator+(const FieldElement& b) const {
    require_same_field(F_, b.F_);
    FieldElement r = *this;
    if (F_->is_rational()) {
        r.q_ += b.q_;
    } else {
        std::uint64_t p = F_->characteristic();
        for (size_t i = 0; i < c_.size(); ++i) {
            r.c_[i] += b.c_[i];
            if (r.c_[i] >= p) r.c_[i] -= p;
        }
    }
    return r;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    if (F_->is_rational()) {
        r.q_ = -q_;
    } else {
        std::uint64_t p = F_->characteristic();
        for (auto& v : r.c_) v = v ? p - v : 0;
    }
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& b) const { return *this + (-b); }

FieldElement FieldElement::operator*(const FieldElement& b) const {
    require_same_field(F_, b.F_);
    FieldElement r;
    r.F_ = F_;
    if (F_->is_rational()) {
        r.q_ = q_ * b.q_;
        return r;
    }
    std::uint64_t p = F_->characteristic();
    if (F_->degree() == 1) {
        r.c_ = {mulmod(c_[0], b.c_[0], p)};
        return r;
    }
    Vec prod = poly_rem(poly_mul(c_, b.c_, p), F_->modulus(), p);
    prod.resize(F_->degree(), 0);
    r.c_ = std::move(prod);
    return r;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    FieldElement r;
    r.F_ = F_;
    if (F_->is_rational()) {
        r.q_ = 1 / q_;
        return r;
    }
    std::uint64_t p = F_->characteristic();
    if (F_->degree() == 1) {
        r.c_ = {invmod(c_[0], p)};
        return r;
    }
    Vec inv = poly_inverse(c_, F_->modulus(), p);
    inv.resize(F_->degree(), 0);
    r.c_ = std::move(inv);
    return r;
}

FieldElement FieldElement::operator/(const FieldElement& b) const { return *this * b.inverse(); }

bool FieldElement::operator==(const FieldElement& b) const {
    require_same_field(F_, b.F_);
    if (F_->is_rational()) return q_ == b.q_;
    return c_ == b.c_;
}

bool FieldElement::operator<(const FieldElement& b) const {
    require_same_field(F_, b.F_);
    if (F_->is_rational()) return q_ < b.q_;
    return c_ < b.c_;
}

FieldElement FieldElement::pow(const Integer& e_in) const {
    if (e_in < 0) return inverse().pow(-e_in);
    FieldElement result = one(F_);
    FieldElement base = *this;
    Integer e = e_in;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = result * result;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = result * base;
    }
    return result;
}

std::string FieldElement::to_string() const {
    if (F_->is_rational()) return q_.get_str();
    if (F_->degree() == 1) return std::to_string(c_[0]);
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
    return s + "]";
}

}  // namespace g2cm
