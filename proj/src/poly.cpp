#include "g2cm/poly.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace g2cm {

Poly::Poly(FieldPtr F, std::vector<FieldElement> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
    for (const auto& c : c_) require_same_field(F_, c.field());
    normalize();
}

void Poly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const FieldElement& c) { return Poly(c.field(), {c}); }

Poly Poly::x(const FieldPtr& F) { return Poly(F, {FieldElement::zero(F), FieldElement::one(F)}); }

Poly Poly::monomial(const FieldElement& c, int degree) {
    std::vector<FieldElement> v(degree + 1, FieldElement::zero(c.field()));
    v[degree] = c;
    return Poly(c.field(), std::move(v));
}

FieldElement Poly::coeff(int i) const {
    if (i < 0 || i > degree()) return FieldElement::zero(F_);
    return c_[i];
}

FieldElement Poly::leading() const {
    if (is_zero()) throw DomainError("zero input");
    return c_.back();
}

Poly Poly::operator+(const Poly& b) const {
    require_same_field(F_, b.F_);
    std::vector<FieldElement> r(std::max(c_.size(), b.c_.size()), FieldElement::zero(F_));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(F_, std::move(r));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly Poly::operator-(const Poly& b) const { return *this + (-b); }

Poly Poly::operator*(const Poly& b) const {
    require_same_field(F_, b.F_);
    if (is_zero() || b.is_zero()) return Poly(F_);
    std::vector<FieldElement> r(c_.size() + b.c_.size() - 1, FieldElement::zero(F_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += c_[i] * b.c_[j];
    }
    return Poly(F_, std::move(r));
}

Poly Poly::operator*(const FieldElement& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c *= s;
    r.normalize();
    return r;
}

bool Poly::operator==(const Poly& b) const {
    require_same_field(F_, b.F_);
    return c_ == b.c_;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& b) const {
    require_same_field(F_, b.F_);
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<FieldElement> r = c_;
    int db = b.degree();
    int dq = degree() - db;
    if (dq < 0) return {Poly(F_), *this};
    std::vector<FieldElement> q(dq + 1, FieldElement::zero(F_));
    FieldElement inv = b.leading().inverse();
    for (int i = degree(); i >= db; --i) {
        if (r[i].is_zero()) continue;
        FieldElement c = r[i] * inv;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b.c_[j];
    }
    return {Poly(F_, std::move(q)), Poly(F_, std::move(r))};
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

Poly Poly::derivative() const {
    std::vector<FieldElement> r;
    for (int i = 1; i <= degree(); ++i) r.push_back(c_[i] * FieldElement::from_int(F_, i));
    return Poly(F_, std::move(r));
}

FieldElement Poly::eval(const FieldElement& x) const {
    FieldElement acc = FieldElement::zero(F_);
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::pow(const Integer& e) const {
    if (e < 0) throw DomainError("negative polynomial exponent");
    Poly result = constant(FieldElement::one(F_));
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = result * result;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
    }
    return result;
}

Poly Poly::powmod(const Integer& e, const Poly& m) const {
    Poly result = constant(FieldElement::one(F_)) % m;
    Poly base = *this % m;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = (result * result) % m;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * base) % m;
    }
    return result;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        bool unit = c_[i].is_one() && i > 0;
        if (!unit) s += c_[i].to_string();
        if (i > 0) s += std::string(unit ? "" : "*") + "x" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
}

Poly gcd(const Poly& a_in, const Poly& b_in) {
    Poly a = a_in, b = b_in;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace {

bool is_one(const Poly& f) { return f.degree() == 0 && f.leading().is_one(); }

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& f) {
    const FieldPtr& F = f.field();
    std::uint64_t p = F->characteristic();
    Integer e = F->order() / static_cast<unsigned long>(p);
    std::vector<FieldElement> r;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) r.push_back(f.coeff(i).pow(e));
    return Poly(F, std::move(r));
}

void sff(const Poly& f, int mult, std::vector<Factor>& out) {
    const FieldPtr& F = f.field();
    Poly d = f.derivative();
    if (d.is_zero()) {
        if (f.degree() > 0) sff(pth_root(f), mult * static_cast<int>(F->characteristic()), out);
        return;
    }
    Poly c = gcd(f, d);
    Poly w = f / c;
    int i = 1;
    while (!is_one(w)) {
        Poly y = gcd(w, c);
        Poly fac = w / y;
        if (fac.degree() > 0) out.push_back({fac.monic(), i * mult});
        ++i;
        w = y;
        c = c / y;
    }
    if (!F->is_rational() && c.degree() > 0) sff(pth_root(c), mult * static_cast<int>(F->characteristic()), out);
}

std::mt19937_64& rng() {
    thread_local std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);
    return gen;
}

FieldElement random_element(const FieldPtr& F) {
    std::uint64_t p = F->characteristic();
    std::vector<std::uint64_t> c(F->degree());
    for (auto& v : c) v = rng()() % p;
    return FieldElement::from_coeffs(F, c);
}

Poly random_poly(const FieldPtr& F, int deg) {
    std::vector<FieldElement> c;
    for (int i = 0; i <= deg; ++i) c.push_back(random_element(F));
    return Poly(F, std::move(c));
}

void equal_degree(const Poly& g, int d, std::vector<Poly>& out) {
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    const FieldPtr& F = g.field();
    Integer q = F->order();
    bool even = F->characteristic() == 2;
    Integer qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), d);
    Integer e = (qd - 1) / 2;
    FieldElement one = FieldElement::one(F);
    while (true) {
        Poly a = random_poly(F, g.degree() - 1);
        if (a.degree() < 1) continue;
        Poly b;
        if (even) {
            int steps = F->degree() * d;
            Poly t = a % g, acc = a % g;
            for (int i = 1; i < steps; ++i) {
                t = (t * t) % g;
                acc = acc + t;
            }
            b = acc;
        } else {
            b = a.powmod(e, g) - Poly::constant(one);
        }
        Poly h = gcd(g, b);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree(h, d, out);
            equal_degree(g / h, d, out);
            return;
        }
    }
}

// factors of a monic squarefree polynomial
std::vector<Poly> factor_squarefree(const Poly& f_in) {
    const FieldPtr& F = f_in.field();
    Integer q = F->order();
    std::vector<Poly> out;
    Poly f = f_in.monic();
    Poly X = Poly::x(F);
    Poly h = X % f;
    int i = 1;
    while (f.degree() >= 2 * i) {
        h = h.powmod(q, f);
        Poly g = gcd(f, h - X);
        if (g.degree() > 0) {
            equal_degree(g, i, out);
            f = f / g;
            h = h % f;
        }
        ++i;
    }
    if (f.degree() > 0) out.push_back(f.monic());
    return out;
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), b.coeffs().end());
}

}  // namespace

std::vector<Poly> squarefree_decomposition(const Poly& f) {
    std::vector<Factor> parts;
    sff(f.monic(), 1, parts);
    int top = 0;
    for (const auto& part : parts) top = std::max(top, part.multiplicity);
    std::vector<Poly> res(top, Poly::constant(FieldElement::one(f.field())));
    for (const auto& part : parts) res[part.multiplicity - 1] = res[part.multiplicity - 1] * part.poly;
    return res;
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) return false;
    if (f.degree() == 0) return true;
    return gcd(f, f.derivative()).degree() == 0 && !f.derivative().is_zero();
}

bool is_irreducible(const Poly& f) {
    if (f.is_zero() || f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    if (f.field()->is_rational()) throw DomainError("irreducibility over QQ is not supported");
    Poly g = f.monic();
    int n = g.degree();
    Integer q = g.field()->order();
    Poly X = Poly::x(g.field());
    std::vector<Poly> frob{X % g};
    for (int i = 1; i <= n; ++i) frob.push_back(frob.back().powmod(q, g));
    if (frob[n] != X % g) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r) continue;
        bool prime = true;
        for (int s = 2; s * s <= r; ++s) prime = prime && (r % s);
        if (!prime) continue;
        if (gcd(g, frob[n / r] - X).degree() != 0) return false;
    }
    return true;
}

std::vector<Factor> factor_poly(const Poly& f) {
    if (f.is_zero()) throw DomainError("zero input");
    if (f.field()->is_rational()) throw DomainError("factorisation needs a finite field");
    std::vector<Factor> parts;
    if (f.degree() > 0) sff(f.monic(), 1, parts);
    std::vector<Factor> out;
    for (const auto& part : parts)
        for (auto& g : factor_squarefree(part.poly)) out.push_back({g, part.multiplicity});
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.poly != b.poly) return poly_less(a.poly, b.poly);
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

FieldElement FieldEmbedding::map(const FieldElement& a) const {
    require_same_field(base, a.field());
    if (base == target) return a;
    const auto& c = a.coeffs();
    FieldElement acc = FieldElement::zero(target);
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        acc = acc * image_of_generator + FieldElement::from_coeffs(target, {c[i]});
    return acc;
}

FieldElement FieldEmbedding::restrict(const FieldElement& b) const {
    require_same_field(target, b.field());
    if (base == target) return b;
    std::uint64_t p = base->characteristic();
    int k = base->degree(), n = target->degree();
    // columns: coefficient vectors of rho^i, augmented by b
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(k + 1, 0));
    FieldElement pw = FieldElement::one(target);
    for (int i = 0; i < k; ++i) {
        for (int r = 0; r < n; ++r) m[r][i] = pw.coeffs()[r];
        pw = pw * (k > 1 ? image_of_generator : FieldElement::one(target));
    }
    for (int r = 0; r < n; ++r) m[r][k] = b.coeffs()[r];
    int row = 0;
    std::vector<int> pivcol;
    for (int col = 0; col < k && row < n; ++col) {
        int piv = -1;
        for (int r = row; r < n; ++r)
            if (m[r][col]) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[row]);
        std::uint64_t inv = invmod(m[row][col], p);
        for (auto& v : m[row]) v = mulmod(v, inv, p);
        for (int r = 0; r < n; ++r) {
            if (r == row || !m[r][col]) continue;
            std::uint64_t c = m[r][col];
            for (int j = 0; j <= k; ++j) m[r][j] = (m[r][j] + p - mulmod(c, m[row][j], p)) % p;
        }
        pivcol.push_back(col);
        ++row;
    }
    for (int r = row; r < n; ++r)
        if (m[r][k]) throw DomainError("value does not lie in " + base->to_string());
    std::vector<std::uint64_t> c(k, 0);
    for (int r = 0; r < row; ++r) c[pivcol[r]] = m[r][k];
    return FieldElement::from_coeffs(base, c);
}

FieldEmbedding identity_embedding(const FieldPtr& F) {
    FieldEmbedding e{F, F, FieldElement::one(F)};
    if (!F->is_rational() && F->degree() > 1) e.image_of_generator = FieldElement::generator(F);
    return e;
}

std::vector<std::uint64_t> first_irreducible(std::uint64_t p, int n) {
    FieldPtr Fp = FieldDescriptor::prime(p);
    for (Integer t = 0;; ++t) {
        std::vector<FieldElement> c;
        Integer v = t;
        for (int i = 0; i < n; ++i) {
            c.push_back(FieldElement::from_integer(Fp, v));
            v /= static_cast<unsigned long>(p);
        }
        if (v != 0) break;
        c.push_back(FieldElement::one(Fp));
        if (c[0].is_zero()) continue;
        Poly f(Fp, c);
        if (is_irreducible(f)) {
            std::vector<std::uint64_t> m;
            for (const auto& e : c) m.push_back(e.coeffs()[0]);
            return m;
        }
    }
    throw DomainError("no irreducible polynomial found");
}

FieldEmbedding extend_field(const FieldPtr& base, int m) {
    if (base->is_rational()) throw DomainError("extensions of QQ are not supported");
    if (m == 1) return identity_embedding(base);
    std::uint64_t p = base->characteristic();
    int k = base->degree();
    FieldPtr target = FieldDescriptor::extension(p, first_irreducible(p, k * m));
    FieldEmbedding e{base, target, FieldElement::one(target)};
    if (k > 1) {
        std::vector<FieldElement> mod;
        for (auto c : base->modulus()) mod.push_back(FieldElement::from_coeffs(target, {c}));
        auto fac = factor_poly(Poly(target, mod));
        if (fac.empty() || fac.front().poly.degree() != 1) throw DomainError("embedding failed");
        e.image_of_generator = -fac.front().poly.coeff(0);
    }
    return e;
}

SplittingRoots splitting_roots(const Poly& f) {
    auto fac = factor_poly(f);
    int m = 1;
    for (const auto& g : fac) m = std::lcm(m, g.poly.degree());
    SplittingRoots out;
    out.m = m;
    out.embedding = extend_field(f.field(), m);
    const FieldPtr& E = out.embedding.target;
    for (const auto& g : fac) {
        std::vector<FieldElement> c;
        for (const auto& a : g.poly.coeffs()) c.push_back(out.embedding.map(a));
        Poly ge(E, c);
        auto lin = factor_poly(ge);
        for (const auto& l : lin) {
            if (l.poly.degree() != 1) throw DomainError("splitting field construction failed");
            for (int i = 0; i < g.multiplicity * l.multiplicity; ++i) out.roots.push_back(-l.poly.coeff(0));
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

FieldMatrix::FieldMatrix(const FieldPtr& F, int r, int c) : rows(r), cols(c), a(r * c, FieldElement::zero(F)) {}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& b) const {
    if (cols != b.rows) throw DomainError("matrix shape mismatch");
    FieldMatrix r(a.front().field(), rows, b.cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < b.cols; ++j)
            for (int k = 0; k < cols; ++k) r.at(i, j) += at(i, k) * b.at(k, j);
    return r;
}

bool FieldMatrix::operator==(const FieldMatrix& b) const { return rows == b.rows && cols == b.cols && a == b.a; }

bool FieldMatrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const FieldElement& e) { return e.is_zero(); });
}

int FieldMatrix::rank() const {
    FieldMatrix m = *this;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!m.at(r, col).is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        for (int j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        FieldElement inv = m.at(rank, col).inverse();
        for (int r = rank + 1; r < rows; ++r) {
            FieldElement c = m.at(r, col) * inv;
            if (c.is_zero()) continue;
            for (int j = col; j < cols; ++j) m.at(r, j) -= c * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

FieldMatrix frobenius_twist(const FieldMatrix& m) {
    FieldMatrix r = m;
    for (auto& e : r.a) {
        if (e.field()->is_rational()) throw DomainError("Frobenius twist needs a finite field");
        e = e.frobenius();
    }
    return r;
}

}  // namespace g2cm
