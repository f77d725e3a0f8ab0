#include "g2cm/cmfield.hpp"

#include <algorithm>
#include <numeric>

#include "g2cm/poly.hpp"

namespace g2cm {

std::string to_string(GaloisType t) {
    switch (t) {
        case GaloisType::Cyclic: return "Cyclic";
        case GaloisType::Biquadratic: return "Biquadratic";
        case GaloisType::Dihedral: return "Dihedral";
    }
    return "?";
}

std::string to_string(const SplittingShape& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::string("(") + std::to_string(s[i].first) + "," + std::to_string(s[i].second) + ")";
    return out + "}";
}

std::string poly_to_string(const IntPoly& f) {
    std::string s;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        if (f[i] == 0) continue;
        Integer a = abs(f[i]);
        if (s.empty()) s += f[i] < 0 ? "-" : "";
        else s += f[i] < 0 ? " - " : " + ";
        if (a != 1 || i == 0) s += a.get_str();
        if (i > 0) s += "x" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s.empty() ? "0" : s;
}

namespace {

using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;
using ZVec = std::vector<Integer>;
using ZMat = std::vector<ZVec>;
using UVec = std::vector<std::uint64_t>;

std::uint64_t small_prime(const Integer& p) {
    if (p < 2 || !mpz_fits_ulong_p(p.get_mpz_t())) throw DomainError("prime out of range");
    if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw DomainError(p.get_str() + " is not prime");
    return p.get_ui();
}

Poly to_fp(const IntPoly& f, const FieldPtr& Fp) {
    std::vector<FieldElement> c;
    for (const auto& a : f) c.push_back(FieldElement::from_integer(Fp, a));
    return Poly(Fp, c);
}

IntPoly lift(const Poly& f) {
    IntPoly r;
    for (const auto& c : f.coeffs()) r.emplace_back(static_cast<unsigned long>(c.coeffs()[0]));
    return r;
}

IntPoly zmul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

RVec elem_mul(const IntPoly& f, const RVec& a, const RVec& b) {
    int n = static_cast<int>(f.size()) - 1;
    RVec prod(2 * n - 1, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
    for (int k = 2 * n - 2; k >= n; --k) {
        Rational c = prod[k];
        if (c == 0) continue;
        for (int j = 0; j < n; ++j) prod[k - n + j] -= c * f[j];
        prod[k] = 0;
    }
    prod.resize(n);
    return prod;
}

RMat inverse(RMat a) {
    int n = static_cast<int>(a.size());
    RMat inv(n, RVec(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) { piv = r; break; }
        if (piv < 0) throw DomainError("singular matrix");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        Rational s = 1 / a[c][c];
        for (int j = 0; j < n; ++j) { a[c][j] *= s; inv[c][j] *= s; }
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational t = a[r][c];
            for (int j = 0; j < n; ++j) { a[r][j] -= t * a[c][j]; inv[r][j] -= t * inv[c][j]; }
        }
    }
    return inv;
}

RVec vec_mat(const RVec& v, const RMat& m) {
    RVec r(m[0].size(), 0);
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            for (size_t j = 0; j < r.size(); ++j) r[j] += v[i] * m[i][j];
    return r;
}

Rational det(RMat a) {
    int n = static_cast<int>(a.size());
    Rational d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) { std::swap(a[piv], a[c]); d = -d; }
        d *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rational t = a[r][c] / a[c][c];
            for (int j = c; j < n; ++j) a[r][j] -= t * a[c][j];
        }
    }
    return d;
}

ZVec to_integral(const RVec& v) {
    ZVec r;
    for (const auto& q : v) {
        if (q.get_den() != 1) throw DomainError("internal error: expected an integral vector");
        r.push_back(q.get_num());
    }
    return r;
}

// {c in F_p^m : sum c_i rows_i = 0}
std::vector<UVec> kernel_mod_p(const std::vector<UVec>& rows, std::uint64_t p) {
    int m = static_cast<int>(rows.size());
    int L = m ? static_cast<int>(rows[0].size()) : 0;
    // matrix with columns = rows; solve M c = 0
    std::vector<UVec> M(L, UVec(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < L; ++j) M[j][i] = rows[i][j] % p;
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < m && r < L; ++c) {
        int piv = -1;
        for (int k = r; k < L; ++k)
            if (M[k][c]) { piv = k; break; }
        if (piv < 0) continue;
        std::swap(M[piv], M[r]);
        std::uint64_t inv = invmod(M[r][c], p);
        for (auto& v : M[r]) v = mulmod(v, inv, p);
        for (int k = 0; k < L; ++k) {
            if (k == r || !M[k][c]) continue;
            std::uint64_t t = M[k][c];
            for (int j = 0; j < m; ++j) M[k][j] = (M[k][j] + p - mulmod(t, M[r][j], p)) % p;
        }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<UVec> basis;
    for (int free = 0; free < m; ++free) {
        if (std::find(pivcol.begin(), pivcol.end(), free) != pivcol.end()) continue;
        UVec v(m, 0);
        v[free] = 1;
        for (int k = 0; k < r; ++k) v[pivcol[k]] = (p - M[k][free]) % p;
        basis.push_back(v);
    }
    return basis;
}

// Hermite normal form basis (upper triangular, positive pivots) of a full-rank lattice.
ZMat hnf(ZMat a, int n) {
    int r = 0;
    for (int col = 0; col < n; ++col) {
        while (true) {
            int best = -1;
            for (int k = r; k < static_cast<int>(a.size()); ++k)
                if (a[k][col] != 0 && (best < 0 || abs(a[k][col]) < abs(a[best][col]))) best = k;
            if (best < 0) break;
            std::swap(a[best], a[r]);
            bool done = true;
            for (int k = r + 1; k < static_cast<int>(a.size()); ++k) {
                if (a[k][col] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[k][col].get_mpz_t(), a[r][col].get_mpz_t());
                for (int j = 0; j < n; ++j) a[k][j] -= q * a[r][j];
                if (a[k][col] != 0) done = false;
            }
            if (done) break;
        }
        if (r >= static_cast<int>(a.size()) || a[r][col] == 0) throw DomainError("internal error: lattice not of full rank");
        if (a[r][col] < 0)
            for (auto& v : a[r]) v = -v;
        for (int k = 0; k < r; ++k) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[k][col].get_mpz_t(), a[r][col].get_mpz_t());
            for (int j = 0; j < n; ++j) a[k][j] -= q * a[r][j];
        }
        ++r;
    }
    a.resize(n);
    return a;
}

RMat to_rational(const ZMat& m) {
    RMat r;
    for (const auto& row : m) r.emplace_back(row.begin(), row.end());
    return r;
}

struct Order {
    const IntPoly& f;
    int n;
    RMat W;
    std::vector<std::vector<ZVec>> T;  // structure constants in O-coordinates

    Order(const IntPoly& f_, RMat W_) : f(f_), n(static_cast<int>(f_.size()) - 1), W(std::move(W_)) {
        RMat Winv = inverse(W);
        T.assign(n, std::vector<ZVec>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) T[i][j] = to_integral(vec_mat(elem_mul(f, W[i], W[j]), Winv));
    }

    ZVec mul(const ZVec& x, const ZVec& y) const {
        ZVec r(n, 0);
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < n; ++j) {
                if (y[j] == 0) continue;
                Integer s = x[i] * y[j];
                for (int k = 0; k < n; ++k) r[k] += s * T[i][j][k];
            }
        }
        return r;
    }

    UVec mul_p(const UVec& x, const UVec& y, std::uint64_t p) const {
        UVec r(n, 0);
        for (int i = 0; i < n; ++i) {
            if (!x[i]) continue;
            for (int j = 0; j < n; ++j) {
                if (!y[j]) continue;
                std::uint64_t s = mulmod(x[i], y[j], p);
                for (int k = 0; k < n; ++k) r[k] = (r[k] + mulmod(s, reduce_integer(T[i][j][k], p), p)) % p;
            }
        }
        return r;
    }

    UVec pow_p(const UVec& x, const Integer& e, std::uint64_t p) const {
        // identity element in O-coordinates
        RVec one_power(n, 0);
        one_power[0] = 1;
        ZVec one = to_integral(vec_mat(one_power, inverse(W)));
        UVec r(n);
        for (int i = 0; i < n; ++i) r[i] = reduce_integer(one[i], p);
        size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t b = bits; b-- > 0;) {
            r = mul_p(r, r, p);
            if (mpz_tstbit(e.get_mpz_t(), b)) r = mul_p(r, x, p);
        }
        return r;
    }
};

ZMat lattice_with_pO(const std::vector<UVec>& ker, std::uint64_t p, int n) {
    ZMat gens;
    for (const auto& v : ker) {
        ZVec z;
        for (auto c : v) z.emplace_back(static_cast<unsigned long>(c));
        gens.push_back(z);
    }
    for (int i = 0; i < n; ++i) {
        ZVec z(n, 0);
        z[i] = static_cast<unsigned long>(p);
        gens.push_back(z);
    }
    return hnf(gens, n);
}

SplittingShape shape_from_factors(const std::vector<Factor>& fac) {
    SplittingShape s;
    for (const auto& x : fac) s.emplace_back(x.multiplicity, x.poly.degree());
    std::sort(s.begin(), s.end());
    return s;
}

std::optional<SplittingShape> dedekind_shape(const IntPoly& f, std::uint64_t p) {
    FieldPtr Fp = FieldDescriptor::prime(p);
    auto fac = factor_poly(to_fp(f, Fp));
    IntPoly g{1}, h{1};
    Poly gbar = Poly::constant(FieldElement::one(Fp)), hbar = gbar;
    for (const auto& x : fac) {
        IntPoly G = lift(x.poly);
        g = zmul(g, G);
        gbar = gbar * x.poly;
        for (int i = 1; i < x.multiplicity; ++i) {
            h = zmul(h, G);
            hbar = hbar * x.poly;
        }
    }
    IntPoly gh = zmul(g, h);
    gh.resize(std::max(gh.size(), f.size()), 0);
    IntPoly F(gh.size());
    Integer P(static_cast<unsigned long>(p));
    for (size_t i = 0; i < gh.size(); ++i) {
        Integer diff = gh[i] - (i < f.size() ? f[i] : Integer(0));
        if (!mpz_divisible_p(diff.get_mpz_t(), P.get_mpz_t())) throw DomainError("internal error in Dedekind test");
        F[i] = diff / P;
    }
    Poly Fbar = to_fp(F, Fp);
    Poly common = gcd(gcd(Fbar, gbar), hbar);
    if (common.degree() > 0) return std::nullopt;
    return shape_from_factors(fac);
}

}  // namespace

QuarticCMField QuarticCMField::make(const Integer& d, const Integer& alpha, const Integer& beta) {
    if (d <= 1) throw DomainError("d must be a squarefree integer > 1");
    if (squarefree_part(d) != d) throw DomainError("d must be squarefree");
    if (alpha >= 0 || alpha * alpha - beta * beta * d <= 0)
        throw DomainError("r = alpha + beta*sqrt(d) must be totally negative");
    return {d, alpha, beta};
}

IntPoly QuarticCMField::minpoly() const { return {norm_r(), 0, -2 * alpha, 0, 1}; }

GaloisType galois_type(const QuarticCMField& K) {
    Integer N = K.norm_r();
    if (mpz_perfect_square_p(N.get_mpz_t())) return GaloisType::Biquadratic;
    Integer Nd = N * K.d;
    if (mpz_perfect_square_p(Nd.get_mpz_t())) return GaloisType::Cyclic;
    return GaloisType::Dihedral;
}

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n_in) {
    Integer n = abs(n_in);
    if (n == 0) throw DomainError("cannot factor zero");
    std::vector<std::pair<Integer, int>> out;
    for (unsigned long q = 2; q <= 1000000 && q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), q)) continue;
        int e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
            ++e;
        }
        out.emplace_back(Integer(q), e);
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0 && n > Integer(1000000) * Integer(1000000))
            throw DomainError("integer factorisation incomplete: cofactor " + n.get_str());
        out.emplace_back(n, 1);
    }
    return out;
}

Integer squarefree_part(const Integer& n) {
    Integer r = n < 0 ? -1 : 1;
    for (const auto& [q, e] : factor_integer(n))
        if (e % 2) r *= q;
    return r;
}

IntPoly real_quadratic_model(const Integer& d) {
    Integer m4;
    mpz_fdiv_r_ui(m4.get_mpz_t(), d.get_mpz_t(), 4);
    if (m4 == 1) return {-(d - 1) / 4, -1, 1};
    return {-d, 0, 1};
}

namespace {

Integer fundamental_discriminant(const Integer& m_in) {
    Integer m = squarefree_part(m_in);
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), m.get_mpz_t(), 4);
    return r == 1 ? m : 4 * m;
}

}  // namespace

ReflexField reflex_field(const QuarticCMField& K) {
    ReflexField R;
    R.type = galois_type(K);
    Integer N = K.norm_r();
    switch (R.type) {
        case GaloisType::Cyclic:
            R.minpoly = K.minpoly();
            R.real_subfield_d = K.d;
            break;
        case GaloisType::Dihedral:
            R.minpoly = {4 * K.alpha * K.alpha - 4 * N, 0, -4 * K.alpha, 0, 1};
            R.real_subfield_d = squarefree_part(N);
            break;
        case GaloisType::Biquadratic: {
            Integer s = sqrt(N);
            R.primitive = false;
            R.imaginary_discs = {fundamental_discriminant(2 * K.alpha + 2 * s),
                                 fundamental_discriminant(2 * K.alpha - 2 * s)};
            R.marked = 0;
            break;
        }
    }
    return R;
}

Integer poly_discriminant(const IntPoly& f) {
    int n = static_cast<int>(f.size()) - 1;
    if (n < 1) throw DomainError("discriminant of a constant");
    if (n == 1) return 1;
    IntPoly df;
    for (int i = 1; i <= n; ++i) df.push_back(f[i] * i);
    int N = 2 * n - 1;
    RMat S(N, RVec(N, 0));
    // rows in descending-degree layout
    for (int r = 0; r < n - 1; ++r)
        for (int j = 0; j <= n; ++j) S[r][r + j] = f[n - j];
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j) S[n - 1 + r][r + j] = df[n - 1 - j];
    Rational res = det(S);
    Rational d = res / Rational(f[n]);
    if ((n * (n - 1) / 2) % 2) d = -d;
    if (d.get_den() != 1) throw DomainError("internal error: non-integral discriminant");
    return d.get_num();
}

IntPoly charpoly_of(const IntPoly& f, const RVec& gamma) {
    int n = static_cast<int>(f.size()) - 1;
    // multiplication matrix acting on row vectors: row i = gamma * theta^i
    RMat A(n);
    for (int i = 0; i < n; ++i) {
        RVec ti(n, 0);
        ti[i] = 1;
        A[i] = elem_mul(f, gamma, ti);
    }
    // Faddeev-LeVerrier
    std::vector<Rational> c(n + 1, 0);
    c[n] = 1;
    RMat M(n, RVec(n, 0));
    for (int k = 1; k <= n; ++k) {
        RMat AM(n, RVec(n, 0));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                if (A[i][l] != 0)
                    for (int j = 0; j < n; ++j) AM[i][j] += A[i][l] * M[l][j];
        for (int i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
        M = AM;
        Rational tr = 0;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
        c[n - k] = -tr / k;
    }
    IntPoly out;
    for (const auto& q : c) {
        if (q.get_den() != 1) throw DomainError("internal error: element is not integral");
        out.push_back(q.get_num());
    }
    return out;
}

namespace {

ZMat radical(const Order& O, const Integer& P) {
    std::uint64_t p = P.get_ui();
    int n = O.n;
    Integer q = P;
    while (q < n) q *= P;
    std::vector<UVec> images;
    for (int i = 0; i < n; ++i) {
        UVec e(n, 0);
        e[i] = 1;
        images.push_back(O.pow_p(e, q, p));
    }
    return lattice_with_pO(kernel_mod_p(images, p), p, n);
}

ZMat lattice_mod_p(const ZMat& gens, std::uint64_t p, int n) {
    std::vector<UVec> red;
    for (const auto& g : gens) {
        UVec v;
        for (const auto& c : g) v.push_back(reduce_integer(c, p));
        red.push_back(v);
    }
    return lattice_with_pO(red, p, n);
}

int log_index(const ZMat& L, const Integer& P) {
    Integer d = 1;
    for (size_t i = 0; i < L.size(); ++i) d *= L[i][i];
    return valuation(d, P);
}

void enumerate_shapes(int remaining, std::pair<int, int> min, SplittingShape& cur, std::vector<SplittingShape>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int e = 1; e <= remaining; ++e)
        for (int f = 1; e * f <= remaining; ++f) {
            if (std::make_pair(e, f) < min) continue;
            cur.emplace_back(e, f);
            enumerate_shapes(remaining - e * f, {e, f}, cur, out);
            cur.pop_back();
        }
}

// Reads (e, f) off a p-maximal order: Frobenius fixed spaces on O/rad give the residue
// degrees, the indices of the radical powers give the ramification indices.
SplittingShape shape_from_order(const IntPoly& f, const Integer& P, const PMaximalOrder& M) {
    std::uint64_t p = P.get_ui();
    Order O(f, M.basis);
    int n = O.n;
    ZMat R = radical(O, P);
    std::vector<UVec> Rbar;
    for (const auto& r : R) {
        UVec v;
        for (const auto& c : r) v.push_back(reduce_integer(c, p));
        Rbar.push_back(v);
    }
    int dimR = static_cast<int>(Rbar.size()) - static_cast<int>(kernel_mod_p(Rbar, p).size());
    std::vector<UVec> cols(n, UVec(Rbar.size()));
    for (size_t i = 0; i < Rbar.size(); ++i)
        for (int j = 0; j < n; ++j) cols[j][i] = Rbar[i][j];
    std::vector<UVec> Y = kernel_mod_p(cols, p);

    std::vector<int> fsig(n + 1, 0), esig(n + 1, 0);
    std::vector<UVec> img(n, UVec(n, 0));
    for (int i = 0; i < n; ++i) img[i][i] = 1;
    for (int k = 1; k <= n; ++k) {
        std::vector<UVec> rows;
        for (int i = 0; i < n; ++i) {
            img[i] = O.pow_p(img[i], P, p);
            UVec diff = img[i];
            diff[i] = (diff[i] + p - 1) % p;
            UVec row;
            for (const auto& y : Y) {
                std::uint64_t t = 0;
                for (int j = 0; j < n; ++j) t = (t + mulmod(diff[j], y[j], p)) % p;
                row.push_back(t);
            }
            rows.push_back(row);
        }
        fsig[k] = static_cast<int>(kernel_mod_p(rows, p).size()) - dimR;
    }
    ZMat Rk = R;
    for (int k = 1; k <= n; ++k) {
        esig[k] = log_index(Rk, P);
        ZMat gens;
        for (const auto& a : Rk)
            for (const auto& b : R) gens.push_back(O.mul(a, b));
        Rk = lattice_mod_p(gens, p, n);
    }

    std::vector<SplittingShape> all, match;
    SplittingShape cur;
    enumerate_shapes(n, {0, 0}, cur, all);
    for (const auto& s : all) {
        bool ok = true;
        for (int k = 1; k <= n && ok; ++k) {
            int fs = 0, es = 0;
            for (auto [e, fd] : s) {
                fs += std::gcd(k, fd);
                es += fd * std::min(k, e);
            }
            ok = fs == fsig[k] && es == esig[k];
        }
        if (ok) match.push_back(s);
    }
    if (match.size() != 1) throw DomainError("index obstruction at p = " + P.get_str());
    return match[0];
}

}  // namespace

PMaximalOrder p_maximal_order(const IntPoly& f, const Integer& P) {
    std::uint64_t p = small_prime(P);
    int n = static_cast<int>(f.size()) - 1;
    if (f.back() != 1) throw DomainError("p-maximal order needs a monic polynomial");
    RMat W(n, RVec(n, 0));
    for (int i = 0; i < n; ++i) W[i][i] = 1;
    Integer pn;
    mpz_pow_ui(pn.get_mpz_t(), P.get_mpz_t(), n);
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        Order O(f, W);
        ZMat I = radical(O, P);
        RMat Iinv = inverse(to_rational(I));
        std::vector<UVec> rows;
        for (int i = 0; i < n; ++i) {
            ZVec e(n, 0);
            e[i] = 1;
            UVec row;
            for (int l = 0; l < n; ++l) {
                ZVec prod = O.mul(e, I[l]);
                ZVec y = to_integral(vec_mat(RVec(prod.begin(), prod.end()), Iinv));
                for (const auto& v : y) row.push_back(reduce_integer(v, p));
            }
            rows.push_back(row);
        }
        ZMat U = lattice_with_pO(kernel_mod_p(rows, p), p, n);
        Integer detU = 1;
        for (int i = 0; i < n; ++i) detU *= U[i][i];
        if (detU == pn) {
            converged = true;
            break;
        }
        RMat Wn(n, RVec(n, 0));
        for (int i = 0; i < n; ++i) {
            RVec ui(U[i].begin(), U[i].end());
            for (auto& v : ui) v /= Rational(P);
            Wn[i] = vec_mat(ui, W);
        }
        W = Wn;
    }
    if (!converged) throw DomainError("internal error: maximal order computation did not converge");
    PMaximalOrder out;
    out.basis = W;
    Rational dW = det(W);
    out.index_valuation = -valuation(abs(dW), P);
    return out;
}

bool dedekind_p_maximal(const IntPoly& f, const Integer& p) { return dedekind_shape(f, small_prime(p)).has_value(); }

SplittingShape splitting_shape(const IntPoly& f, const Integer& P) {
    std::uint64_t p = small_prime(P);
    if (f.back() != 1) throw DomainError("splitting_shape needs a monic polynomial");
    if (auto s = dedekind_shape(f, p)) return *s;
    return shape_from_order(f, P, p_maximal_order(f, P));
}

Integer field_discriminant(const IntPoly& f) {
    Integer D = poly_discriminant(f);
    Integer result = D;
    for (const auto& [q, e] : factor_integer(D)) {
        if (e < 2) continue;
        int v = p_maximal_order(f, q).index_valuation;
        Integer qq;
        mpz_pow_ui(qq.get_mpz_t(), q.get_mpz_t(), 2 * v);
        result /= qq;
    }
    return result;
}

ShapeProfile shape_profile(const QuarticCMField& K, const Integer& p) {
    ShapeProfile s;
    s.experimental = (p == 2);
    s.K = splitting_shape(K.minpoly(), p);
    s.Kplus = splitting_shape(real_quadratic_model(K.d), p);
    if (galois_type(K) == GaloisType::Dihedral) {
        ReflexField R = reflex_field(K);
        s.Kstar = splitting_shape(R.minpoly, p);
        s.Kstar_plus = splitting_shape(real_quadratic_model(R.real_subfield_d), p);
    }
    return s;
}

}  // namespace g2cm
