#include "g2cm/invariants.hpp"

#include <numeric>

namespace g2cm {

HyperellipticModel HyperellipticModel::from_leading_first(const FieldPtr& F, const std::vector<FieldElement>& coeffs) {
    if (coeffs.size() != 7 && coeffs.size() != 6)
        throw DomainError("expected 6 or 7 coefficients, got " + std::to_string(coeffs.size()));
    HyperellipticModel m;
    m.field = F;
    size_t shift = 7 - coeffs.size();
    for (size_t i = 0; i < 7; ++i) m.u[i] = i < shift ? FieldElement::zero(F) : coeffs[i - shift];
    for (const auto& c : m.u) require_same_field(F, c.field());
    return m;
}

Poly HyperellipticModel::poly() const {
    std::vector<FieldElement> c(u.rbegin(), u.rend());
    return Poly(field, c);
}

int HyperellipticModel::degree() const { return poly().degree(); }

namespace {

void require_char_not(const FieldPtr& F, std::initializer_list<std::uint64_t> bad, const char* what) {
    for (auto p : bad)
        if (F->characteristic() == p)
            throw DomainError(std::string(what) + " is unsupported in characteristic " + std::to_string(p));
}

FieldElement c(const FieldPtr& F, long num, long den = 1) { return FieldElement::from_rational(F, Rational(num, den)); }

// roots in a splitting field for finite fields
IgusaClebsch ic_finite(const HyperellipticModel& m, const InvariantOptions& opt) {
    Poly f = m.poly();
    int deg = f.degree();
    if (!opt.allow_singular && !is_squarefree(f)) throw DomainError("singular model: f is not squarefree");
    SplittingRoots sr = splitting_roots(f);
    const FieldPtr& E = sr.embedding.target;
    std::vector<std::optional<FieldElement>> roots;
    for (const auto& r : sr.roots) roots.emplace_back(r);
    if (deg == 5) roots.emplace_back(std::nullopt);
    FieldElement lead = sr.embedding.map(deg == 6 ? m.u[0] : m.u[1]);
    auto v = igusa_clebsch_from_roots(roots, lead, FieldElement::one(E));
    return {sr.embedding.restrict(v[0]), sr.embedding.restrict(v[1]), sr.embedding.restrict(v[2]),
            sr.embedding.restrict(v[3])};
}

using Cx = ComplexBall;

Cx horner(const std::vector<Integer>& a, const Cx& z, mpfr_prec_t prec) {
    Cx acc = Cx::from_int(0, prec);
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) acc = acc * z + Cx::from_rational(Rational(a[i]), prec);
    return acc;
}

struct RootBalls {
    std::vector<Cx> roots;
    bool certified = false;
};

// Aberth iteration followed by Weierstrass-disc certification; a is squarefree, low-to-high.
RootBalls certified_roots(const std::vector<Integer>& a, mpfr_prec_t prec) {
    int n = static_cast<int>(a.size()) - 1;
    RootBalls out;
    if (n == 0) {
        out.certified = true;
        return out;
    }
    std::vector<Integer> da;
    for (int i = 1; i <= n; ++i) da.push_back(a[i] * i);
    // Cauchy radius
    Rational bound = 0;
    for (int i = 0; i < n; ++i) {
        Rational q(abs(a[i]), abs(a[n]));
        if (q > bound) bound = q;
    }
    Real R(Rational(bound + 1), prec);
    Real twopi = Real::pi(prec) * Real(2.0, prec);
    std::vector<Cx> z;
    for (int k = 0; k < n; ++k) {
        Real ang = twopi * Real(Rational(4 * k + 1, 4 * n), prec) + Real(0.4, prec);
        Real rr = R * Real(Rational(1 + k, 2 * n + 1), prec) + Real(0.5, prec);
        z.emplace_back(rr * cos(ang), rr * sin(ang));
    }
    Real tiny = Real(1.0, prec);
    mpfr_mul_2si(tiny.get(), tiny.get(), -static_cast<long>(prec) + 16, MPFR_RNDN);
    for (int it = 0; it < 2000; ++it) {
        Real worst(0.0, prec);
        for (int i = 0; i < n; ++i) {
            Cx fz = horner(a, z[i], prec);
            Cx dz = horner(da, z[i], prec);
            if (fz.mid_abs().is_zero()) continue;
            Cx ratio = fz / Cx(dz.re(), dz.im());
            Cx s = Cx::from_int(0, prec);
            for (int j = 0; j < n; ++j)
                if (j != i) {
                    Cx d = z[i] - z[j];
                    s = s + Cx(d.re(), d.im()).inverse();
                }
            Cx one = Cx::from_int(1, prec);
            Cx den = one - Cx(ratio.re(), ratio.im()) * Cx(s.re(), s.im());
            Cx w = Cx(ratio.re(), ratio.im()) / Cx(den.re(), den.im());
            z[i] = Cx(z[i].re() - w.re(), z[i].im() - w.im());
            Real mag = w.mid_abs() / (Real(1.0, prec) + z[i].mid_abs());
            if (mag > worst) worst = mag;
        }
        if (worst < tiny) break;
    }
    // Weierstrass corrections W_i = f(z_i) / (lc prod_{j != i} (z_i - z_j)); discs of radius n|W_i|
    std::vector<Real> rad(n, Real(0.0, 64));
    for (int i = 0; i < n; ++i) {
        Cx zi(z[i].re(), z[i].im());
        Cx fz = horner(a, zi, prec);
        Real num = fz.abs_upper();
        Real den(Integer(abs(a[n])), 64);
        for (int j = 0; j < n; ++j)
            if (j != i) {
                Cx d = zi - Cx(z[j].re(), z[j].im());
                Real lo = d.abs_lower();
                if (lo.is_zero()) return out;
                Real t(64);
                mpfr_mul(t.get(), den.get(), lo.get(), MPFR_RNDD);
                den = t;
            }
        rad[i] = mul_up(div_up(num, den), Real(static_cast<double>(n), 64));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Cx d = Cx(z[i].re(), z[i].im()) - Cx(z[j].re(), z[j].im());
            if (d.abs_lower() <= add_up(rad[i], rad[j])) return out;
        }
    for (int i = 0; i < n; ++i) out.roots.emplace_back(z[i].re(), z[i].im(), rad[i]);
    out.certified = true;
    return out;
}

bool round_ball(const Cx& v, Integer& result) {
    Real eps(1.0, 64);
    mpfr_mul_2si(eps.get(), eps.get(), -30, MPFR_RNDN);
    if (!(v.rad() < eps)) return false;
    Integer n = v.re().round_to_integer();
    Real diff = abs(v.re() - Real(n, v.prec()));
    if (!(add_up(add_up(diff, abs(v.im())), v.rad()) < eps)) return false;
    result = n;
    return true;
}

std::vector<Integer> to_integer_poly(const std::vector<Rational>& u, Integer& L) {
    L = 1;
    for (const auto& q : u) L = lcm(L, Integer(q.get_den()));
    std::vector<Integer> out;
    for (const auto& q : u) out.push_back(Integer(q * L));
    return out;
}

std::vector<Integer> primitive_integer(const Poly& f) {
    std::vector<Rational> q;
    for (const auto& e : f.coeffs()) q.push_back(e.rational());
    Integer L;
    auto v = to_integer_poly(q, L);
    return v;
}

IgusaClebsch ic_rational(const HyperellipticModel& m, const InvariantOptions& opt) {
    const FieldPtr& Q = m.field;
    std::vector<Rational> u;
    for (const auto& e : m.u) u.push_back(e.rational());
    Integer L;
    std::vector<Integer> v = to_integer_poly(u, L);
    std::vector<FieldElement> ve;
    for (const auto& x : v) ve.push_back(FieldElement::from_integer(Q, x));
    HyperellipticModel mi = HyperellipticModel::from_leading_first(Q, ve);
    Poly f = mi.poly();
    int deg = f.degree();
    bool sqfree = is_squarefree(f);
    if (!opt.allow_singular && !sqfree) throw DomainError("singular model: f is not squarefree");
    std::vector<Poly> parts = squarefree_decomposition(f);
    for (mpfr_prec_t prec = opt.start_bits; prec <= opt.max_bits; prec *= 2) {
        std::vector<std::optional<Cx>> roots;
        bool ok = true;
        for (size_t mult = 1; mult <= parts.size() && ok; ++mult) {
            if (parts[mult - 1].degree() < 1) continue;
            auto rb = certified_roots(primitive_integer(parts[mult - 1]), prec);
            if (!rb.certified) ok = false;
            for (const auto& r : rb.roots)
                for (size_t t = 0; t < mult; ++t) roots.emplace_back(r);
        }
        if (!ok) continue;
        if (deg == 5) roots.emplace_back(std::nullopt);
        Cx lead = Cx::from_rational(Rational(v[deg == 6 ? 0 : 1]), prec);
        auto vals = igusa_clebsch_from_roots(roots, lead, Cx::from_int(1, prec));
        std::array<Integer, 4> ints;
        for (int i = 0; i < 4 && ok; ++i) ok = round_ball(vals[i], ints[i]);
        if (!sqfree) ints[3] = 0;
        if (!ok) continue;
        static const int weight[4] = {2, 4, 6, 10};
        std::array<FieldElement, 4> res;
        for (int i = 0; i < 4; ++i) {
            Integer Lk;
            mpz_pow_ui(Lk.get_mpz_t(), L.get_mpz_t(), weight[i]);
            res[i] = FieldElement::from_rational(Q, Rational(ints[i], Lk));
        }
        return {res[0], res[1], res[2], res[3]};
    }
    throw DomainError("precision exhausted while certifying Igusa-Clebsch invariants");
}

}  // namespace

IgusaClebsch igusa_clebsch(const HyperellipticModel& m, const InvariantOptions& opt) {
    require_char_not(m.field, {2}, "invariant computation");
    int deg = m.degree();
    if (deg < 5) throw DomainError("degree of f must be 5 or 6");
    if (m.field->is_rational()) return ic_rational(m, opt);
    return ic_finite(m, opt);
}

JVector j_from_igusa_clebsch(const IgusaClebsch& ic) {
    const FieldPtr& F = ic.A.field();
    require_char_not(F, {2, 3}, "J-invariant conversion");
    FieldElement J2 = ic.A * c(F, 1, 8);
    FieldElement J4 = (c(F, 4) * J2 * J2 - ic.B) * c(F, 1, 96);
    FieldElement J6 = (c(F, 8) * J2 * J2 * J2 - c(F, 160) * J2 * J4 - ic.C) * c(F, 1, 576);
    FieldElement J8 = (J2 * J6 - J4 * J4) * c(F, 1, 4);
    FieldElement J10 = ic.D * c(F, 1, 4096);
    return {{J2, J4, J6, J8, J10}};
}

GammaVector gamma_from_j(const JVector& jv) {
    const auto& [J2, J4, J6, J8, J10] = jv.J;
    if (J10.is_zero()) throw DomainError("curve degenerates / D=0");
    FieldElement i10 = J10.inverse();
    FieldElement i10_2 = i10 * i10, i10_3 = i10_2 * i10, i10_4 = i10_3 * i10;
    auto p = [](const FieldElement& x, long e) { return x.pow(e); };
    return {{p(J2, 5) * i10, p(J2, 3) * J4 * i10, J2 * J2 * J6 * i10, J2 * J8 * i10, J4 * J6 * i10,
             J4 * J8 * J8 * i10_2, J6 * J6 * J8 * i10_2, p(J6, 5) * i10_3, J6 * p(J8, 3) * i10_3, p(J8, 5) * i10_4}};
}

AbsoluteInvariants absolute_from_igusa_clebsch(const IgusaClebsch& ic) {
    if (ic.D.is_zero()) throw DomainError("D = 0: absolute invariants undefined");
    auto v = absolute_from_abcd(ic.A, ic.B, ic.C, ic.D);
    return {v[0], v[1], v[2]};
}

AbsoluteInvariants absolute_from_gamma(const GammaVector& gv) {
    const FieldPtr& F = gv.g[0].field();
    require_char_not(F, {2}, "absolute invariant conversion");
    const auto& g = gv.g;
    return {c(F, 8) * g[0], (g[0] - c(F, 24) * g[1]) * c(F, 1, 2),
            (g[0] - c(F, 20) * g[1] - c(F, 72) * g[2]) * c(F, 1, 8)};
}

GammaVector gamma_from_absolute(const AbsoluteInvariants& a) {
    const FieldPtr& F = a.i1.field();
    require_char_not(F, {2, 3}, "gamma conversion");
    if (a.i1.is_zero()) throw DomainError("absolute invariants do not determine the point");
    const FieldElement &i1 = a.i1, &i2 = a.i2, &i3 = a.i3;
    auto pw = [&](long b, long e) { return FieldElement::from_int(F, b).pow(e); };
    FieldElement P = i1 * i1 + c(F, 416) * i1 * i2 - c(F, 1536) * i1 * i3 - c(F, 768) * i2 * i2;
    FieldElement Q = i1 + c(F, 80) * i2 - c(F, 384) * i3;
    FieldElement R = i1 - c(F, 16) * i2;
    FieldElement inv = i1.inverse();
    return {{i1 * c(F, 1, 8), R * c(F, 1, 192), Q * c(F, 1, 3456), pw(2, -11) * pw(3, -3) * P * inv,
             pw(2, -10) * pw(3, -4) * R * Q * inv, pw(2, -25) * pw(3, -7) * R * P * P * inv.pow(3),
             pw(2, -22) * pw(3, -9) * Q * Q * P * inv.pow(2), pw(2, -29) * pw(3, -15) * Q.pow(5) * inv.pow(2),
             pw(2, -37) * pw(3, -12) * Q * P.pow(3) * inv.pow(4), pw(2, -52) * pw(3, -15) * P.pow(5) * inv.pow(6)}};
}

bool is_isomorphic(const IgusaClebsch& a, const IgusaClebsch& b) {
    const FieldElement* x[4] = {&a.A, &a.B, &a.C, &a.D};
    const FieldElement* y[4] = {&b.A, &b.B, &b.C, &b.D};
    static const long w[4] = {1, 2, 3, 5};
    for (int i = 0; i < 4; ++i) require_same_field(x[i]->field(), y[i]->field());
    std::vector<int> support;
    for (int i = 0; i < 4; ++i) {
        if (x[i]->is_zero() != y[i]->is_zero()) return false;
        if (!x[i]->is_zero()) support.push_back(i);
    }
    if (support.empty()) return true;
    // Bezout coefficients t with sum t_i w_i = g
    long g = 0;
    std::vector<long> t(4, 0);
    for (int i : support) {
        if (g == 0) {
            g = w[i];
            t[i] = 1;
            continue;
        }
        long old_r = g, r = w[i], old_s = 1, s = 0, old_u = 0, u = 1;
        while (r) {
            long q = old_r / r;
            std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
            std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
            std::tie(old_u, u) = std::make_pair(u, old_u - q * u);
        }
        for (auto& v : t) v *= old_s;
        t[i] = old_u;
        g = old_r;
    }
    const FieldPtr& F = a.A.field();
    FieldElement sg = FieldElement::one(F);
    std::vector<FieldElement> ratio(4);
    for (int i : support) {
        ratio[i] = *y[i] / *x[i];
        sg *= ratio[i].pow(t[i]);
    }
    for (int i : support)
        if (ratio[i] != sg.pow(w[i] / g)) return false;
    return true;
}

GoodReduction good_reduction_tests(const GammaVector& gv, const Integer& p) {
    if (p == 2) throw DomainError("p = 2 is unsupported");
    for (const auto& g : gv.g) {
        const Rational& q = g.rational();
        if (q != 0 && valuation(q, p) < 0) return {false};
    }
    return {true};
}

bool reductions_isomorphic(const GammaVector& g1, const GammaVector& g2, const Integer& p) {
    if (p == 2) throw DomainError("p = 2 is unsupported");
    if (!good_reduction_tests(g1, p).potentially_good || !good_reduction_tests(g2, p).potentially_good) return false;
    for (int i = 0; i < 10; ++i) {
        Rational d = g1.g[i].rational() - g2.g[i].rational();
        if (d != 0 && valuation(d, p) < 1) return false;
    }
    return true;
}

HyperellipticModel transform_model(const HyperellipticModel& m, const FieldElement& a, const FieldElement& b,
                                   const FieldElement& c_, const FieldElement& d) {
    const FieldPtr& F = m.field;
    Poly X(F, {b, a}), Z(F, {d, c_});
    Poly acc(F);
    for (int i = 0; i < 7; ++i) acc = acc + X.pow(6 - i) * Z.pow(i) * m.u[i];
    std::vector<FieldElement> lead_first;
    for (int i = 6; i >= 0; --i) lead_first.push_back(acc.coeff(i));
    return HyperellipticModel::from_leading_first(F, lead_first);
}

}  // namespace g2cm
