#include "test_support.hpp"

#include <random>

#include "g2cm/invariants.hpp"

using namespace g2cm;

namespace {

HyperellipticModel model(const FieldPtr& F, std::vector<long> lf) {
    std::vector<FieldElement> c;
    for (long v : lf) c.push_back(FieldElement::from_int(F, v));
    return HyperellipticModel::from_leading_first(F, c);
}

IgusaClebsch ic_of(const FieldPtr& F, long a, long b, long c, long d) {
    return {FieldElement::from_int(F, a), FieldElement::from_int(F, b), FieldElement::from_int(F, c),
            FieldElement::from_int(F, d)};
}

// A from the classical coefficient formula
FieldElement coefficient_A(const HyperellipticModel& m) {
    const auto& u = m.u;
    auto k = [&](long v) { return FieldElement::from_int(m.field, v); };
    return k(6) * u[3] * u[3] - k(16) * u[2] * u[4] + k(40) * u[1] * u[5] - k(240) * u[0] * u[6];
}

// discriminant u0^10 prod (xi-xj)^2 = (-1)^(n(n-1)/2) Res(f, f') / u0 via Sylvester determinant over QQ
Rational discriminant_oracle(const std::vector<long>& lf) {
    int n = 6;
    std::vector<Rational> f(lf.begin(), lf.end()), df;
    for (int i = 0; i < n; ++i) df.push_back(Rational(f[i] * (n - i)));
    int N = 2 * n - 1;
    std::vector<std::vector<Rational>> S(N, std::vector<Rational>(N, 0));
    for (int r = 0; r < n - 1; ++r)
        for (int j = 0; j <= n; ++j) S[r][r + j] = f[j];
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j) S[n - 1 + r][r + j] = df[j];
    Rational det = 1;
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int r = c; r < N; ++r)
            if (S[r][c] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) { std::swap(S[piv], S[c]); det = -det; }
        det *= S[c][c];
        for (int r = c + 1; r < N; ++r) {
            Rational t = S[r][c] / S[c][c];
            for (int j = c; j < N; ++j) S[r][j] -= t * S[c][j];
        }
    }
    return det / f[0] * ((n * (n - 1) / 2) % 2 ? -1 : 1);
}

}  // namespace

TEST_CASE("igusa_clebsch examples") {
    auto F17 = FieldDescriptor::prime(17);
    auto ic = igusa_clebsch(model(F17, {1, 0, 0, 0, 0, 0, 16}));
    CHECK(is_isomorphic(ic, ic_of(F17, 1, 14, 8, 13)));
    auto Q = FieldDescriptor::rationals();
    InvariantOptions relaxed;
    relaxed.allow_singular = true;
    auto sing = igusa_clebsch(model(Q, {1, -1, 0, 0, 0, 0, 0}), relaxed);
    CHECK(sing.D.is_zero());
    CHECK_THROWS_AS(igusa_clebsch(model(Q, {1, -1, 0, 0, 0, 0, 0})), DomainError);
    // x(x-1)...(x-5)
    auto v = igusa_clebsch(model(Q, {1, -15, 85, -225, 274, -120, 0}));
    CHECK(v.D.rational() == Rational(1194393600));
    long vandermonde = 1;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) vandermonde *= (j - i);
    CHECK(v.D.rational() == Rational(vandermonde) * vandermonde);
    CHECK_THROWS_AS(igusa_clebsch(model(FieldDescriptor::prime(2), {1, 0, 0, 0, 0, 1, 1})), DomainError);
    CHECK_THROWS_AS(igusa_clebsch(model(Q, {0, 0, 1, 0, 0, 0, 1})), DomainError);
}

TEST_CASE("rational invariants agree with oracles and with reduction mod p") {
    std::mt19937_64 gen(3);
    auto Q = FieldDescriptor::rationals();
    auto F101 = FieldDescriptor::prime(101);
    int tested = 0;
    while (tested < 12) {
        std::vector<long> lf(7);
        for (auto& c : lf) c = static_cast<long>(gen() % 41) - 20;
        if (tested % 3 == 2) lf[0] = 0;  // quintic
        auto m = model(Q, lf);
        if (m.degree() < 5 || !is_squarefree(m.poly())) continue;
        auto mp = model(F101, lf);
        if (mp.degree() != m.degree() || !is_squarefree(mp.poly())) continue;
        auto ic = igusa_clebsch(m);
        auto icp = igusa_clebsch(mp);
        CHECK(ic.A.rational() == coefficient_A(m).rational());
        if (lf[0] != 0) CHECK(ic.D.rational() == discriminant_oracle(lf));
        CHECK(FieldElement::from_rational(F101, ic.A.rational()) == icp.A);
        CHECK(FieldElement::from_rational(F101, ic.B.rational()) == icp.B);
        CHECK(FieldElement::from_rational(F101, ic.C.rational()) == icp.C);
        CHECK(FieldElement::from_rational(F101, ic.D.rational()) == icp.D);
        ++tested;
    }
}

TEST_CASE("quintic matches a Moebius image with all roots finite") {
    auto Q = FieldDescriptor::rationals();
    auto m = model(Q, {0, 1, 0, 0, 0, 0, 1});  // x^5 + 1
    auto k = [&](long v) { return FieldElement::from_int(Q, v); };
    // x -> (x + 0)/(x + 1) moves infinity to 1; det = 1
    auto moved = transform_model(m, k(1), k(0), k(1), k(1));
    CHECK(moved.degree() == 6);
    auto a = igusa_clebsch(m), b = igusa_clebsch(moved);
    CHECK(a.A == b.A);
    CHECK(a.B == b.B);
    CHECK(a.C == b.C);
    CHECK(a.D == b.D);
}

TEST_CASE("rational scaling by denominators") {
    auto Q = FieldDescriptor::rationals();
    std::vector<FieldElement> c;
    for (auto s : {"1/2", "0", "3/4", "-1", "0", "2/3", "5"}) c.push_back(FieldElement::parse(Q, s));
    auto m = HyperellipticModel::from_leading_first(Q, c);
    CHECK(igusa_clebsch(m).A == coefficient_A(m));
}

TEST_CASE("J, gamma and absolute conversions") {
    auto Q = FieldDescriptor::rationals();
    auto q = [&](long a, long b = 1) { return FieldElement::from_rational(Q, Rational(a, b)); };
    auto j0 = j_from_igusa_clebsch(ic_of(Q, 0, 0, 0, 4096));
    for (int i = 0; i < 4; ++i) CHECK(j0.J[i].is_zero());
    CHECK(j0.J[4].is_one());
    auto j1 = j_from_igusa_clebsch(ic_of(Q, 8, 0, 0, 4096));
    CHECK(j1.J[0] == q(1));
    CHECK(j1.J[1] == q(1, 24));
    CHECK(j1.J[2] == q(1, 432));
    CHECK(j1.J[3] == q(1, 6912));
    CHECK(j1.J[4] == q(1));
    for (const auto& g : gamma_from_j(j0).g) CHECK(g.is_zero());
    auto g = gamma_from_j(JVector{{q(1), q(1), q(1), q(0), q(1)}});
    for (int i : {0, 1, 2, 4, 7}) CHECK(g.g[i].is_one());
    for (int i : {3, 5, 6, 8, 9}) CHECK(g.g[i].is_zero());
    CHECK_THROWS_AS(gamma_from_j(JVector{{q(1), q(1), q(1), q(0), q(0)}}), DomainError);

    auto F17 = FieldDescriptor::prime(17);
    auto a = absolute_from_igusa_clebsch(ic_of(F17, 1, 14, 8, 13));
    CHECK(a.i1 == FieldElement::from_int(F17, -13));
    CHECK(a.i2 == FieldElement::from_int(F17, -12));
    CHECK(a.i3 == FieldElement::from_int(F17, -2));
    auto z = absolute_from_igusa_clebsch(ic_of(Q, 0, 3, 5, 7));
    CHECK((z.i1.is_zero() && z.i2.is_zero() && z.i3.is_zero()));
    auto b = absolute_from_igusa_clebsch(ic_of(Q, 2, 1, 1, 1));
    CHECK(b.i1 == q(32));
    CHECK(b.i2 == q(8));
    CHECK(b.i3 == q(4));
    CHECK_THROWS_AS(absolute_from_igusa_clebsch(ic_of(Q, 2, 1, 1, 0)), DomainError);

    GammaVector e1;
    for (auto& x : e1.g) x = q(0);
    auto t0 = absolute_from_gamma(e1);
    CHECK((t0.i1.is_zero() && t0.i2.is_zero() && t0.i3.is_zero()));
    e1.g[0] = q(1);
    auto t1 = absolute_from_gamma(e1);
    CHECK(t1.i1 == q(8));
    CHECK(t1.i2 == q(1, 2));
    CHECK(t1.i3 == q(1, 8));
    auto back = gamma_from_absolute(t1);
    CHECK(back.g[0].is_one());
    CHECK(back.g[1].is_zero());
    CHECK(back.g[2].is_zero());
    CHECK_THROWS_AS(gamma_from_absolute(AbsoluteInvariants{q(0), q(1), q(1)}), DomainError);
    CHECK_THROWS_AS(j_from_igusa_clebsch(ic_of(FieldDescriptor::prime(3), 1, 1, 1, 1)), DomainError);
}

TEST_CASE("J8 identity, gamma relations and two-path consistency") {
    std::mt19937_64 gen(17);
    auto F = FieldDescriptor::prime(101);
    auto Q = FieldDescriptor::rationals();
    int n = 0;
    while (n < 50) {
        std::vector<long> lf(7);
        for (auto& c : lf) c = static_cast<long>(gen() % 101);
        auto m = model(F, lf);
        if (m.degree() != 6 || !is_squarefree(m.poly())) continue;
        auto ic = igusa_clebsch(m);
        auto j = j_from_igusa_clebsch(ic);
        CHECK(j.J[3] == (j.J[0] * j.J[2] - j.J[1] * j.J[1]) * FieldElement::from_rational(F, Rational(1, 4)));
        auto g = gamma_from_j(j);
        // both sides equal J2^5 J4^2 J6^2 / J10^3
        CHECK(g.g[0] * g.g[4] * g.g[4] == g.g[1] * g.g[2] * g.g[4]);
        CHECK(g.g[3].pow(5) == g.g[0] * g.g[9]);
        ++n;
    }
    n = 0;
    while (n < 50) {
        std::vector<long> lf(7);
        for (auto& c : lf) c = static_cast<long>(gen() % 21) - 10;
        auto m = model(Q, lf);
        if (m.degree() != 6 || !is_squarefree(m.poly())) continue;
        auto ic = igusa_clebsch(m);
        if (ic.A.is_zero()) continue;
        auto g1 = gamma_from_absolute(absolute_from_igusa_clebsch(ic));
        auto g2 = gamma_from_j(j_from_igusa_clebsch(ic));
        for (int i = 0; i < 10; ++i) CHECK(g1.g[i] == g2.g[i]);
        ++n;
    }
}

TEST_CASE("round trip absolute -> gamma -> absolute") {
    std::mt19937_64 gen(23);
    auto Q = FieldDescriptor::rationals();
    for (int t = 0; t < 50; ++t) {
        auto r = [&] {
            long num = static_cast<long>(gen() % 2001) - 1000;
            long den = 1 + static_cast<long>(gen() % 50);
            return FieldElement::from_rational(Q, Rational(num, den));
        };
        AbsoluteInvariants a{r(), r(), r()};
        if (a.i1.is_zero()) continue;
        auto b = absolute_from_gamma(gamma_from_absolute(a));
        CHECK(a.i1 == b.i1);
        CHECK(a.i2 == b.i2);
        CHECK(a.i3 == b.i3);
    }
}

TEST_CASE("is_isomorphic") {
    auto Q = FieldDescriptor::rationals();
    auto ic = ic_of(Q, 2, 5, -7, 11);
    auto scaled = ic_of(Q, 2 * 9, 5 * 81, -7 * 729, 11 * 59049);
    CHECK(is_isomorphic(ic, scaled));
    CHECK_FALSE(is_isomorphic(ic, ic_of(Q, 2, 5, -7, 12)));
    auto five = igusa_clebsch(model(Q, {0, 1, 0, 0, 0, 0, 1}));
    auto six = igusa_clebsch(model(Q, {1, -15, 85, -225, 274, -120, 0}));
    CHECK_FALSE(is_isomorphic(five, six));
    // r^2 = -1 over QQ is fine in the closure
    CHECK(is_isomorphic(ic_of(Q, 1, 1, 1, 1), ic_of(Q, -1, 1, -1, -1)));
    CHECK_THROWS_AS(is_isomorphic(ic, ic_of(FieldDescriptor::prime(7), 1, 1, 1, 1)), DomainError);
}

TEST_CASE("homogeneity and isomorphism invariance under GL2") {
    std::mt19937_64 gen(29);
    auto F = FieldDescriptor::parse("GF(13^2; 2,12,1)");
    auto rnd = [&] { return FieldElement::from_coeffs(F, {gen() % 13, gen() % 13}); };
    int n = 0;
    while (n < 30) {
        std::vector<FieldElement> c;
        for (int i = 0; i < 7; ++i) c.push_back(rnd());
        auto m = HyperellipticModel::from_leading_first(F, c);
        if (m.degree() < 5 || !is_squarefree(m.poly())) continue;
        auto a = rnd(), b = rnd(), cc = rnd(), d = rnd();
        auto det = a * d - b * cc;
        if (det.is_zero()) continue;
        auto mt = transform_model(m, a, b, cc, d);
        if (mt.degree() < 5) continue;
        auto x = igusa_clebsch(m), y = igusa_clebsch(mt);
        CHECK(y.A == det.pow(6) * x.A);
        CHECK(y.B == det.pow(12) * x.B);
        CHECK(y.C == det.pow(18) * x.C);
        CHECK(y.D == det.pow(30) * x.D);
        CHECK(is_isomorphic(x, y));
        ++n;
    }
}

TEST_CASE("good reduction tests") {
    auto Q = FieldDescriptor::rationals();
    GammaVector g;
    for (auto& x : g.g) x = FieldElement::from_int(Q, 3);
    CHECK(good_reduction_tests(g, 7).potentially_good);
    g.g[0] = FieldElement::from_rational(Q, Rational(1, 7));
    CHECK_FALSE(good_reduction_tests(g, 7).potentially_good);
    CHECK_THROWS_AS(good_reduction_tests(g, 2), DomainError);
    auto m = model(Q, {0, 1, 0, 0, 0, 0, 1});
    auto k = [&](long v) { return FieldElement::from_int(Q, v); };
    auto scaled = transform_model(m, k(2), k(0), k(0), k(1));
    auto g1 = gamma_from_j(j_from_igusa_clebsch(igusa_clebsch(m)));
    auto g2 = gamma_from_j(j_from_igusa_clebsch(igusa_clebsch(scaled)));
    CHECK(reductions_isomorphic(g1, g2, 11));
}
