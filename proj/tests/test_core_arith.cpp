#include "test_support.hpp"

#include <random>

#include "g2cm/poly.hpp"

using namespace g2cm;

namespace {

Poly mk(const FieldPtr& F, std::vector<long> low_first) {
    std::vector<FieldElement> c;
    for (long v : low_first) c.push_back(FieldElement::from_int(F, v));
    return Poly(F, c);
}

// roots found by trying every element of a prime field
std::vector<std::uint64_t> brute_roots(const Poly& f) {
    std::vector<std::uint64_t> r;
    for (std::uint64_t a = 0; a < f.field()->characteristic(); ++a)
        if (f.eval(FieldElement::from_int(f.field(), static_cast<long>(a))).is_zero()) r.push_back(a);
    return r;
}

}  // namespace

TEST_CASE("field parsing and printing") {
    auto F = FieldDescriptor::parse("GF(89^2; 3,82,1)");
    CHECK(F->characteristic() == 89);
    CHECK(F->degree() == 2);
    CHECK(F->to_string() == "GF(89^2; 3,82,1)");
    CHECK_THROWS_AS(FieldDescriptor::parse("GF(9)"), DomainError);
    CHECK_THROWS_AS(FieldDescriptor::parse("GF(3^2; 1,0,2)"), DomainError);  // x^2+... not monic mod 3
    CHECK_THROWS_AS(FieldDescriptor::parse("GF(5^2; 1,0,1)"), DomainError);  // x^2+1 splits mod 5
    auto a = FieldElement::parse(F, "a^1");
    auto alpha = FieldElement::generator(F);
    CHECK(a == alpha);
    // alpha^2 + 82 alpha + 3 = 0
    CHECK((alpha * alpha + FieldElement::from_int(F, 82) * alpha + FieldElement::from_int(F, 3)).is_zero());
    CHECK(FieldElement::parse(F, "[5,7]") == FieldElement::from_coeffs(F, {5, 7}));
    auto Q = FieldDescriptor::rationals();
    CHECK(FieldElement::parse(Q, "-6/4").rational() == Rational(-3, 2));
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 gen(7);
    for (auto spec : {"GF(13)", "GF(89^2; 3,82,1)", "GF(3^3; 1,2,0,1)"}) {
        auto F = FieldDescriptor::parse(spec);
        auto rnd = [&] {
            std::vector<std::uint64_t> c(F->degree());
            for (auto& v : c) v = gen() % F->characteristic();
            return FieldElement::from_coeffs(F, c);
        };
        for (int i = 0; i < 100; ++i) {
            auto a = rnd(), b = rnd(), c = rnd();
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
            CHECK(a.pow(F->order()) == a);
        }
    }
}

TEST_CASE("factor_poly examples") {
    auto F5 = FieldDescriptor::prime(5);
    auto f = factor_poly(mk(F5, {1, 0, 1}));
    REQUIRE(f.size() == 2);
    CHECK(f[0].poly == mk(F5, {2, 1}));
    CHECK(f[1].poly == mk(F5, {3, 1}));
    auto F3 = FieldDescriptor::prime(3);
    auto g = factor_poly(mk(F3, {1, 0, 1}));
    REQUIRE(g.size() == 1);
    CHECK(g[0].poly == mk(F3, {1, 0, 1}));
    CHECK(brute_roots(mk(F3, {1, 0, 1})).empty());
    auto F7 = FieldDescriptor::prime(7);
    auto h = factor_poly(mk(F7, {0, 0, 1}));
    REQUIRE(h.size() == 1);
    CHECK(h[0].poly == mk(F7, {0, 1}));
    CHECK(h[0].multiplicity == 2);
    CHECK_THROWS_AS(factor_poly(Poly(F7)), DomainError);
}

TEST_CASE("factor_poly re-multiplies on random inputs") {
    std::mt19937_64 gen(11);
    for (std::uint64_t p : {3, 5, 7, 13}) {
        auto F = FieldDescriptor::prime(p);
        for (int t = 0; t < 50; ++t) {
            int deg = 1 + static_cast<int>(gen() % 8);
            std::vector<long> c(deg + 1);
            for (auto& v : c) v = static_cast<long>(gen() % p);
            c[deg] = 1 + static_cast<long>(gen() % (p - 1));
            Poly f = mk(F, c);
            auto fac = factor_poly(f);
            Poly prod = Poly::constant(f.leading());
            for (const auto& x : fac) {
                CHECK(is_irreducible(x.poly));
                CHECK(x.poly.leading().is_one());
                prod = prod * x.poly.pow(x.multiplicity);
            }
            CHECK(prod == f);
            // linear factors agree with exhaustive root search
            std::vector<std::uint64_t> lin;
            for (const auto& x : fac)
                if (x.poly.degree() == 1) lin.push_back((-x.poly.coeff(0)).coeffs()[0]);
            std::sort(lin.begin(), lin.end());
            CHECK(lin == brute_roots(f));
        }
    }
}

TEST_CASE("splitting_roots examples") {
    auto F3 = FieldDescriptor::prime(3);
    auto s = splitting_roots(mk(F3, {1, 0, 1}));
    CHECK(s.m == 2);
    CHECK(s.embedding.target->to_string() == "GF(3^2; 1,0,1)");
    REQUIRE(s.roots.size() == 2);
    auto i = FieldElement::generator(s.embedding.target);
    CHECK(((s.roots[0] == i && s.roots[1] == -i) || (s.roots[0] == -i && s.roots[1] == i)));
    auto F5 = FieldDescriptor::prime(5);
    auto t = splitting_roots(mk(F5, {0, 4, 0, 0, 0, 1}));
    CHECK(t.m == 1);
    REQUIRE(t.roots.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(t.roots[k] == FieldElement::from_int(F5, k));
    auto F7 = FieldDescriptor::prime(7);
    auto u = splitting_roots(mk(F7, {1, -2, 1}));
    CHECK(u.m == 1);
    REQUIRE(u.roots.size() == 2);
    CHECK(u.roots[0].is_one());
    CHECK(u.roots[1].is_one());
}

TEST_CASE("splitting_roots evaluate to zero") {
    std::mt19937_64 gen(5);
    auto F = FieldDescriptor::parse("GF(13^2; 2,12,1)");
    for (int t = 0; t < 10; ++t) {
        std::vector<FieldElement> c;
        for (int i = 0; i < 7; ++i) c.push_back(FieldElement::from_coeffs(F, {gen() % 13, gen() % 13}));
        c.back() = FieldElement::one(F);
        Poly f(F, c);
        auto s = splitting_roots(f);
        CHECK(static_cast<int>(s.roots.size()) == f.degree());
        std::vector<FieldElement> ce;
        for (const auto& a : f.coeffs()) ce.push_back(s.embedding.map(a));
        Poly fe(s.embedding.target, ce);
        for (const auto& r : s.roots) CHECK(fe.eval(r).is_zero());
        // embedding is a ring map that restricts back
        auto x = c[0], y = c[1];
        CHECK(s.embedding.map(x * y) == s.embedding.map(x) * s.embedding.map(y));
        CHECK(s.embedding.restrict(s.embedding.map(x)) == x);
    }
}

TEST_CASE("frobenius_twist") {
    auto F7 = FieldDescriptor::prime(7);
    FieldMatrix m(F7, 2, 2);
    m.at(0, 1) = FieldElement::from_int(F7, 3);
    CHECK(frobenius_twist(m) == m);
    FieldMatrix id(F7, 2, 2);
    id.at(0, 0) = id.at(1, 1) = FieldElement::one(F7);
    CHECK(frobenius_twist(id) == id);
    auto F9 = FieldDescriptor::parse("GF(3^2; 1,0,1)");
    FieldMatrix n(F9, 2, 2);
    auto alpha = FieldElement::generator(F9);
    n.at(0, 0) = alpha;
    n.at(1, 1) = FieldElement::one(F9);
    auto tw = frobenius_twist(n);
    CHECK(tw.at(0, 0) == -alpha);
    CHECK(tw.at(1, 1).is_one());
    FieldMatrix q(FieldDescriptor::rationals(), 1, 1);
    CHECK_THROWS_AS(frobenius_twist(q), DomainError);
    // homomorphism on products
    FieldMatrix a(F9, 2, 2), b(F9, 2, 2);
    a.at(0, 0) = alpha; a.at(0, 1) = FieldElement::one(F9); a.at(1, 1) = alpha * alpha + alpha;
    b.at(0, 0) = FieldElement::from_int(F9, 2); b.at(1, 0) = alpha; b.at(1, 1) = alpha + FieldElement::one(F9);
    CHECK(frobenius_twist(a * b) == frobenius_twist(a) * frobenius_twist(b));
}

TEST_CASE("field spec with a polynomial modulus") {
    auto F = FieldDescriptor::parse("GF(313^2; alpha^2+310alpha+10=0)");
    auto G = FieldDescriptor::parse("GF(313^2; 10,310,1)");
    CHECK(F->to_string() == G->to_string());
    auto H = FieldDescriptor::parse("GF(89^2; a^2 - 7*a + 3)");
    CHECK(H->to_string() == FieldDescriptor::parse("GF(89^2; 3,82,1)")->to_string());
    CHECK_THROWS_AS(FieldDescriptor::parse("GF(13^2; a^2+q)"), DomainError);
    CHECK_THROWS_AS(FieldDescriptor::parse("GF(13^2; a^2+12a+2=1)"), DomainError);
}
