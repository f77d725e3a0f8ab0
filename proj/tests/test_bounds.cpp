#include "test_support.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "g2cm/bounds.hpp"
#include "g2cm/poly.hpp"

using namespace g2cm;

namespace {

double val(const RationalBound& b) { return b.value.to_double(); }

Poly reduce(const FixturePolynomial& h, std::uint64_t p) {
    auto F = FieldDescriptor::prime(p);
    std::vector<FieldElement> c;
    for (auto it = h.coeffs.rbegin(); it != h.coeffs.rend(); ++it) c.push_back(FieldElement::from_rational(F, *it));
    return Poly(F, c);
}

Poly from_low(std::uint64_t p, std::vector<long> c) {
    auto F = FieldDescriptor::prime(p);
    std::vector<FieldElement> e;
    for (long v : c) e.push_back(FieldElement::from_int(F, v));
    return Poly(F, e);
}

}  // namespace

TEST_CASE("theta quotient valuation bound") {
    BoundParams bp{1, 2, 7, 17, -238};
    auto b = theta_valuation_bound(bp);
    CHECK(val(b) == doctest::Approx(-4 * 2 * (std::log(481474.0) / std::log(7.0) + 1)).epsilon(1e-12));
    CHECK(val(b) == doctest::Approx(-61.79).epsilon(1e-3));
    CHECK(b.regime == BoundCase::SmallRamification);

    auto exact = theta_valuation_bound({1, 1, 1009, 2018, 1});
    CHECK(exact.value.to_string(30) == Real(-8.0, 64).to_string(30));

    auto k2 = theta_valuation_bound({2, 2, 7, 17, -238});
    CHECK(val(k2) == doctest::Approx(2 * val(b)).epsilon(1e-12));

    auto high = theta_valuation_bound({1, 7, 7, 17, -238});
    CHECK(high.regime == BoundCase::HighRamification);
    CHECK(val(high) < val(theta_valuation_bound({1, 6, 7, 17, -238})));
    CHECK_THROWS_AS(theta_valuation_bound({1, 1, 7, 1, 1}), DomainError);
}

TEST_CASE("class polynomial and class invariant bounds") {
    auto c = class_poly_coeff_bound(1, 2, 7, 17, -238, 2);
    CHECK(val(c) == doctest::Approx(-48 * (std::log(481474.0) / std::log(7.0) + 1)).epsilon(1e-12));
    CHECK(val(c) == doctest::Approx(-370.8).epsilon(1e-3));
    CHECK(val(class_poly_coeff_bound(1, 0, 7, 17, -238, 2)) == 0);
    CHECK(val(class_poly_coeff_bound(2, 3, 11, 17, -238, 1)) == val(class_poly_coeff_bound(3, 3, 11, 17, -238, 1)));

    CHECK(val(class_invariant_bound(1, 1009, 2018, 1)) == 16);
    CHECK(val(class_invariant_bound(2, 1009, 2018, 1)) == 32);
    CHECK(val(class_invariant_bound(2, 7, 17, -238)) == doctest::Approx(123.6).epsilon(1e-3));
    CHECK_FALSE(class_invariant_bound(2, 7, 17, -238).rounded_down);
}

TEST_CASE("outward rounding never strengthens") {
    for (long p : {5L, 7L, 11L, 13L, 101L}) {
        Real L = log_p_upper(p, 17, -238);
        Real lo(256);
        Rational X(17 * 238 * 238, 2);
        Real x(X, 256), pp(Integer(p), 256);
        mpfr_log(lo.get(), x.get(), MPFR_RNDD);
        Real lp(256);
        mpfr_log(lp.get(), pp.get(), MPFR_RNDU);
        Real lower(256);
        mpfr_div(lower.get(), lo.get(), lp.get(), MPFR_RNDD);
        CHECK(L >= lower);
    }
}

TEST_CASE("deformation index bounds") {
    auto a = deformation_index_bounds(3, 1, 2);
    CHECK(a.lower_exponent == 2);
    CHECK(a.upper_exponent == 3);
    auto b = deformation_index_bounds(3, 1, 1);
    CHECK(b.lower_exponent == 0);
    CHECK(b.upper_exponent == 0);
    auto c = deformation_index_bounds(5, 7, 14);
    CHECK(c.regime == BoundCase::HighRamification);
    CHECK(c.lower_exponent == 0);
    CHECK(c.upper_exponent == 39);
    CHECK(deformation_index_bounds(5, 7, 15).lower_exponent == Rational(1, 4));
    CHECK(basic_estimate_exponent(4, 1, 9, 5) == 6);
}

TEST_CASE("monotonicity on a grid") {
    for (long p : {3L, 5L, 7L, 11L})
        for (long e = 1; e <= 5; ++e)
            for (long n = 1; n <= 5; ++n) {
                auto b = deformation_index_bounds(p, e, n);
                CHECK(b.lower_exponent <= b.upper_exponent);
                CHECK(deformation_index_bounds(p, e, n + 1).lower_exponent >= b.lower_exponent);
                CHECK(deformation_index_bounds(p, e + 1, n).lower_exponent <= b.lower_exponent);
            }
    for (long k = 1; k <= 4; ++k)
        for (long e = 1; e <= 10; ++e) {
            auto b = theta_valuation_bound({k, e, 7, 17, -238});
            CHECK(theta_valuation_bound({k + 1, e, 7, 17, -238}).value <= b.value);
            CHECK(theta_valuation_bound({k, e + 1, 7, 17, -238}).value <= b.value);
        }
}

TEST_CASE("factored rationals") {
    CHECK(parse_factored_rational("1") == 1);
    CHECK(parse_factored_rational("-2^3*3/5^2") == Rational(-24, 25));
    CHECK(parse_factored_rational("12/8") == Rational(3, 2));
    CHECK_THROWS_AS(parse_factored_rational("2^*3"), DomainError);
    CHECK_THROWS_AS(parse_factored_rational("x/2"), DomainError);
}

TEST_CASE("fixtures load and match the printed reductions") {
    auto cyc = load_fixture("cyclic17");
    REQUIRE(cyc.polys.size() == 3);
    CHECK(cyc.denominator_primes == std::vector<Integer>{2, 7, 43, 179});
    CHECK(valuation(cyc.polys[0].coeffs[2], Integer(7)) == -12);
    // h1, h2, h3 mod 17 are (x+13)^2, (x+12)^2, (x+2)^2
    long roots[] = {13, 12, 2};
    for (int i = 0; i < 3; ++i) CHECK(reduce(cyc.polys[i], 17) == from_low(17, {roots[i] * roots[i], 2 * roots[i], 1}));

    auto dih = load_fixture("dihedral11");
    REQUIRE(dih.polys.size() == 3);
    for (const auto& h : dih.polys) CHECK(h.coeffs.size() == 9);
    auto q = [](std::uint64_t p, long b, long c) { return from_low(p, {c, b, 1}); };
    auto sq = [](const Poly& a) { return a * a; };
    CHECK(reduce(dih.polys[0], 89) == sq(q(89, 17, 9) * q(89, 18, 25)));
    CHECK(reduce(dih.polys[1], 89) == sq(q(89, 37, 67) * q(89, 69, 57)));
    CHECK(reduce(dih.polys[2], 89) == sq(q(89, 83, 83) * q(89, 85, 45)));
    CHECK(reduce(dih.polys[0], 313) == q(313, 25, 273) * q(313, 137, 39) * q(313, 200, 108) * q(313, 312, 249));
    CHECK(reduce(dih.polys[1], 313) == q(313, 20, 121) * q(313, 90, 119) * q(313, 138, 297) * q(313, 173, 78));
    CHECK(reduce(dih.polys[2], 313) == q(313, 105, 276) * q(313, 133, 230) * q(313, 232, 183) * q(313, 289, 91));
    auto l = [](std::uint64_t p, long c) { return from_low(p, {c, 1}); };
    CHECK(reduce(dih.polys[0], 47) == sq(l(47, 18)) * q(47, 22, 12) * q(47, 33, 19) * q(47, 37, 6));
    CHECK(reduce(dih.polys[1], 47) == sq(l(47, 23)) * q(47, 10, 46) * q(47, 6, 17) * q(47, 9, 39));
    CHECK(reduce(dih.polys[2], 47) == sq(l(47, 2)) * q(47, 42, 26) * q(47, 1, 19) * q(47, 27, 7));
    CHECK(reduce(dih.polys[0], 13) == q(13, 2, 9) * q(13, 6, 1) * from_low(13, {12, 0, 10, 8, 1}));
    CHECK(reduce(dih.polys[1], 13) == q(13, 5, 1) * q(13, 8, 1) * from_low(13, {8, 7, 6, 7, 1}));
    CHECK(reduce(dih.polys[2], 13) == q(13, 0, 2) * q(13, 0, 11) * from_low(13, {5, 0, 4, 6, 1}));

    CHECK_THROWS_AS(load_fixture("nonexistent"), DomainError);
}

TEST_CASE("verify_fixture") {
    auto cyc = load_fixture("cyclic17");
    auto r7 = verify_fixture(cyc, 7);
    CHECK(r7.pass);
    CHECK(r7.in_denominator);
    CHECK(r7.superspecial_predicted);
    for (long p : {43L, 179L}) {
        auto r = verify_fixture(cyc, p);
        CHECK(r.in_denominator);
        CHECK(r.superspecial_predicted);
        CHECK(r.pass);
    }
    auto r11 = verify_fixture(cyc, 11);
    CHECK_FALSE(r11.in_denominator);
    for (const auto& c : r11.checks)
        if (c.valuation) CHECK(*c.valuation >= 0);
    CHECK_THROWS_AS(verify_fixture(cyc, 3), DomainError);

    auto dih = load_fixture("dihedral11");
    Integer p = 4;
    while (p < 200) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p > 200) break;
        CHECK(verify_fixture(cyc, p).pass);
        CHECK(verify_fixture(dih, p).pass);
    }
}

TEST_CASE("corrupted fixture is rejected") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "g2cm_corrupt_fixture";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (const char* f : {"MANIFEST.json", "cyclic17.json", "dihedral11.json"})
        fs::copy_file(fs::path(default_fixture_dir()) / f, dir / f);
    {
        std::fstream io(dir / "cyclic17.json", std::ios::in | std::ios::out);
        io.seekp(40);
        io.put('9');
    }
    CHECK_THROWS_WITH_AS(load_fixture("cyclic17", dir.string()), doctest::Contains("checksum mismatch"), DomainError);
    CHECK(load_fixture("dihedral11", dir.string()).polys.size() == 3);
    fs::remove_all(dir);
}
