#include "test_support.hpp"

#include <random>

#include "g2cm/theta.hpp"

using namespace g2cm;

namespace {

std::string str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Im tau diagonal entries in [ylo, yhi], off-diagonal at most off times the smaller one
PeriodMatrix random_tau(std::mt19937_64& g, double ylo, double yhi, double off = 1.0 / 3, int digits = 30) {
    std::uniform_real_distribution<double> U(0, 1);
    double y11 = ylo + (yhi - ylo) * U(g), y22 = ylo + (yhi - ylo) * U(g);
    double y12 = (2 * U(g) - 1) * std::min(y11, y22) * off;
    return PeriodMatrix::parse({str(U(g) - 0.5), str(y11), str(U(g) - 0.5), str(y12), str(U(g) - 0.5), str(y22)},
                               digits);
}

double rel_err(const ComplexBall& a, const ComplexBall& b) {
    return (a - b).abs_upper().to_double() / b.abs_lower().to_double();
}

}  // namespace

TEST_CASE("characteristics") {
    CHECK(ThetaChar::even().size() == 10);
    CHECK(ThetaChar::odd().size() == 6);
    CHECK(ThetaChar::parse("1111").parity() == 0);
    CHECK(ThetaChar::parse("1010").parity() == 1);
    CHECK_THROWS_AS(ThetaChar::parse("102"), DomainError);
}

TEST_CASE("period matrix validation") {
    CHECK_THROWS_AS(PeriodMatrix::parse({"0", "1", "0", "2", "0", "1"}, 30), DomainError);
    CHECK_THROWS_AS(PeriodMatrix::parse({"0", "-1", "0", "0", "0", "1"}, 30), DomainError);
    auto thin = PeriodMatrix::parse({"0", "0.001", "0", "0", "0", "1"}, 30);
    CHECK_THROWS_WITH_AS(theta_constant(thin, ThetaChar::parse("0000")), doctest::Contains("precision infeasible"),
                         DomainError);
}

TEST_CASE("theta constants") {
    auto big = PeriodMatrix::parse({"0", "10", "0", "0", "0", "10"}, 30);
    auto t0 = theta_constant(big, ThetaChar::parse("0000"));
    CHECK((t0 - ComplexBall::from_int(1, big.prec())).abs_upper().to_double() < 1e-12);

    std::mt19937_64 g(11);
    std::uniform_int_distribution<int> shift(-2, 2);
    for (int k = 0; k < 20; ++k) {
        auto tau = random_tau(g, 0.8, 1.5);
        for (const auto& ch : ThetaChar::odd()) CHECK(theta_constant(tau, ch).abs_upper().to_double() < 1e-20);
        for (const auto& ch : ThetaChar::even()) {
            ThetaChar moved{ch.e1 + 2 * shift(g), ch.e2 + 2 * shift(g), ch.f1 + 2 * shift(g), ch.f2 + 2 * shift(g)};
            auto a = theta_constant(tau, ch), b = theta_constant(tau, moved);
            CHECK((a * a - b * b).abs_upper().to_double() < 1e-25);
        }
    }
}

TEST_CASE("big theta") {
    std::mt19937_64 g(12);
    std::uniform_real_distribution<double> U(0, 1);
    for (int k = 0; k < 10; ++k) {
        auto d = PeriodMatrix::parse({str(U(g) - 0.5), str(0.7 + U(g)), "0", "0", str(U(g) - 0.5), str(0.7 + U(g))}, 30);
        CHECK(big_theta(d).abs_upper().to_double() < 1e-10);
        CHECK_THROWS_AS(rosenhain(d), DomainError);
    }
    for (int k = 0; k < 10; ++k) {
        auto tau = random_tau(g, 0.8, 1.5);
        auto v = big_theta(tau);
        CHECK(v.abs_lower().to_double() > 1e6 * v.rad().to_double());
        CHECK(v.abs_lower().to_double() > 1e-12);
        CHECK(v.abs_upper().to_double() < 1e-3);
        CHECK(rel_err(big_theta(tau.translate(1, -1, 2)), v) < 1e-20);
    }
    auto fixed = PeriodMatrix::parse({"0", "1", "0.5", "-0.5", "0", "1"}, 30);
    auto v = big_theta(fixed);
    CHECK(v.re().to_double() == doctest::Approx(-9.1828123821112695e-05).epsilon(1e-12));
    CHECK(std::abs(v.im().to_double()) < 1e-25);
    ComplexBall det = fixed.t11 * fixed.t22 - fixed.t12 * fixed.t12;
    ComplexBall d2 = det * det, d4 = d2 * d2, d8 = d4 * d4;
    CHECK(rel_err(big_theta(fixed.invert()), d8 * d2 * v) < 1e-20);
}

TEST_CASE("rosenhain and invariants") {
    auto tau = PeriodMatrix::parse({"0", "1.1", "0.2", "0.1", "0", "1.3"}, 30);
    auto l = rosenhain(tau);
    auto one = ComplexBall::from_int(1, tau.prec());
    for (int i = 0; i < 3; ++i) {
        CHECK(!l[i].contains_zero());
        CHECK(!(l[i] - one).contains_zero());
        for (int j = i + 1; j < 3; ++j) CHECK(!(l[i] - l[j]).contains_zero());
    }
    auto inv = invariants_from_lambdas(l);
    auto swapped = invariants_from_lambdas({one - l[0], one - l[1], one - l[2]});
    auto recip = invariants_from_lambdas({l[0].inverse(), l[1].inverse(), l[2].inverse()});
    for (int k = 0; k < 3; ++k) {
        CHECK(rel_err(swapped[k], inv[k]) < 1e-20);
        CHECK(rel_err(recip[k], inv[k]) < 1e-20);
    }

    auto near = PeriodMatrix::parse({"0", "1.1", "0", "0.00001", "0", "1.3"}, 30);
    CHECK(invariants_from_tau(near)[0].abs_lower().to_double() > 1e6);
}

TEST_CASE("modular invariance of the invariants") {
    std::mt19937_64 g(13);
    for (int k = 0; k < 3; ++k) {
        auto tau = random_tau(g, 0.9, 1.3);
        auto base = invariants_from_tau(tau);
        for (const auto& moved : {tau.translate(1, 0, 0), tau.translate(0, 1, 0), tau.translate(0, 0, -1), tau.invert()}) {
            auto i = invariants_from_tau(moved);
            for (int j = 0; j < 3; ++j) CHECK(rel_err(i[j], base[j]) < 1e-8);
        }
    }
}

TEST_CASE("genus one theta product against the discriminant") {
    mpfr_prec_t prec = bits_for_digits(30);
    Real tol(1e-35, 64);
    const char* pts[5][2] = {{"0", "1"}, {"0.2", "1.1"}, {"-0.4", "0.9"}, {"0.5", "1.7"}, {"0.1", "0.8"}};
    auto first = jacobi_ratio(ComplexBall::from_strings(pts[0][0], pts[0][1], prec), tol);
    CHECK(first.re().to_double() == doctest::Approx(4.0 / 27).epsilon(1e-15));
    for (auto& p : pts) CHECK(rel_err(jacobi_ratio(ComplexBall::from_strings(p[0], p[1], prec), tol), first) < 1e-8);
}

TEST_CASE("class polynomial reconstruction") {
    mpfr_prec_t prec = bits_for_digits(40);
    auto c = [&](const Rational& re, const Rational& im) {
        return ComplexBall(Real(re, prec), Real(im, prec));
    };
    Real tol(1e-10, 64);
    DenominatorSpec one;
    one.fixed = Integer(1);

    auto single = class_polynomial_from_values({{c(5, 0), c(-3, 0), c(12, 0)}}, one, tol);
    CHECK(single.h[0].coeffs == std::vector<Rational>{1, -5});
    CHECK(single.h[1].coeffs == std::vector<Rational>{1, 3});

    auto pair = class_polynomial_from_values({{c(3, 2), c(1, 0), c(1, 0)}, {c(3, -2), c(2, 0), c(1, 0)}}, one, tol);
    CHECK(pair.h[0].coeffs == std::vector<Rational>{1, -6, 13});
    CHECK(pair.h[1].coeffs == std::vector<Rational>{1, -3, 2});
    CHECK(pair.h[2].coeffs == std::vector<Rational>{1, -2, 1});

    DenominatorSpec seven;
    seven.fixed = Integer(7);
    std::vector<std::array<ComplexBall, 3>> sevenths = {{c(Rational(2, 7), 0), c(Rational(1, 7), 0), c(1, 0)}};
    auto ok = class_polynomial_from_values(sevenths, seven, tol);
    CHECK(ok.h[0].coeffs == std::vector<Rational>{1, Rational(-2, 7)});
    CHECK_THROWS_WITH_AS(class_polynomial_from_values(sevenths, one, tol),
                         doctest::Contains("insufficient precision or wrong denominator bound"), DomainError);

    auto halved = class_polynomial_from_values(sevenths, seven, Real(5e-11, 64));
    CHECK(halved.h[0].coeffs == ok.h[0].coeffs);

    auto field = QuarticCMField::make(17, -119, 28);
    DenominatorSpec automatic;
    automatic.field = field;
    automatic.primes = {Integer(7)};
    CHECK(automatic.for_coefficient(1, 0) == 1);
    CHECK(automatic.for_coefficient(1, 1) > 1);
    automatic.primes.push_back(Integer(3));
    CHECK_THROWS_AS(automatic.for_coefficient(1, 1), DomainError);
}

TEST_CASE("class polynomial from period matrices") {
    auto tau = PeriodMatrix::parse({"0", "1.1", "0.2", "0.1", "0", "1.3"}, 30);
    DenominatorSpec one;
    one.fixed = Integer(1);
    CHECK_THROWS_WITH_AS(class_polynomial({tau}, one, Real(1e-10, 64)),
                         doctest::Contains("insufficient precision or wrong denominator bound"), DomainError);
}
