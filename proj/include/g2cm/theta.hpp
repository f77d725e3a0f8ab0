#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "g2cm/ball.hpp"
#include "g2cm/cmfield.hpp"

namespace g2cm {

// Symmetric 2x2 period matrix with positive definite imaginary part.
struct PeriodMatrix {
    ComplexBall t11, t12, t22;
    int digits = 30;

    static PeriodMatrix make(const ComplexBall& t11, const ComplexBall& t12, const ComplexBall& t22, int digits);
    static PeriodMatrix parse(const std::array<std::string, 6>& re_im, int digits);  // re11, im11, re12, im12, re22, im22
    mpfr_prec_t prec() const { return bits_for_digits(digits); }
    double min_eigenvalue_im() const;

    PeriodMatrix translate(long s11, long s12, long s22) const;  // tau + S
    PeriodMatrix invert() const;                                 // -tau^{-1}
};

struct ThetaChar {
    int e1 = 0, e2 = 0, f1 = 0, f2 = 0;  // epsilon = (e1, e2), epsilon' = (f1, f2)

    int parity() const { return ((e1 * f1 + e2 * f2) % 2 + 2) % 2; }
    std::string to_string() const;
    static ThetaChar parse(const std::string& bits);  // "1100"
    static std::vector<ThetaChar> even();
    static std::vector<ThetaChar> odd();
};

struct ThetaOptions {
    std::optional<Real> tol;  // defaults to 2^-prec
    int max_radius = 60;
};

ComplexBall theta_constant(const PeriodMatrix& tau, const ThetaChar& ch, const ThetaOptions& opt = {});
ComplexBall big_theta(const PeriodMatrix& tau, const ThetaOptions& opt = {});
std::array<ComplexBall, 3> rosenhain(const PeriodMatrix& tau, const ThetaOptions& opt = {});
std::array<ComplexBall, 3> invariants_from_lambdas(const std::array<ComplexBall, 3>& lambda);
std::array<ComplexBall, 3> invariants_from_tau(const PeriodMatrix& tau, const ThetaOptions& opt = {});

// genus one, tau in the upper half plane
ComplexBall theta_genus1(const ComplexBall& tau, int a, int b, const Real& tol, int max_radius = 60);
ComplexBall delta_genus1(const ComplexBall& tau, const Real& tol);  // E4^3 - E6^2
ComplexBall jacobi_ratio(const ComplexBall& tau, const Real& tol);  // (theta00 theta01 theta10)^8 / Delta

struct DenominatorSpec {
    std::optional<Integer> fixed;
    // auto mode: product over the given primes of p^floor(-bound) for each coefficient, times extra
    std::optional<QuarticCMField> field;
    std::vector<Integer> primes;
    Integer extra = 1;

    Integer for_coefficient(int i, long a) const;
};

struct ReconstructedPolynomial {
    std::vector<Rational> coeffs;   // leading first
    std::vector<Integer> denominators;
    Real max_residual;
};

struct ClassPolynomialResult {
    std::array<ReconstructedPolynomial, 3> h;
};

ClassPolynomialResult class_polynomial_from_values(const std::vector<std::array<ComplexBall, 3>>& values,
                                                   const DenominatorSpec& denom, const Real& tol);
ClassPolynomialResult class_polynomial(const std::vector<PeriodMatrix>& taus, const DenominatorSpec& denom,
                                       const Real& tol);

}  // namespace g2cm
