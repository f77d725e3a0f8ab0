#include "g2cm/theta.hpp"

#include <cmath>
#include <sstream>

#include "g2cm/bounds.hpp"
#include "g2cm/galois_tables.hpp"
#include "g2cm/invariants.hpp"

namespace g2cm {

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexBall scale(const ComplexBall& z, double s) { return z * ComplexBall(Real(s, z.prec()), Real(z.prec())); }

ComplexBall constant(double s, mpfr_prec_t prec) { return ComplexBall(Real(s, prec), Real(prec)); }

double log_of(const Real& x) {
    long e = 0;
    double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
    return std::log(m) + e * std::log(2.0);
}

// upper bound for exp(x) with x given in double
Real exp_upper(double x) {
    Real r(64), a(x + 1e-9 * (std::abs(x) + 1), 64);
    mpfr_exp(r.get(), a.get(), MPFR_RNDU);
    return r;
}

// log of 2 * sum_{m >= R + 1/2} exp(-pi lam m^2), bounded by a geometric series
double log_tail_1d(double lam, int R) {
    double h = R + 0.5;
    return std::log(2.0) - kPi * lam * h * h - std::log1p(-std::exp(-kPi * lam * (2.0 * R + 2.0)));
}

// log of an upper bound for sum_n exp(-pi lam (n + c)^2)
double log_full_1d(double lam) { return std::log1p(2.0 / (-std::expm1(-kPi * lam))); }

Real default_tol(mpfr_prec_t prec) {
    Real t(1.0, 64);
    mpfr_mul_2si(t.get(), t.get(), -static_cast<long>(prec), MPFR_RNDN);
    return t;
}

int choose_radius(double lam, double log_tol, bool two_dim, int cap, double& log_tail) {
    for (int R = 0; R <= cap; ++R) {
        double lt = log_tail_1d(lam, R);
        if (two_dim) lt += std::log(2.0) + log_full_1d(lam);
        if (lt < log_tol) {
            log_tail = lt;
            return R;
        }
    }
    throw DomainError("precision infeasible: theta series needs more than " + std::to_string(cap) + " terms per axis");
}

}  // namespace

PeriodMatrix PeriodMatrix::make(const ComplexBall& t11, const ComplexBall& t12, const ComplexBall& t22, int digits) {
    if (digits < 5) throw DomainError("precision must be at least 5 digits");
    PeriodMatrix m{t11, t12, t22, digits};
    Real y11 = t11.im(), y12 = t12.im(), y22 = t22.im();
    Real det = y11 * y22 - y12 * y12;
    if (!(y11 > Real(0.0, 64)) || !(det > Real(0.0, 64))) throw DomainError("Im tau is not positive definite");
    return m;
}

PeriodMatrix PeriodMatrix::parse(const std::array<std::string, 6>& s, int digits) {
    mpfr_prec_t prec = bits_for_digits(digits);
    return make(ComplexBall::from_strings(s[0], s[1], prec), ComplexBall::from_strings(s[2], s[3], prec),
                ComplexBall::from_strings(s[4], s[5], prec), digits);
}

double PeriodMatrix::min_eigenvalue_im() const {
    double a = t11.im().to_double(), b = t12.im().to_double(), c = t22.im().to_double();
    return (a + c) / 2 - std::sqrt((a - c) * (a - c) / 4 + b * b);
}

PeriodMatrix PeriodMatrix::translate(long s11, long s12, long s22) const {
    mpfr_prec_t p = prec();
    return make(t11 + ComplexBall::from_int(s11, p), t12 + ComplexBall::from_int(s12, p),
                t22 + ComplexBall::from_int(s22, p), digits);
}

PeriodMatrix PeriodMatrix::invert() const {
    ComplexBall det = t11 * t22 - t12 * t12;
    ComplexBall inv = det.inverse();
    return make(-(t22 * inv), t12 * inv, -(t11 * inv), digits);
}

std::string ThetaChar::to_string() const {
    return std::to_string(e1) + std::to_string(e2) + std::to_string(f1) + std::to_string(f2);
}

ThetaChar ThetaChar::parse(const std::string& bits) {
    if (bits.size() != 4) throw DomainError("theta characteristic must have four entries");
    int v[4];
    for (int i = 0; i < 4; ++i) {
        if (bits[i] != '0' && bits[i] != '1') throw DomainError("theta characteristic entries must be 0 or 1");
        v[i] = bits[i] - '0';
    }
    return {v[0], v[1], v[2], v[3]};
}

std::vector<ThetaChar> ThetaChar::even() {
    std::vector<ThetaChar> r;
    for (int m = 0; m < 16; ++m) {
        ThetaChar c{(m >> 3) & 1, (m >> 2) & 1, (m >> 1) & 1, m & 1};
        if (c.parity() == 0) r.push_back(c);
    }
    return r;
}

std::vector<ThetaChar> ThetaChar::odd() {
    std::vector<ThetaChar> r;
    for (int m = 0; m < 16; ++m) {
        ThetaChar c{(m >> 3) & 1, (m >> 2) & 1, (m >> 1) & 1, m & 1};
        if (c.parity() == 1) r.push_back(c);
    }
    return r;
}

ComplexBall theta_constant(const PeriodMatrix& tau, const ThetaChar& ch, const ThetaOptions& opt) {
    mpfr_prec_t prec = tau.prec();
    Real tol = opt.tol ? *opt.tol : default_tol(prec);
    if (!(tol > Real(0.0, 64))) throw DomainError("tolerance must be positive");
    double lam = tau.min_eigenvalue_im() * (1 - 1e-9);
    if (!(lam > 0)) throw DomainError("Im tau is not positive definite");
    double log_tail = 0;
    int R = choose_radius(lam, log_of(tol), true, opt.max_radius, log_tail);

    auto floor_half = [](int e) { return e >= 0 ? e / 2 : -((1 - e) / 2); };
    int c1 = floor_half(ch.e1), c2 = floor_half(ch.e2);
    ComplexBall sum(prec);
    for (int n1 = -R - c1; n1 <= R - c1; ++n1)
        for (int n2 = -R - c2; n2 <= R - c2; ++n2) {
            double v1 = n1 + ch.e1 / 2.0, v2 = n2 + ch.e2 / 2.0;
            ComplexBall w = scale(tau.t11, v1 * v1) + scale(tau.t12, 2 * v1 * v2) + scale(tau.t22, v2 * v2) +
                            constant(v1 * ch.f1 + v2 * ch.f2, prec);
            sum += exp_pi_i(w);
        }
    return sum.add_error(exp_upper(log_tail));
}

ComplexBall big_theta(const PeriodMatrix& tau, const ThetaOptions& opt) {
    mpfr_prec_t prec = tau.prec();
    ComplexBall r = constant(1.0 / 4096, prec);
    for (const auto& c : ThetaChar::even()) {
        ComplexBall t = theta_constant(tau, c, opt);
        r *= t * t;
    }
    return r;
}

std::array<ComplexBall, 3> rosenhain(const PeriodMatrix& tau, const ThetaOptions& opt) {
    auto sq = [&](const char* bits) {
        ComplexBall t = theta_constant(tau, ThetaChar::parse(bits), opt);
        return t * t;
    };
    ComplexBall a = sq("1100"), b = sq("1000"), c = sq("0100"), d = sq("0000"), e = sq("1001"), f = sq("0001");
    for (const auto* den : {&c, &d, &f})
        if (den->contains_zero()) throw DomainError("degenerate point: a Rosenhain denominator vanishes");
    std::array<ComplexBall, 3> l = {a * b / (c * d), e * a / (f * c), e * b / (f * d)};
    ComplexBall one = ComplexBall::from_int(1, tau.prec());
    for (int i = 0; i < 3; ++i) {
        bool bad = l[i].contains_zero() || (l[i] - one).contains_zero();
        for (int j = i + 1; j < 3; ++j) bad = bad || (l[i] - l[j]).contains_zero();
        if (bad) throw DomainError("degenerate point: Rosenhain roots collide (Humbert locus)");
    }
    return l;
}

std::array<ComplexBall, 3> invariants_from_lambdas(const std::array<ComplexBall, 3>& lambda) {
    mpfr_prec_t prec = lambda[0].prec();
    ComplexBall one = ComplexBall::from_int(1, prec);
    std::vector<std::optional<ComplexBall>> roots = {ComplexBall::from_int(0, prec), one, lambda[0], lambda[1],
                                                     lambda[2], std::nullopt};
    auto abcd = igusa_clebsch_from_roots<ComplexBall>(roots, one, one);
    if (abcd[3].contains_zero()) throw DomainError("degenerate point: the discriminant vanishes");
    return absolute_from_abcd(abcd[0], abcd[1], abcd[2], abcd[3]);
}

std::array<ComplexBall, 3> invariants_from_tau(const PeriodMatrix& tau, const ThetaOptions& opt) {
    return invariants_from_lambdas(rosenhain(tau, opt));
}

ComplexBall theta_genus1(const ComplexBall& tau, int a, int b, const Real& tol, int max_radius) {
    double lam = tau.im().to_double() * (1 - 1e-9);
    if (!(lam > 0)) throw DomainError("tau must lie in the upper half plane");
    double log_tail = 0;
    int R = choose_radius(lam, log_of(tol), false, max_radius, log_tail);
    mpfr_prec_t prec = tau.prec();
    int c = a >= 0 ? a / 2 : -((1 - a) / 2);
    ComplexBall sum(prec);
    for (int n = -R - c; n <= R - c; ++n) {
        double v = n + a / 2.0;
        sum += exp_pi_i(scale(tau, v * v) + constant(v * b, prec));
    }
    return sum.add_error(exp_upper(log_tail));
}

ComplexBall delta_genus1(const ComplexBall& tau, const Real& tol) {
    double y = tau.im().to_double();
    if (!(y > 0)) throw DomainError("tau must lie in the upper half plane");
    mpfr_prec_t prec = tau.prec();
    double log_q = -2 * kPi * y, log_tol = log_of(tol);
    long M = 1;
    double log_tail = 0;
    for (;; ++M) {
        if (M > 100000) throw DomainError("precision infeasible: q-expansion too long");
        double rho = 5 * std::log1p(1.0 / (M + 1)) + log_q;
        if (rho >= 0) continue;
        log_tail = std::log(1008.0) + 5 * std::log(M + 1.0) + (M + 1) * log_q - std::log1p(-std::exp(rho));
        if (log_tail < log_tol) break;
    }
    ComplexBall q = exp_pi_i(scale(tau, 2.0));
    ComplexBall qn = q, e4 = ComplexBall::from_int(1, prec), e6 = ComplexBall::from_int(1, prec);
    for (long n = 1; n <= M; ++n) {
        Integer s3 = 0, s5 = 0;
        for (long d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            for (long t : {d, n / d}) {
                Integer T = t;
                s3 += T * T * T;
                s5 += T * T * T * T * T;
                if (d * d == n) break;
            }
        }
        e4 += qn * ComplexBall::from_rational(Rational(240 * s3), prec);
        e6 -= qn * ComplexBall::from_rational(Rational(504 * s5), prec);
        qn *= q;
    }
    Real tail = exp_upper(log_tail);
    e4 = e4.add_error(tail);
    e6 = e6.add_error(tail);
    return e4 * e4 * e4 - e6 * e6;
}

ComplexBall jacobi_ratio(const ComplexBall& tau, const Real& tol) {
    ComplexBall p = theta_genus1(tau, 0, 0, tol) * theta_genus1(tau, 0, 1, tol) * theta_genus1(tau, 1, 0, tol);
    ComplexBall p2 = p * p;
    ComplexBall p4 = p2 * p2;
    return p4 * p4 / delta_genus1(tau, tol);
}

Integer DenominatorSpec::for_coefficient(int i, long a) const {
    if (fixed) return *fixed;
    if (!field) throw DomainError("automatic denominators need field data");
    Integer B = extra;
    for (const auto& p : primes) {
        if (p < 5) throw DomainError("automatic denominators cover primes p >= 5 only");
        long e = predict(*field, p).ramification_N;
        auto b = class_poly_coeff_bound(i, a, p, field->d, field->trace_r(), e);
        Real neg = -b.value;
        Integer k = 0;
        mpfr_get_z(k.get_mpz_t(), neg.get(), MPFR_RNDD);
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k.get_ui());
        B *= pk;
    }
    return B;
}

ClassPolynomialResult class_polynomial_from_values(const std::vector<std::array<ComplexBall, 3>>& values,
                                                   const DenominatorSpec& denom, const Real& tol) {
    if (values.empty()) throw DomainError("no CM values given");
    mpfr_prec_t prec = values[0][0].prec();
    ClassPolynomialResult res;
    for (int i = 0; i < 3; ++i) {
        std::vector<ComplexBall> c = {ComplexBall::from_int(1, prec)};  // low first
        for (const auto& v : values) {
            std::vector<ComplexBall> next(c.size() + 1, ComplexBall(prec));
            for (size_t k = 0; k < c.size(); ++k) {
                next[k + 1] += c[k];
                next[k] -= c[k] * v[i];
            }
            c = std::move(next);
        }
        auto& out = res.h[i];
        out.max_residual = Real(0.0, 64);
        size_t n = values.size();
        for (size_t a = 0; a <= n; ++a) {
            Integer B = denom.for_coefficient(i + 1, static_cast<long>(a));
            if (B <= 0) throw DomainError("denominator bound must be positive");
            ComplexBall z = c[n - a] * ComplexBall::from_rational(Rational(B), prec);
            Integer near = z.re().round_to_integer();
            Real resid = (z - ComplexBall::from_rational(Rational(near), prec)).abs_upper();
            if (!(resid < tol)) {
                std::ostringstream os;
                os << "insufficient precision or wrong denominator bound: h" << i + 1 << " coefficient " << a
                   << " has residual " << resid.to_string(6) << " with B = " << B.get_str();
                throw DomainError(os.str());
            }
            out.max_residual = max(out.max_residual, resid);
            Rational q(near, B);
            q.canonicalize();
            out.coeffs.push_back(q);
            out.denominators.push_back(B);
        }
    }
    return res;
}

ClassPolynomialResult class_polynomial(const std::vector<PeriodMatrix>& taus, const DenominatorSpec& denom,
                                       const Real& tol) {
    std::vector<std::array<ComplexBall, 3>> values;
    for (const auto& t : taus) values.push_back(invariants_from_tau(t));
    return class_polynomial_from_values(values, denom, tol);
}

}  // namespace g2cm
