#include "g2cm/ball.hpp"

#include <cmath>
#include <vector>

namespace g2cm {

namespace {
constexpr mpfr_prec_t kRadPrec = 64;
}

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
    live_ = true;
}

Real::Real(double v, mpfr_prec_t prec) : Real(prec) { mpfr_set_d(v_, v, MPFR_RNDN); }

Real::Real(const Integer& v, mpfr_prec_t prec) : Real(prec) { mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN); }

Real::Real(const Rational& v, mpfr_prec_t prec) : Real(prec) { mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN); }

Real::Real(const std::string& decimal, mpfr_prec_t prec) : Real(prec) {
    char* end = nullptr;
    mpfr_strtofr(v_, decimal.c_str(), &end, 10, MPFR_RNDN);
    if (end == decimal.c_str() || *end != '\0') throw DomainError("cannot parse real '" + decimal + "'");
}

Real::Real(const Real& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
    live_ = true;
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, o.prec());
    mpfr_swap(v_, o.v_);
    live_ = true;
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() {
    if (live_) mpfr_clear(v_);
}

Real Real::operator+(const Real& b) const {
    Real r(std::max(prec(), b.prec()));
    mpfr_add(r.v_, v_, b.v_, MPFR_RNDN);
    return r;
}

Real Real::operator-(const Real& b) const {
    Real r(std::max(prec(), b.prec()));
    mpfr_sub(r.v_, v_, b.v_, MPFR_RNDN);
    return r;
}

Real Real::operator*(const Real& b) const {
    Real r(std::max(prec(), b.prec()));
    mpfr_mul(r.v_, v_, b.v_, MPFR_RNDN);
    return r;
}

Real Real::operator/(const Real& b) const {
    Real r(std::max(prec(), b.prec()));
    mpfr_div(r.v_, v_, b.v_, MPFR_RNDN);
    return r;
}

Real Real::operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Integer Real::round_to_integer() const {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

std::string Real::to_string(int digits) const {
    if (mpfr_zero_p(v_)) return "0";
    std::vector<char> buf(digits + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

Real Real::pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& a) {
    Real r(a.prec());
    mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real exp(const Real& a) {
    Real r(a.prec());
    mpfr_exp(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real log(const Real& a) {
    Real r(a.prec());
    mpfr_log(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real sin(const Real& a) {
    Real r(a.prec());
    mpfr_sin(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real cos(const Real& a) {
    Real r(a.prec());
    mpfr_cos(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real add_up(const Real& a, const Real& b) {
    Real r(kRadPrec);
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

Real mul_up(const Real& a, const Real& b) {
    Real r(kRadPrec);
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

Real div_up(const Real& a, const Real& b) {
    Real r(kRadPrec);
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

Real ldexp_up(const Real& a, long e) {
    Real r(kRadPrec);
    mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDU);
    return r;
}

mpfr_prec_t bits_for_digits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 32;
}

namespace {

Real abs_up(const Real& a) {
    Real r(kRadPrec);
    mpfr_abs(r.get(), a.get(), MPFR_RNDU);
    return r;
}

// |re| + |im| rounded up
Real l1_up(const Real& re, const Real& im) { return add_up(abs_up(re), abs_up(im)); }

// generous bound for the rounding error of a midpoint computed with a few operations
Real rounding(const Real& re, const Real& im, mpfr_prec_t prec, int ops) {
    return ldexp_up(l1_up(re, im), 3 + ops - static_cast<long>(prec));
}

}  // namespace

ComplexBall::ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(kRadPrec) {}

ComplexBall::ComplexBall(const Real& re, const Real& im) : re_(re), im_(im), rad_(kRadPrec) {}

ComplexBall::ComplexBall(const Real& re, const Real& im, const Real& rad) : re_(re), im_(im), rad_(abs_up(rad)) {}

ComplexBall ComplexBall::from_rational(const Rational& q, mpfr_prec_t prec) {
    Real re(q, prec);
    ComplexBall b(re, Real(prec));
    if (q.get_den() != 1 || mpz_sizeinbase(q.get_num_mpz_t(), 2) > static_cast<size_t>(prec))
        b.rad_ = rounding(re, Real(prec), prec, 0);
    return b;
}

ComplexBall ComplexBall::from_int(long v, mpfr_prec_t prec) { return from_rational(Rational(v), prec); }

ComplexBall ComplexBall::from_strings(const std::string& re, const std::string& im, mpfr_prec_t prec) {
    Real a(re, prec), b(im, prec);
    ComplexBall z(a, b);
    z.rad_ = rounding(a, b, prec, 0);
    return z;
}

ComplexBall ComplexBall::operator+(const ComplexBall& b) const {
    ComplexBall r(re_ + b.re_, im_ + b.im_);
    r.rad_ = add_up(add_up(rad_, b.rad_), rounding(r.re_, r.im_, r.prec(), 0));
    return r;
}

ComplexBall ComplexBall::operator-(const ComplexBall& b) const {
    ComplexBall r(re_ - b.re_, im_ - b.im_);
    r.rad_ = add_up(add_up(rad_, b.rad_), rounding(r.re_, r.im_, r.prec(), 0));
    return r;
}

ComplexBall ComplexBall::operator-() const {
    ComplexBall r(-re_, -im_);
    r.rad_ = rad_;
    return r;
}

ComplexBall ComplexBall::conj() const {
    ComplexBall r(re_, -im_);
    r.rad_ = rad_;
    return r;
}

ComplexBall ComplexBall::operator*(const ComplexBall& b) const {
    ComplexBall r(re_ * b.re_ - im_ * b.im_, re_ * b.im_ + im_ * b.re_);
    Real a1 = l1_up(re_, im_), b1 = l1_up(b.re_, b.im_);
    Real err = add_up(add_up(mul_up(a1, b.rad_), mul_up(b1, rad_)), mul_up(rad_, b.rad_));
    Real round = ldexp_up(mul_up(a1, b1), 4 - static_cast<long>(r.prec()));
    r.rad_ = add_up(err, round);
    return r;
}

Real ComplexBall::mid_abs() const { return sqrt(re_ * re_ + im_ * im_); }

Real ComplexBall::abs_upper() const { return add_up(l1_up(re_, im_), rad_); }

Real ComplexBall::abs_lower() const {
    Real m(kRadPrec);
    Real a = abs(re_), b = abs(im_);
    mpfr_set(m.get(), max(a, b).get(), MPFR_RNDD);
    Real r(kRadPrec);
    mpfr_sub(r.get(), m.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
    return r;
}

bool ComplexBall::contains_zero() const { return abs_lower().is_zero(); }

ComplexBall ComplexBall::inverse() const {
    if (contains_zero()) throw DomainError("division by a ball containing zero");
    Real n2 = re_ * re_ + im_ * im_;
    ComplexBall r(re_ / n2, -im_ / n2);
    Real lo = abs_lower();
    Real mid_lo(kRadPrec);
    Real a = abs(re_), b = abs(im_);
    mpfr_set(mid_lo.get(), max(a, b).get(), MPFR_RNDD);
    // |1/z - 1/m| <= rad / (|m| (|m| - rad))
    Real err = div_up(rad_, mul_up(Real(mid_lo), lo));
    Real round = ldexp_up(div_up(Real(1.0, kRadPrec), mid_lo), 6 - static_cast<long>(r.prec()));
    r.rad_ = add_up(err, round);
    return r;
}

ComplexBall ComplexBall::operator/(const ComplexBall& b) const { return *this * b.inverse(); }

ComplexBall ComplexBall::add_error(const Real& e) const {
    ComplexBall r = *this;
    r.rad_ = add_up(rad_, abs_up(e));
    return r;
}

std::string ComplexBall::to_string(int digits) const {
    return "(" + re_.to_string(digits) + " + " + im_.to_string(digits) + "i +/- " + rad_.to_string(6) + ")";
}

ComplexBall exp_pi_i(const ComplexBall& z) {
    // exp(pi*i*(x+iy)) = exp(-pi*y) * (cos(pi*x) + i sin(pi*x))
    mpfr_prec_t prec = z.prec();
    Real pi = Real::pi(prec);
    Real x = pi * z.re(), y = pi * z.im();
    Real m = exp(-y);
    ComplexBall r(m * cos(x), m * sin(x));
    // |exp(w + d) - exp(w)| <= |exp(w)| (exp(|d|) - 1), |d| <= pi*rad
    Real d = mul_up(Real(3.1415927, kRadPrec), z.rad());
    Real md = abs(m);
    Real grow(kRadPrec);
    mpfr_expm1(grow.get(), d.get(), MPFR_RNDU);
    Real argmag = add_up(add_up(abs(x), abs(y)), Real(1.0, kRadPrec));
    Real round = ldexp_up(mul_up(md, argmag), 6 - static_cast<long>(prec));
    r = r.add_error(add_up(mul_up(mul_up(md, Real(2.0, kRadPrec)), grow), round));
    return r;
}

ComplexBall exp_2pi_i(const ComplexBall& z) {
    return exp_pi_i(z + z);
}

}  // namespace g2cm
