#pragma once

#include <string>

#include <mpfr.h>

#include "g2cm/field.hpp"

namespace g2cm {

// RAII wrapper over mpfr_t; binary operations work at the larger operand precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128);
    Real(double v, mpfr_prec_t prec);
    Real(const Integer& v, mpfr_prec_t prec);
    Real(const Rational& v, mpfr_prec_t prec);
    Real(const std::string& decimal, mpfr_prec_t prec);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    Real operator+(const Real& b) const;
    Real operator-(const Real& b) const;
    Real operator*(const Real& b) const;
    Real operator/(const Real& b) const;
    Real operator-() const;

    bool operator<(const Real& b) const { return mpfr_less_p(v_, b.v_); }
    bool operator>(const Real& b) const { return mpfr_greater_p(v_, b.v_); }
    bool operator<=(const Real& b) const { return mpfr_lessequal_p(v_, b.v_); }
    bool operator>=(const Real& b) const { return mpfr_greaterequal_p(v_, b.v_); }

    bool is_zero() const { return mpfr_zero_p(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    Integer round_to_integer() const;
    std::string to_string(int digits) const;

    static Real pi(mpfr_prec_t prec);

private:
    mpfr_t v_;
    bool live_ = false;
};

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real max(const Real& a, const Real& b);

// Directed-rounding helpers for radii and bounds.
Real add_up(const Real& a, const Real& b);
Real mul_up(const Real& a, const Real& b);
Real div_up(const Real& a, const Real& b);
Real ldexp_up(const Real& a, long e);

mpfr_prec_t bits_for_digits(int digits);

// Complex midpoint with an error radius bounding the distance to the exact value.
class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t prec = 128);
    ComplexBall(const Real& re, const Real& im);
    ComplexBall(const Real& re, const Real& im, const Real& rad);
    static ComplexBall from_rational(const Rational& q, mpfr_prec_t prec);
    static ComplexBall from_int(long v, mpfr_prec_t prec);
    static ComplexBall from_strings(const std::string& re, const std::string& im, mpfr_prec_t prec);

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    const Real& rad() const { return rad_; }
    mpfr_prec_t prec() const { return re_.prec(); }

    ComplexBall operator+(const ComplexBall& b) const;
    ComplexBall operator-(const ComplexBall& b) const;
    ComplexBall operator*(const ComplexBall& b) const;
    ComplexBall operator/(const ComplexBall& b) const;
    ComplexBall operator-() const;
    ComplexBall& operator+=(const ComplexBall& b) { return *this = *this + b; }
    ComplexBall& operator-=(const ComplexBall& b) { return *this = *this - b; }
    ComplexBall& operator*=(const ComplexBall& b) { return *this = *this * b; }
    ComplexBall& operator/=(const ComplexBall& b) { return *this = *this / b; }

    ComplexBall inverse() const;
    ComplexBall conj() const;
    ComplexBall add_error(const Real& e) const;

    // Upper bound of |z| over the ball and lower bound (may be zero).
    Real abs_upper() const;
    Real abs_lower() const;
    Real mid_abs() const;
    bool contains_zero() const;

    std::string to_string(int digits) const;

private:
    Real re_, im_, rad_;
};

// exp(2*pi*i*z) on a ball
ComplexBall exp_2pi_i(const ComplexBall& z);
ComplexBall exp_pi_i(const ComplexBall& z);

}  // namespace g2cm
