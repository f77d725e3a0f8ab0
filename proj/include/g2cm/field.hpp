#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace g2cm {

using Integer = mpz_class;
using Rational = mpq_class;

class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class FieldDescriptor;
using FieldPtr = std::shared_ptr<const FieldDescriptor>;

// QQ, GF(p) or GF(p^k) presented by a monic irreducible modulus (low-to-high).
class FieldDescriptor {
public:
    static FieldPtr rationals();
    static FieldPtr prime(std::uint64_t p);
    static FieldPtr extension(std::uint64_t p, const std::vector<std::uint64_t>& modulus);
    static FieldPtr parse(const std::string& spec);

    std::uint64_t characteristic() const { return p_; }
    int degree() const { return k_; }
    bool is_rational() const { return p_ == 0; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    Integer order() const;
    std::string to_string() const;

    bool same_as(const FieldDescriptor& other) const;

private:
    FieldDescriptor(std::uint64_t p, int k, std::vector<std::uint64_t> modulus)
        : p_(p), k_(k), modulus_(std::move(modulus)) {}

    std::uint64_t p_ = 0;
    int k_ = 1;
    std::vector<std::uint64_t> modulus_;
};

void require_same_field(const FieldPtr& a, const FieldPtr& b);

class FieldElement {
public:
    FieldElement() = default;

    static FieldElement zero(const FieldPtr& F);
    static FieldElement one(const FieldPtr& F);
    static FieldElement from_int(const FieldPtr& F, long v);
    static FieldElement from_integer(const FieldPtr& F, const Integer& v);
    static FieldElement from_rational(const FieldPtr& F, const Rational& v);
    static FieldElement from_coeffs(const FieldPtr& F, std::vector<std::uint64_t> c);
    static FieldElement generator(const FieldPtr& F);

    // Accepts "17", "-3", "2/5" (QQ), "a^N" and "[c0,c1,...]" or "c0,c1,..." (extensions).
    static FieldElement parse(const FieldPtr& F, const std::string& text);

    const FieldPtr& field() const { return F_; }
    bool is_zero() const;
    bool is_one() const;

    const Rational& rational() const;
    const std::vector<std::uint64_t>& coeffs() const { return c_; }

    FieldElement operator+(const FieldElement& b) const;
    FieldElement operator-(const FieldElement& b) const;
    FieldElement operator*(const FieldElement& b) const;
    FieldElement operator/(const FieldElement& b) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
    FieldElement& operator/=(const FieldElement& b) { return *this = *this / b; }

    bool operator==(const FieldElement& b) const;
    bool operator!=(const FieldElement& b) const { return !(*this == b); }
    bool operator<(const FieldElement& b) const;

    FieldElement inverse() const;
    FieldElement pow(const Integer& e) const;
    FieldElement pow(long e) const { return pow(Integer(e)); }
    FieldElement frobenius() const { return pow(Integer(static_cast<unsigned long>(F_->characteristic()))); }

    std::string to_string() const;

private:
    FieldPtr F_;
    Rational q_;
    std::vector<std::uint64_t> c_;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);
std::uint64_t reduce_integer(const Integer& v, std::uint64_t p);
int valuation(const Integer& v, const Integer& p);
int valuation(const Rational& v, const Integer& p);

Rational parse_rational(const std::string& text);

}  // namespace g2cm
