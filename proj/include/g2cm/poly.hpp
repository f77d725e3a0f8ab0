#pragma once

#include <utility>
#include <vector>

#include "g2cm/field.hpp"

namespace g2cm {

// Dense univariate polynomial, coefficients lowest degree first.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr F) : F_(std::move(F)) {}
    Poly(FieldPtr F, std::vector<FieldElement> coeffs);

    static Poly constant(const FieldElement& c);
    static Poly x(const FieldPtr& F);
    static Poly monomial(const FieldElement& c, int degree);

    const FieldPtr& field() const { return F_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    FieldElement coeff(int i) const;
    FieldElement leading() const;
    const std::vector<FieldElement>& coeffs() const { return c_; }

    Poly operator+(const Poly& b) const;
    Poly operator-(const Poly& b) const;
    Poly operator*(const Poly& b) const;
    Poly operator*(const FieldElement& s) const;
    Poly operator-() const;
    bool operator==(const Poly& b) const;
    bool operator!=(const Poly& b) const { return !(*this == b); }

    std::pair<Poly, Poly> divmod(const Poly& b) const;
    Poly operator/(const Poly& b) const { return divmod(b).first; }
    Poly operator%(const Poly& b) const { return divmod(b).second; }

    Poly monic() const;
    Poly derivative() const;
    FieldElement eval(const FieldElement& x) const;
    Poly pow(const Integer& e) const;
    Poly powmod(const Integer& e, const Poly& m) const;

    std::string to_string() const;

private:
    void normalize();

    FieldPtr F_;
    std::vector<FieldElement> c_;
};

Poly gcd(const Poly& a, const Poly& b);
bool is_squarefree(const Poly& f);
bool is_irreducible(const Poly& f);

struct Factor {
    Poly poly;
    int multiplicity;
};

// Monic irreducible factors with multiplicity, sorted by (degree, coefficients).
std::vector<Factor> factor_poly(const Poly& f);
std::vector<Poly> squarefree_decomposition(const Poly& f);

// Embedding of a finite field into an extension of itself.
struct FieldEmbedding {
    FieldPtr base;
    FieldPtr target;
    FieldElement image_of_generator;

    FieldElement map(const FieldElement& a) const;
    // Inverse image of an element known to lie in the base field; throws otherwise.
    FieldElement restrict(const FieldElement& a) const;
};

FieldEmbedding identity_embedding(const FieldPtr& F);
// The smallest-index irreducible polynomial of degree n over GF(p).
std::vector<std::uint64_t> first_irreducible(std::uint64_t p, int n);
// Embeds GF(p^k) into GF(p^(k*m)) presented by first_irreducible(p, k*m).
FieldEmbedding extend_field(const FieldPtr& base, int m);

struct SplittingRoots {
    int m = 1;
    FieldEmbedding embedding;
    std::vector<FieldElement> roots;
};

SplittingRoots splitting_roots(const Poly& f);

struct FieldMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<FieldElement> a;

    FieldMatrix() = default;
    FieldMatrix(const FieldPtr& F, int r, int c);
    FieldElement& at(int i, int j) { return a[i * cols + j]; }
    const FieldElement& at(int i, int j) const { return a[i * cols + j]; }

    FieldMatrix operator*(const FieldMatrix& b) const;
    bool operator==(const FieldMatrix& b) const;
    bool is_zero() const;
    int rank() const;
};

FieldMatrix frobenius_twist(const FieldMatrix& m);

}  // namespace g2cm
