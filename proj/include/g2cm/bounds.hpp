#pragma once

#include <optional>
#include <string>
#include <vector>

#include "g2cm/ball.hpp"
#include "g2cm/cmfield.hpp"

namespace g2cm {

enum class BoundCase { SmallRamification, HighRamification };
std::string to_string(BoundCase c);

struct BoundParams {
    long k = 1;
    long e = 1;
    Integer p, d, trace_r;
};

// value is rounded away from the admissible side so the stated bound is never strengthened
struct RationalBound {
    Real value;
    BoundCase regime;
    bool rounded_down;  // true for valuation lower bounds, false for magnitude bounds
};

// upper bound for log_p(d tr^2 / 2); exact when the argument is a power of p
Real log_p_upper(const Integer& p, const Integer& d, const Integer& trace_r, mpfr_prec_t prec = 256);

RationalBound theta_valuation_bound(const BoundParams& bp);
RationalBound class_poly_coeff_bound(int i, long a, const Integer& p, const Integer& d, const Integer& trace_r, long e);
RationalBound class_invariant_bound(long e_star, const Integer& p, const Integer& d, const Integer& trace_r);

struct DeformationBounds {
    Rational lower_exponent;
    long upper_exponent;
    BoundCase regime;
};

DeformationBounds deformation_index_bounds(const Integer& p, long e_V, long n);
long basic_estimate_exponent(long r, long t, long n, const Integer& p);

struct FixturePolynomial {
    std::string name;                // h1, h2, h3
    std::vector<Rational> coeffs;    // leading first, normalized monic
};

struct Fixture {
    std::string id, description;
    QuarticCMField field;
    std::vector<FixturePolynomial> polys;
    std::vector<Integer> denominator_primes;
};

Rational parse_factored_rational(const std::string& text);  // "-3^16*11/2^23*7^6"
std::string sha256_file(const std::string& path);
std::string default_fixture_dir();
// Loads <dir>/<id>.json after checking its checksum against <dir>/MANIFEST.json.
Fixture load_fixture(const std::string& id, const std::string& dir = default_fixture_dir());

struct CoefficientCheck {
    std::string poly;
    long a;                   // index from the top
    std::optional<int> valuation;  // empty for a zero coefficient
    std::string bound;
    bool bound_ok;
    bool integral_ok;         // val >= 0, required only when no superspecial row is predicted
};

struct FixtureReport {
    std::string fixture;
    Integer p;
    long e;                   // e(P_N / p) used for the case split
    std::vector<std::string> predicted_rows;
    bool superspecial_predicted;
    bool in_denominator;
    std::vector<CoefficientCheck> checks;
    bool pass;
};

FixtureReport verify_fixture(const Fixture& fx, const Integer& p);

}  // namespace g2cm
