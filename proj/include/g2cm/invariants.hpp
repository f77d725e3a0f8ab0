#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "g2cm/ball.hpp"
#include "g2cm/poly.hpp"

namespace g2cm {

// y^2 = u0 x^6 + u1 x^5 + ... + u6; u0 = 0 gives a quintic.
struct HyperellipticModel {
    FieldPtr field;
    std::array<FieldElement, 7> u;

    static HyperellipticModel from_leading_first(const FieldPtr& F, const std::vector<FieldElement>& coeffs);
    Poly poly() const;
    int degree() const;
};

struct IgusaClebsch {
    FieldElement A, B, C, D;
};

struct JVector {
    std::array<FieldElement, 5> J;  // J2, J4, J6, J8, J10
};

struct GammaVector {
    std::array<FieldElement, 10> g;
};

struct AbsoluteInvariants {
    FieldElement i1, i2, i3;
};

struct InvariantOptions {
    bool allow_singular = false;
    mpfr_prec_t start_bits = 128;
    mpfr_prec_t max_bits = 1 << 15;
};

IgusaClebsch igusa_clebsch(const HyperellipticModel& model, const InvariantOptions& opt = {});
JVector j_from_igusa_clebsch(const IgusaClebsch& ic);
GammaVector gamma_from_j(const JVector& j);
AbsoluteInvariants absolute_from_igusa_clebsch(const IgusaClebsch& ic);
AbsoluteInvariants absolute_from_gamma(const GammaVector& g);
GammaVector gamma_from_absolute(const AbsoluteInvariants& a);

// Weighted-projective equality (r^2 A : r^4 B : r^6 C : r^10 D) with r in an algebraic closure.
bool is_isomorphic(const IgusaClebsch& a, const IgusaClebsch& b);

struct GoodReduction {
    bool potentially_good;
};
GoodReduction good_reduction_tests(const GammaVector& g, const Integer& p);
bool reductions_isomorphic(const GammaVector& g1, const GammaVector& g2, const Integer& p);

// f'(x) = sum u_i (a x + b)^(6-i) (c x + d)^i
HyperellipticModel transform_model(const HyperellipticModel& m, const FieldElement& a, const FieldElement& b,
                                   const FieldElement& c, const FieldElement& d);

// Igusa-Clebsch symmetric sums on six roots; std::nullopt marks the root at infinity.
template <class T>
std::array<T, 4> igusa_clebsch_from_roots(const std::vector<std::optional<T>>& roots, const T& lead, const T& one) {
    T sq[6][6];
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            if (roots[i] && roots[j]) {
                T d = *roots[i] - *roots[j];
                sq[i][j] = d * d;
            } else {
                sq[i][j] = one;
            }
            sq[j][i] = sq[i][j];
        }
    T zero = one - one;
    T A = zero, B = zero, C = zero, D = one;
    // fifteen pairings {a,b}{c,d}{e,f}
    for (int b = 1; b < 6; ++b) {
        int rest[4], n = 0;
        for (int k = 1; k < 6; ++k)
            if (k != b) rest[n++] = k;
        for (int m = 1; m < 4; ++m) {
            int o[2], q = 0;
            for (int k = 1; k < 4; ++k)
                if (k != m) o[q++] = rest[k];
            A = A + sq[0][b] * sq[rest[0]][rest[m]] * sq[o[0]][o[1]];
        }
    }
    // ten splits into two triples, with the six matchings between them
    for (int x = 1; x < 6; ++x)
        for (int y = x + 1; y < 6; ++y) {
            int t1[3] = {0, x, y}, t2[3], n = 0;
            for (int k = 1; k < 6; ++k)
                if (k != x && k != y) t2[n++] = k;
            T tri = sq[t1[0]][t1[1]] * sq[t1[1]][t1[2]] * sq[t1[2]][t1[0]] * sq[t2[0]][t2[1]] * sq[t2[1]][t2[2]] *
                    sq[t2[2]][t2[0]];
            B = B + tri;
            int perm[3] = {0, 1, 2};
            do {
                C = C + tri * sq[t1[0]][t2[perm[0]]] * sq[t1[1]][t2[perm[1]]] * sq[t1[2]][t2[perm[2]]];
            } while (std::next_permutation(perm, perm + 3));
        }
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) D = D * sq[i][j];
    T l2 = lead * lead;
    T l4 = l2 * l2;
    T l6 = l4 * l2;
    T l10 = l6 * l4;
    return {l2 * A, l4 * B, l6 * C, l10 * D};
}

template <class T>
std::array<T, 3> absolute_from_abcd(const T& A, const T& B, const T& C, const T& D) {
    T A2 = A * A;
    T A3 = A2 * A;
    T A5 = A3 * A2;
    return {A5 / D, A3 * B / D, A2 * C / D};
}

}  // namespace g2cm
