#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "g2cm/field.hpp"

namespace g2cm {

using IntPoly = std::vector<Integer>;  // low-to-high

enum class GaloisType { Cyclic, Biquadratic, Dihedral };
std::string to_string(GaloisType t);

// K = Q(sqrt d)(sqrt r), r = alpha + beta sqrt d totally negative.
struct QuarticCMField {
    Integer d, alpha, beta;

    static QuarticCMField make(const Integer& d, const Integer& alpha, const Integer& beta);
    IntPoly minpoly() const;  // x^4 - 2 alpha x^2 + (alpha^2 - beta^2 d)
    Integer norm_r() const { return alpha * alpha - beta * beta * d; }
    Integer trace_r() const { return 2 * alpha; }
};

GaloisType galois_type(const QuarticCMField& K);

struct ReflexField {
    GaloisType type;
    IntPoly minpoly;                         // cyclic and dihedral
    Integer real_subfield_d;                 // squarefree d* with K*+ = Q(sqrt d*)
    std::vector<Integer> imaginary_discs;    // biquadratic: K1, K2 fundamental discriminants
    int marked = 0;                          // index of the constituent for the CM type {1, alpha_1}
    bool primitive = true;
};

ReflexField reflex_field(const QuarticCMField& K);

using SplittingShape = std::vector<std::pair<int, int>>;  // sorted (e, f)
std::string to_string(const SplittingShape& s);

struct PMaximalOrder {
    std::vector<std::vector<Rational>> basis;  // rows in power-basis coordinates
    int index_valuation = 0;                  // v_p [O_p : Z[theta]]
};

PMaximalOrder p_maximal_order(const IntPoly& f, const Integer& p);
bool dedekind_p_maximal(const IntPoly& f, const Integer& p);
SplittingShape splitting_shape(const IntPoly& f, const Integer& p);
IntPoly charpoly_of(const IntPoly& f, const std::vector<Rational>& element);

Integer poly_discriminant(const IntPoly& f);
Integer field_discriminant(const IntPoly& f);
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);
Integer squarefree_part(const Integer& n);

IntPoly real_quadratic_model(const Integer& d);

struct ShapeProfile {
    SplittingShape K, Kplus;
    std::optional<SplittingShape> Kstar, Kstar_plus;
    bool experimental = false;
};

ShapeProfile shape_profile(const QuarticCMField& K, const Integer& p);

std::string poly_to_string(const IntPoly& f);

}  // namespace g2cm
