#pragma once

#include <array>
#include <vector>

#include "g2cm/poly.hpp"

namespace g2cm {

struct HasseWittMatrix {
    FieldMatrix M;  // [[c_{p-1}, c_{p-2}], [c_{2p-1}, c_{2p-2}]]
    std::uint64_t p = 0;
};

struct ReductionProfile {
    int a_number = 0;
    int f_number = 0;
    bool superspecial = false;
    bool ordinary = false;
};

// f given as a polynomial of degree 5 or 6 over GF(q), q odd.
HasseWittMatrix hasse_witt(const Poly& f);
// Leading-first coefficients: 7 entries for a sextic (u0 != 0), 6 for a quintic.
HasseWittMatrix hasse_witt_from_coeffs(const FieldPtr& F, const std::vector<FieldElement>& leading_first);
ReductionProfile af_numbers(const HasseWittMatrix& hw);

// The four coefficients c_{p-1}, c_{p-2}, c_{2p-1}, c_{2p-2} of f^((p-1)/2) computed over ZZ.
std::array<Integer, 4> hasse_witt_integer_lift(const std::vector<Integer>& leading_first, std::uint64_t p);

}  // namespace g2cm
