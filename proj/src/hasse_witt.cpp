#include "g2cm/hasse_witt.hpp"

namespace g2cm {

HasseWittMatrix hasse_witt(const Poly& f) {
    const FieldPtr& F = f.field();
    if (F->is_rational()) throw DomainError("Hasse-Witt matrix needs a finite field");
    std::uint64_t p = F->characteristic();
    if (p == 2) throw DomainError("p = 2 is unsupported");
    if (f.degree() != 5 && f.degree() != 6) throw DomainError("f must have degree 5 or 6");
    if (!is_squarefree(f)) throw DomainError("singular curve: f is not squarefree");
    Poly g = f.pow(Integer(static_cast<unsigned long>((p - 1) / 2)));
    int q = static_cast<int>(p);
    HasseWittMatrix hw;
    hw.p = p;
    hw.M = FieldMatrix(F, 2, 2);
    hw.M.at(0, 0) = g.coeff(q - 1);
    hw.M.at(0, 1) = g.coeff(q - 2);
    hw.M.at(1, 0) = g.coeff(2 * q - 1);
    hw.M.at(1, 1) = g.coeff(2 * q - 2);
    return hw;
}

HasseWittMatrix hasse_witt_from_coeffs(const FieldPtr& F, const std::vector<FieldElement>& lf) {
    if (lf.size() != 6 && lf.size() != 7) throw DomainError("expected 6 or 7 coefficients");
    if (lf.size() == 7 && lf.front().is_zero())
        throw DomainError("ambiguous model: leading coefficient is zero; pass the quintic with 6 coefficients");
    std::vector<FieldElement> c(lf.rbegin(), lf.rend());
    Poly f(F, c);
    if (f.degree() != static_cast<int>(lf.size()) - 1) throw DomainError("leading coefficient must be nonzero");
    return hasse_witt(f);
}

ReductionProfile af_numbers(const HasseWittMatrix& hw) {
    ReductionProfile r;
    r.a_number = 2 - hw.M.rank();
    r.f_number = (frobenius_twist(hw.M) * hw.M).rank();
    r.superspecial = r.a_number == 2 && r.f_number == 0;
    r.ordinary = r.a_number == 0 && r.f_number == 2;
    return r;
}

std::array<Integer, 4> hasse_witt_integer_lift(const std::vector<Integer>& lf, std::uint64_t p) {
    FieldPtr Q = FieldDescriptor::rationals();
    std::vector<FieldElement> c;
    for (auto it = lf.rbegin(); it != lf.rend(); ++it) c.push_back(FieldElement::from_integer(Q, *it));
    Poly g = Poly(Q, c).pow(Integer(static_cast<unsigned long>((p - 1) / 2)));
    int q = static_cast<int>(p);
    auto z = [&](int i) { return Integer(g.coeff(i).rational()); };
    return {z(q - 1), z(q - 2), z(2 * q - 1), z(2 * q - 2)};
}

}  // namespace g2cm
