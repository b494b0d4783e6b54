#ifndef FDIFF_GROUPPOISSON_HPP
#define FDIFF_GROUPPOISSON_HPP

#include <functional>
#include <vector>

#include "fdiff/coeff_poly.hpp"
#include "fdiff/jetgroup.hpp"

namespace fdiff {

using PBiField = BiField<CoeffPoly>;
using PFormalMap = FormalMap<CoeffPoly>;

// Generic group element: the coefficient of u^I in component i is x^i_I.
struct SymbolicJet {
    int dim = 0;
    bool include_constant = false;
    int max_degree = 0;
    char symbol = 'x';
    PFormalMap map;

    static SymbolicJet make(int n, bool include_constant, int max_degree, char symbol = 'x');
};

// All multi-indices of length n and total degree in [lo, hi], graded then lexicographic.
std::vector<std::vector<int>> multi_indices(int n, int lo, int hi);

PBiField omega_bifield(const RBiField& phi, const SymbolicJet& jet);

// {x^i_I, x^j_J}; the component in each label is 1-based.
CoeffPoly bracket_coefficient(const PBiField& omega, const Indeterminate& a, const Indeterminate& b);

CoeffPoly coordinate_jacobi_residual(const PBiField& omega, const Indeterminate& a, const Indeterminate& b,
                                     const Indeterminate& c);

RBiField multiplicativity_residual(const RBiField& phi, const RFormalMap& x, const RFormalMap& y);

struct BracketEntry {
    Indeterminate a;
    Indeterminate b;
    CoeffPoly poly;
};

// Brackets {x_A, x_B} with A before B and both index degrees at most bound.
std::vector<BracketEntry> bracket_table(const PBiField& omega, int bound, bool include_constant);

// Numeric specialization of a symbolic series.
RSeries evaluate_coefficients(const PSeries& s, const std::function<Rational(const Indeterminate&)>& value);

} // namespace fdiff

#endif
