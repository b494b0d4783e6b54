#ifndef FDIFF_BIALGEBRA_HPP
#define FDIFF_BIALGEBRA_HPP

#include <vector>

#include "fdiff/fields.hpp"

namespace fdiff {

// Generators F^1..F^n of an r-matrix, possibly Laurent.
struct GeneratorTuple {
    std::vector<RSeries> gens;

    int dim() const { return static_cast<int>(gens.size()); }
    const RSeries& operator[](int i) const { return gens[static_cast<std::size_t>(i)]; }
    friend bool operator==(const GeneratorTuple& a, const GeneratorTuple& b) { return a.gens == b.gens; }
};

struct ThetaPsiPair {
    std::vector<RSeries> theta;
    std::vector<RSeries> psi;
    Rational alpha = 0;
    Rational beta = 0;
};

RBiField rmatrix_from_generators(const GeneratorTuple& f);
RBiField rmatrix_from_theta_psi(const ThetaPsiPair& pair);
std::vector<RSeries> theta_psi_residual(const ThetaPsiPair& pair);
ThetaPsiPair theta_psi_from_generators(const GeneratorTuple& f);

RTriField cybe_residual(const RBiField& phi);
RSeries weak_diagonal_residual(const RBiField& phi);

RVectorField lie_bracket(const RVectorField& x, const RVectorField& y);
RBiField ad_on_bifield(const RVectorField& x, const RBiField& phi);
RBiField coboundary_delta(const RVectorField& x, const RBiField& phi);
RBiField cocycle_residual(const RBiField& phi, const RVectorField& x, const RVectorField& y);
RTriField gcybe_invariance_residual(const RBiField& phi, const RVectorField& x);

RBiField w1_general(const RSeries& f);
RBiField w1_canonical(int d, int max_degree = 8);

// Cyclic defect Phi^{ijk}(u,v,w) - Phi^{jki}(v,w,u).
RTriField cyclic_defect(const RTriField& phi);

} // namespace fdiff

#endif
