#ifndef FDIFF_SAMPLING_HPP
#define FDIFF_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "fdiff/bialgebra.hpp"
#include "fdiff/jetgroup.hpp"

namespace fdiff {

using Rng = std::mt19937_64;

struct SampleShape {
    int min_degree = 0;
    int max_degree = 4;
    int coeff_bound = 3;
    double density = 0.5;
};

// Polynomial with small integer coefficients in the degree window of `shape`,
// stored at truncation `tr`.
RSeries random_series(const Truncation& tr, Rng& rng, const SampleShape& shape);

// Element of G_0n: X(0) = 0, integer linear part with det = +-1.
RFormalMap random_group_element(int n, int max_degree, Rng& rng, int top_degree = 3);

// Element of G_n: as above plus a nonzero constant shift.
RFormalMap random_shifted_element(int n, int max_degree, Rng& rng, int top_degree = 3);

RVectorField random_vector_field(int n, int max_degree, Rng& rng, const SampleShape& shape);

// phi^{ij}(u,v) = psi^{ij}(u,v) - psi^{ji}(v,u) for a random psi.
RBiField random_skew_bifield(int n, int max_degree, Rng& rng, const SampleShape& shape);

// Seeded Theta/Psi pair obtained from random unit generators.
ThetaPsiPair random_theta_psi(int n, int max_degree, Rng& rng);

} // namespace fdiff

#endif
