#ifndef FDIFF_HOMSPACE_HPP
#define FDIFF_HOMSPACE_HPP

#include <functional>
#include <vector>

#include "fdiff/jetgroup.hpp"

namespace fdiff {

// Pi^{ij}(u,v) on 2m variables for a jet R^m -> R^n; dim = n, block_vars = m.
using JetBiField = RBiField;

RBiVector induced_alpha(const RBiField& phi);

// J^{ijk} stored at index (i*n + j)*n + k.
std::vector<RSeries> alpha_jacobi_residual(const RBiVector& alpha);

RBiVector alpha_action_residual(const RBiVector& alpha, const RBiField& phi, const RFormalMap& x);

JetBiField jet_pi(const RFormalMap& f, const RBiField& phi_m, const RBiField& phi_n);

// A candidate bracket on jets, evaluated at a given jet.
using PiLaw = std::function<JetBiField(const RFormalMap&)>;

JetBiField jet_action_residual(const PiLaw& pi, const RBiField& phi_m, const RBiField& phi_n, const RFormalMap& x,
                               const RFormalMap& y, const RFormalMap& f);
JetBiField jet_action_residual(const RBiField& phi_m, const RBiField& phi_n, const RFormalMap& x, const RFormalMap& y,
                               const RFormalMap& f);

struct PiJacobiCertificate {
    RTriField left;  // Phi_n(F(u), F(v), F(w))
    RTriField right; // F_{*u} F_{*v} F_{*w} Phi_m(u, v, w)
    bool both_vanish = false;
    bool certified = false;
    int certified_degree = 0;
};

PiJacobiCertificate pi_jacobi_certificate(const RBiField& phi_m, const RBiField& phi_n, const RFormalMap& f);

} // namespace fdiff

#endif
