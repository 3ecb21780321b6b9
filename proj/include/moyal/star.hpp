#pragma once

#include "moyal/kernels.hpp"
#include "moyal/wigner.hpp"

namespace moyal {

// All functions here require spin 1/2 unless stated otherwise.

// Y *~ Y on one sphere; rank up to 2.
WignerCoeffs prestar_single(const WignerCoeffs& f, const WignerCoeffs& g);

// Prestar followed by rank truncation; isomorphic to the operator product.
WignerCoeffs star_single(const WignerCoeffs& f, const WignerCoeffs& g);

// prod_k (sqrt(2 pi) - (i/2) {.,.}^k), expanded over all subsets of spheres.
// Subset terms are summed in ascending bitmask order.
WignerCoeffs prestar_multi(const WignerCoeffs& f, const WignerCoeffs& g, Exec exec = Exec::parallel);

WignerCoeffs star_multi(const WignerCoeffs& f, const WignerCoeffs& g, Exec exec = Exec::parallel);

// f * g - g * f from the odd subset terms only.
WignerCoeffs star_commutator(const WignerCoeffs& f, const WignerCoeffs& g, Exec exec = Exec::parallel);

// Time derivative of W_rho under W_H.
WignerCoeffs eom_rhs(const WignerCoeffs& W_H, const WignerCoeffs& W_rho, Exec exec = Exec::parallel);

// Same derivative for Hamiltonians whose terms couple at most two spins.
// Throws std::invalid_argument("not a natural Hamiltonian") otherwise.
WignerCoeffs eom_rhs_natural(const WignerCoeffs& W_H, const WignerCoeffs& W_rho);

bool is_natural_hamiltonian(const WignerCoeffs& W_H);

// Single spin of any J with a Hamiltonian of rank <= 1.
WignerCoeffs eom_rhs_linear_J(const WignerCoeffs& W_H, const WignerCoeffs& W_A);

// 1 / sqrt(2J(J+1)(2J+1)/3); equals 1 for J = 1/2.
double linear_J_scale(HalfInt J);

}  // namespace moyal
