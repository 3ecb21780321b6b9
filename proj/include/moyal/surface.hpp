#pragma once

#include <string>
#include <vector>

#include "moyal/io.hpp"
#include "moyal/wigner.hpp"

namespace moyal {

// scale * prod_k factors[k](Omega_k); every factor has unit coefficient norm
// and its first nonzero coefficient real and positive.
struct ProductTerm {
  cplx scale;
  std::vector<WignerCoeffs> factors;

  // |scale|^(1/N) factors[k], carrying the phase of scale on factor 0.
  WignerCoeffs display_factor(int k) const;
};

// Exact sum of product terms, grouped along the last sphere and recursively
// on the rest. At most 4^(N-1) terms for rank <= 1.
std::vector<ProductTerm> props_decompose(const WignerCoeffs& w);

// Inverse of props_decompose.
WignerCoeffs expand_terms(const std::vector<ProductTerm>& terms);

enum class SurfaceMode { fixed, marginal };

// Values on theta_i = pi i/(res-1), phi_j = 2 pi j/res; index i * res + j.
struct SampledSurface {
  int resolution = 0;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<cplx> values;
};

// Function of one sphere, with the others either held at fixed angles
// (one pair per other sphere, in order) or integrated out.
WignerCoeffs restrict_to_sphere(const WignerCoeffs& w, int slot, const SphereAngles& others, SurfaceMode mode);

SampledSurface sample_surface(const WignerCoeffs& w, int slot, int resolution,
                              const SphereAngles& others = {}, SurfaceMode mode = SurfaceMode::marginal);

// "theta,phi,re,im" rows, theta outer.
std::string surface_csv(const SampledSurface& s);
json surface_json(const SampledSurface& s);
// Vertices at radius |W| with phase-derived colors, triangulated lattice.
std::string surface_obj(const SampledSurface& s);

json props_to_json(const std::vector<ProductTerm>& terms);

}  // namespace moyal
