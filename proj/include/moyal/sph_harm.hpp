#pragma once

#include <complex>
#include <vector>

namespace moyal {

using cplx = std::complex<double>;

// Orthonormal Y_lm with the Condon-Shortley phase.
cplx sph_harm(int l, int m, double theta, double phi);

// Fills out[l*l + l + m] for all l <= lmax. out must hold (lmax+1)^2 values.
void sph_harm_all(int lmax, double theta, double phi, cplx* out);

inline std::vector<cplx> sph_harm_all(int lmax, double theta, double phi) {
  std::vector<cplx> out((lmax + 1) * (lmax + 1));
  sph_harm_all(lmax, theta, phi, out.data());
  return out;
}

}  // namespace moyal
