#include "moyal/sph_harm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace moyal {

void sph_harm_all(int lmax, double theta, double phi, cplx* out) {
  if (lmax < 0) throw std::invalid_argument("negative rank");
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  // Normalized associated Legendre values p(l, m), m >= 0, phase included.
  std::vector<double> p((lmax + 1) * (lmax + 2) / 2);
  auto at = [](int l, int m) { return l * (l + 1) / 2 + m; };
  p[0] = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int m = 1; m <= lmax; ++m)
    p[at(m, m)] = -std::sqrt((2.0 * m + 1) / (2.0 * m)) * s * p[at(m - 1, m - 1)];
  for (int m = 0; m < lmax; ++m) p[at(m + 1, m)] = std::sqrt(2.0 * m + 3) * x * p[at(m, m)];
  for (int m = 0; m <= lmax; ++m)
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1) / (double(l) * l - double(m) * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1) - double(m) * m) / (4.0 * (l - 1) * (l - 1) - 1));
      p[at(l, m)] = a * (x * p[at(l - 1, m)] - b * p[at(l - 2, m)]);
    }
  for (int l = 0; l <= lmax; ++l) {
    out[l * l + l] = p[at(l, 0)];
    for (int m = 1; m <= l; ++m) {
      const cplx e = std::polar(1.0, m * phi);
      const cplx y = p[at(l, m)] * e;
      out[l * l + l + m] = y;
      out[l * l + l - m] = (m % 2 ? -1.0 : 1.0) * std::conj(y);
    }
  }
}

cplx sph_harm(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw std::invalid_argument("rank/order out of range");
  std::vector<cplx> all((l + 1) * (l + 1));
  sph_harm_all(l, theta, phi, all.data());
  return all[l * l + l + m];
}

}  // namespace moyal
