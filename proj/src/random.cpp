#include "moyal/random.hpp"

#include <cmath>
#include <numbers>

namespace moyal {

SpinOperator random_operator(int n_spins, HalfInt J, Rng& rng) {
  SpinOperator z = SpinOperator::zero(n_spins, J);
  std::normal_distribution<double> g;
  Matrix m(z.dim(), z.dim());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = cplx(g(rng), g(rng));
  m /= m.norm();
  return SpinOperator(n_spins, J, m);
}

SpinOperator random_hermitian(int n_spins, HalfInt J, Rng& rng) {
  const SpinOperator a = random_operator(n_spins, J, rng);
  Matrix h = a.matrix() + a.matrix().adjoint();
  h /= h.norm();
  return SpinOperator(n_spins, J, h);
}

SphereAngles random_angles(int n_spheres, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SphereAngles a(n_spheres);
  for (auto& x : a) {
    x.theta = std::acos(1.0 - 2.0 * u(rng));
    x.phi = 2.0 * std::numbers::pi * u(rng);
  }
  return a;
}

Eigen::Vector3d random_axis(Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v(g(rng), g(rng), g(rng));
  return v.normalized();
}

}  // namespace moyal
