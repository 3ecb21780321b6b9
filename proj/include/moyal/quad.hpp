#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "moyal/kernels.hpp"
#include "moyal/spin_ops.hpp"
#include "moyal/wigner.hpp"

namespace moyal {

struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};

// n-point rule on [-1, 1], exact for polynomials of degree 2n-1.
GaussLegendre gauss_legendre(int n);

// Gauss-Legendre in cos(theta) times a uniform phi rule. Weights sum to 4 pi.
class SphereGrid {
 public:
  SphereGrid(int n_theta, int n_phi);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<SphereAngle>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  // Largest L such that every Y_LM integrates exactly.
  int exact_rank() const { return std::min(2 * n_theta_ - 1, n_phi_ - 1); }

  // Smallest grid that integrates all ranks up to L exactly.
  static SphereGrid for_rank(int L);

 private:
  int n_theta_, n_phi_;
  std::vector<SphereAngle> nodes_;
  std::vector<double> weights_;
};

// Y_slot at every node: table[node * (lmax+1)^2 + slot].
std::vector<cplx> harmonic_table(const SphereGrid& grid, int lmax);

// Samples on the n-fold tensor grid, sphere 0 most significant.
std::vector<cplx> sample_grid(const WignerCoeffs& w, const SphereGrid& grid, Exec exec = Exec::parallel);

cplx integrate_samples(const std::vector<cplx>& samples, const SphereGrid& grid, int n_spheres,
                       Exec exec = Exec::parallel);

// Quadrature of w over all its spheres. Throws std::invalid_argument
// ("insufficient grid rank") when the grid cannot integrate w exactly.
cplx integrate(const WignerCoeffs& w, const SphereGrid& grid, Exec exec = Exec::parallel);

// Coefficients int Y*_{jm} F for j <= lmax from single-sphere samples.
WignerCoeffs project_samples(const std::vector<cplx>& samples, const SphereGrid& grid, HalfInt J, int lmax);

// Kernel Delta(Omega) = sum_jm Y*_jm(Omega) T_jm, so that W_A = tr(Delta A).
Matrix stratonovich_kernel(HalfInt J, SphereAngle at);

// A = int Delta W_A over one sphere. Requires exact_rank >= 4J.
SpinOperator inverse_wigner_by_quadrature(const std::vector<cplx>& samples, const SphereGrid& grid, HalfInt J);

// Trikernel star product of two single-sphere functions given by samples.
// Valid for any J; requires exact_rank >= 4J.
WignerCoeffs integral_star(const std::vector<cplx>& samples_a, const std::vector<cplx>& samples_b,
                           const SphereGrid& grid, HalfInt J);

// (2J+1)/sqrt(4 pi), the bound on |W_A| for unit-norm A.
double norm_bound(HalfInt J);

// Active rotation by angle about a unit axis.
Eigen::Matrix3d rotation_matrix(const Eigen::Vector3d& axis, double angle);

// exp(-i angle axis.I) for spin J.
Matrix spin_rotation(HalfInt J, const Eigen::Vector3d& axis, double angle);

// Angles of R^T r(at).
SphereAngle rotate_back(const Eigen::Matrix3d& R, SphereAngle at);

struct PostulateResult {
  std::string name;
  double max_deviation = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct StratonovichReport {
  int n_spins = 0;
  HalfInt J = kHalf;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<PostulateResult> postulates;
  bool passed() const;
};

// Linearity, reality, normalization, traciality and covariance on random
// operators. Deterministic for a given seed.
StratonovichReport validate_stratonovich(int n_spins, int trials, std::uint64_t seed, HalfInt J = kHalf);

}  // namespace moyal
