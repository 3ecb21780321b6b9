#pragma once

#include <Eigen/Dense>
#include <compare>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "moyal/half_int.hpp"

namespace moyal {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Rank j and order m of a tensor operator on one spin.
struct RankOrder {
  int j = 0;
  int m = 0;
  constexpr auto operator<=>(const RankOrder&) const = default;
};

// One (j, m) pair per spin, spin 0 first.
using BasisIndex = std::vector<RankOrder>;

// Position of (j, m) in the per-spin ordering (0,0), (1,-1), (1,0), (1,1), (2,-2), ...
constexpr int sphere_slot(int j, int m) { return j * j + j + m; }
RankOrder slot_rank_order(int slot);

// Operator on n spins of equal spin number J. Rows and columns follow the
// Kronecker order with spin 0 most significant and m = J, J-1, ..., -J.
class SpinOperator {
 public:
  SpinOperator(int n_spins, HalfInt J, Matrix matrix);

  static SpinOperator identity(int n_spins, HalfInt J = kHalf);
  static SpinOperator zero(int n_spins, HalfInt J = kHalf);

  int n_spins() const { return n_spins_; }
  HalfInt spin_J() const { return J_; }
  int local_dim() const { return J_.twice + 1; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }

  SpinOperator adjoint() const;
  cplx trace() const { return matrix_.trace(); }
  double norm() const { return matrix_.norm(); }
  // Hermitian within tol relative to the Frobenius norm.
  bool is_hermitian(double tol = 1e-10) const;

  SpinOperator operator+(const SpinOperator& o) const;
  SpinOperator operator-(const SpinOperator& o) const;
  SpinOperator operator*(const SpinOperator& o) const;
  SpinOperator operator*(cplx s) const;
  friend SpinOperator operator*(cplx s, const SpinOperator& a) { return a * s; }

 private:
  void check_shape(const SpinOperator& o) const;
  int n_spins_;
  HalfInt J_;
  Matrix matrix_;
};

// Ix, Iy, Iz, I+, I- for spin J.
struct SpinMatrices {
  Matrix x, y, z, plus, minus;
};
SpinMatrices spin_matrices(HalfInt J);

// Single-spin tensor operator T_{jm}; throws std::invalid_argument when
// j > 2J or |m| > j.
SpinOperator tensor_op(HalfInt J, int j, int m);

// T00 x ... x T_{jm} (at slot) x ... x T00; unit Frobenius norm.
SpinOperator tensor_op_embedded(int n_spins, HalfInt J, int slot, int j, int m);

// T_{j0 m0} x T_{j1 m1} x ...; orthonormal in the trace inner product.
SpinOperator basis_op(HalfInt J, const BasisIndex& index);

enum class Axis { x, y, z, alpha, beta, plus, minus };

// Product of Cartesian spin operators embedded with identities, e.g.
// {(0, z), (1, z)} -> Iz x Iz. Throws when a slot repeats.
SpinOperator cartesian_op(int n_spins, const std::vector<std::pair<int, Axis>>& factors,
                          HalfInt J = kHalf);

// tr(basis_op(idx)^dagger A) for every basis index, canonical order.
std::vector<cplx> basis_coefficients(const SpinOperator& op);

// Inverse of basis_coefficients.
SpinOperator from_basis_coefficients(int n_spins, HalfInt J, const std::vector<cplx>& coeffs);

// Canonical order: per-spin slots, spin 0 most significant.
BasisIndex basis_index_at(int n_spins, HalfInt J, std::size_t flat);
std::size_t basis_flat_index(HalfInt J, const BasisIndex& index);

// Nonzero expansion coefficients (|c| > 1e-14) keyed by basis index.
std::map<BasisIndex, cplx> decompose(const SpinOperator& op);

// -i [H, rho]
SpinOperator von_neumann_rhs(const SpinOperator& H, const SpinOperator& rho);

// exp(-iHt) rho exp(iHt); H must be hermitian.
SpinOperator evolve_exact(const SpinOperator& H, const SpinOperator& rho, double t);

// Hermitian unitary exp(-i t H) via eigendecomposition.
Matrix unitary_propagator(const Matrix& H, double t);

// Von Neumann entropy (bits) of the reduced state on the listed spins.
double entanglement_entropy(const SpinOperator& rho, const std::vector<int>& keep);

// Reduced operator on the listed spins (ascending order).
SpinOperator partial_trace(const SpinOperator& rho, const std::vector<int>& keep);

}  // namespace moyal
