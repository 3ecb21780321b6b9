#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "moyal/half_int.hpp"
#include "moyal/spin_ops.hpp"

namespace moyal {

using cplx = std::complex<double>;

// Packed basis index: one byte per sphere holding j*j + j + m, sphere 0 in
// the most significant used byte. Supports up to 8 spheres and rank 15.
using CoeffKey = std::uint64_t;

inline constexpr int kMaxSpheres = 8;
inline constexpr int kMaxKeyRank = 15;
inline constexpr double kDropTolerance = 1e-14;

CoeffKey pack_key(const BasisIndex& index);
BasisIndex unpack_key(CoeffKey key, int n_spheres);
inline int key_slot(CoeffKey key, int sphere, int n_spheres) {
  return static_cast<int>((key >> (8 * (n_spheres - 1 - sphere))) & 0xffu);
}

struct CoeffEntry {
  CoeffKey key;
  cplx value;
};

// Expansion of a phase-space function on n spheres in products of
// spherical harmonics, sum_idx c_idx prod_k Y_{j_k m_k}(theta_k, phi_k).
// Entries are sorted by key; coefficients with |c| <= 1e-14 are dropped.
class WignerCoeffs {
 public:
  WignerCoeffs(int n_spins, HalfInt J, int max_rank);
  WignerCoeffs(int n_spins, HalfInt J, int max_rank, std::vector<CoeffEntry> entries);

  static WignerCoeffs from_map(int n_spins, HalfInt J, int max_rank,
                               const std::map<BasisIndex, cplx>& coeffs);
  // c * Y_idx
  static WignerCoeffs basis(int n_spins, HalfInt J, const BasisIndex& index, cplx c = 1.0);

  int n_spins() const { return n_spins_; }
  HalfInt spin_J() const { return J_; }
  // Upper bound on the rank of every stored entry, per sphere.
  int max_rank() const { return max_rank_; }
  // Largest rank actually present on any sphere.
  int present_rank() const;

  std::span<const CoeffEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  cplx at(const BasisIndex& index) const;
  cplx at_key(CoeffKey key) const;

  // Same function with a different rank bound (must cover present_rank()).
  WignerCoeffs with_max_rank(int max_rank) const;

  WignerCoeffs operator+(const WignerCoeffs& o) const;
  WignerCoeffs operator-(const WignerCoeffs& o) const;
  WignerCoeffs operator-() const;
  WignerCoeffs operator*(cplx s) const;
  friend WignerCoeffs operator*(cplx s, const WignerCoeffs& w) { return w * s; }

  // Coefficients of the complex-conjugate function.
  WignerCoeffs conj() const;

  void check_same_shape(const WignerCoeffs& o) const;

 private:
  int n_spins_;
  HalfInt J_;
  int max_rank_;
  std::vector<CoeffEntry> entries_;
};

struct SphereAngle {
  double theta = 0.0;
  double phi = 0.0;
};
using SphereAngles = std::vector<SphereAngle>;

// Coefficients tr(basis_op(idx)^dagger A); rank bound 2J.
WignerCoeffs wigner_transform(const SpinOperator& op);

// Throws std::invalid_argument("unrepresentable rank") when a rank exceeds 2J.
SpinOperator inverse_wigner(const WignerCoeffs& w);

cplx evaluate(const WignerCoeffs& w, const SphereAngles& angles);

// Poisson bracket on one sphere; pointwise product on all others.
WignerCoeffs poisson_bracket(const WignerCoeffs& f, const WignerCoeffs& g, int slot);

WignerCoeffs pointwise_product(const WignerCoeffs& f, const WignerCoeffs& g);

// Drops every term with a rank above max_j on any sphere.
WignerCoeffs project_rank(const WignerCoeffs& w, int max_j);

// Largest coefficient difference.
double max_abs_diff(const WignerCoeffs& a, const WignerCoeffs& b);
double max_abs(const WignerCoeffs& a);

// integral of conj(f) g over all spheres.
cplx inner_product(const WignerCoeffs& f, const WignerCoeffs& g);

// integral of f g over all spheres, no conjugation.
cplx bilinear_integral(const WignerCoeffs& f, const WignerCoeffs& g);

// Function depending only on one sphere, lifted to n spheres (times 1 elsewhere).
WignerCoeffs lift(const WignerCoeffs& single, int n_spins, int slot);

}  // namespace moyal
