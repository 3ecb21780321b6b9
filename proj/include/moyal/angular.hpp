#pragma once

#include <complex>
#include <vector>

#include "moyal/half_int.hpp"

namespace moyal {

using cplx = std::complex<double>;

// sqrt(3 / (8 pi)), the radius of the spin-1/2 sphere.
double sphere_radius();

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>, Condon-Shortley convention.
// Returns 0 for any selection-rule violation.
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

// General Wigner 6-j symbol {a b c; d e f}; 0 when a triad fails.
double wigner_6j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f);

// {j1 j2 L; J J J}.
double wigner_6j_jjj(int j1, int j2, int L, HalfInt J);

// Tensor-operator product coefficient:
// T_{j1 m1} T_{j2 m2} = sum_L Q C^{L M}_{j1 m1 j2 m2} T_{L M}.
double coeff_Q(HalfInt J, int j1, int j2, int L);

// Pointwise product: Y_{j1 m1} Y_{j2 m2} = sum_L Z C^{L M} Y_{L M}.
double coeff_Z(int j1, int j2, int L);

// Poisson bracket on the J=1/2 sphere: {Y_{j1 m1}, Y_{j2 m2}} = sum_L U C^{L M} Y_{L M}.
// Purely imaginary; nonzero only when L - j1 - j2 is odd.
cplx coeff_U(int j1, int j2, int L);

// Prestar coefficient sqrt(2 pi) Z - (i/2) U.
cplx coeff_Lambda(int j1, int j2, int L);

// Immutable cache of the integer-rank coefficients. Lookups outside the
// cached range fall back to direct evaluation.
class AngularTables {
 public:
  explicit AngularTables(int max_rank);

  int max_rank() const { return max_rank_; }

  // Integer-rank CG <j1 m1; j2 m2 | L, m1+m2>.
  double cg(int j1, int m1, int j2, int m2, int L) const;
  double Z(int j1, int j2, int L) const;
  cplx U(int j1, int j2, int L) const;
  cplx Lambda(int j1, int j2, int L) const;
  // Q for 2J <= kMaxTwiceJ.
  double Q(HalfInt J, int j1, int j2, int L) const;

  static constexpr int kMaxTwiceJ = 5;

 private:
  int max_rank_;
  int lmax_;  // 2 * max_rank
  std::vector<double> cg_;
  std::vector<double> z_;
  std::vector<double> u_im_;
  std::vector<double> q_;

  std::size_t cg_index(int j1, int m1, int j2, int m2, int L) const;
  std::size_t triple_index(int j1, int j2, int L) const;
  bool in_range(int j1, int j2) const { return j1 <= max_rank_ && j2 <= max_rank_; }
};

// Shared tables covering ranks up to 6.
const AngularTables& angular_tables();

}  // namespace moyal
