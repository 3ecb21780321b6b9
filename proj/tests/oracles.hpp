#pragma once

// Reference computations that avoid the library's Racah formulas and
// coefficient algebra: harmonics from std::sph_legendre, Clebsch-Gordan
// values from lowering-operator construction, tensor operators from
// commutators, and brute-force quadrature.

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

cplx Y(int l, int m, double theta, double phi);

// d/dtheta of Y_lm.
cplx dY_dtheta(int l, int m, double theta, double phi);

// <j1 m1; j2 m2 | J M>, all arguments twice their value.
double cg(int tj1, int tm1, int tj2, int tm2, int tJ, int tM);

// T_{kq} for spin 2J = tJ, built from T_kk ~ (-J+)^k and lowering.
Mat tensor_op(int tJ, int k, int q);

// Coefficient of T_LM in T_{j1 m1} T_{j2 m2}, divided by the CG factor.
double Q(int tJ, int j1, int j2, int L);

// Projection int Y*_LM f over the sphere with a fine product rule.
cplx project(const std::function<cplx(double, double)>& f, int L, int M, int n_theta = 48);

// {Y_{l1 m1}, Y_{l2 m2}} at a point, on the spin-1/2 sphere.
cplx bracket_point(int l1, int m1, int l2, int m2, double theta, double phi);

}  // namespace oracle
