#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "moyal/spin_ops.hpp"
#include "moyal/wigner.hpp"

namespace moyal {

// Linear map W_rho -> eom_rhs(W_H, W_rho) on the rank <= 1 coefficient space
// of spin-1/2 systems, in canonical basis order.
struct Generator {
  int n_spins = 0;
  Matrix matrix;
};

Generator build_generator(const WignerCoeffs& W_H);

// Dense coefficient vector in canonical order (ranks must be <= 1).
Eigen::VectorXcd to_dense(const WignerCoeffs& w);
WignerCoeffs from_dense(int n_spins, const Eigen::VectorXcd& v);

struct Trajectory {
  std::vector<double> times;
  std::vector<WignerCoeffs> states;
  // Largest coefficient deviation from the matrix oracle, when compared.
  std::optional<std::vector<double>> oracle_deviation;
};

// Exact propagation by the matrix exponential of the generator. Times must
// be strictly increasing.
Trajectory propagate(const Generator& gen, const WignerCoeffs& w0, const std::vector<double>& times);

// Fixed-step RK4 on eom_rhs from 0 to t_end; the last step is shortened.
Trajectory propagate_rk4(const WignerCoeffs& W_H, const WignerCoeffs& w0, double t_end, double dt);

// Same, with a time-dependent Hamiltonian.
Trajectory propagate_rk4(const std::function<WignerCoeffs(double)>& W_H, const WignerCoeffs& w0,
                         double t_end, double dt);

struct OracleReport {
  std::vector<double> times;
  std::vector<double> deviation;
  double max_deviation = 0.0;
};

// Phase-space propagation of W(rho0) under W(H) against exp(-iHt) rho0 exp(iHt).
OracleReport compare_with_oracle(const SpinOperator& H, const SpinOperator& rho0,
                                 const std::vector<double>& times);

// Grid start, start+step, ..., up to stop inclusive (within 1e-9 step).
std::vector<double> time_grid(double start, double stop, double step);

}  // namespace moyal
