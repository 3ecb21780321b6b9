#include "moyal/evolve.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <stdexcept>

#include "moyal/star.hpp"

namespace moyal {
namespace {

std::size_t space_dim(int n) { return std::size_t{1} << (2 * n); }

void check_times(const std::vector<double>& times) {
  if (times.empty()) throw std::invalid_argument("empty time list");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("times must be strictly increasing");
}

}  // namespace

Eigen::VectorXcd to_dense(const WignerCoeffs& w) {
  if (w.spin_J() != kHalf) throw std::invalid_argument("wrong system shape: spin 1/2 required");
  if (w.present_rank() > 1) throw std::invalid_argument("unrepresentable rank");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space_dim(w.n_spins())));
  for (const auto& e : w.entries()) {
    const BasisIndex idx = unpack_key(e.key, w.n_spins());
    v(static_cast<Eigen::Index>(basis_flat_index(kHalf, idx))) = e.value;
  }
  return v;
}

WignerCoeffs from_dense(int n_spins, const Eigen::VectorXcd& v) {
  if (static_cast<std::size_t>(v.size()) != space_dim(n_spins))
    throw std::invalid_argument("vector length does not match system shape");
  std::vector<CoeffEntry> e;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > kDropTolerance) e.push_back({pack_key(basis_index_at(n_spins, kHalf, i)), v(i)});
  return WignerCoeffs(n_spins, kHalf, 1, std::move(e));
}

Generator build_generator(const WignerCoeffs& W_H) {
  if (W_H.spin_J() != kHalf) throw std::invalid_argument("wrong system shape: spin 1/2 required");
  const int n = W_H.n_spins();
  const auto dim = static_cast<Eigen::Index>(space_dim(n));
  Generator g{n, Matrix::Zero(dim, dim)};
#pragma omp parallel for schedule(dynamic, 1)
  for (Eigen::Index c = 0; c < dim; ++c) {
    const WignerCoeffs unit = WignerCoeffs::basis(n, kHalf, basis_index_at(n, kHalf, c)).with_max_rank(1);
    g.matrix.col(c) = to_dense(eom_rhs(W_H, unit, Exec::serial));
  }
  return g;
}

Trajectory propagate(const Generator& gen, const WignerCoeffs& w0, const std::vector<double>& times) {
  check_times(times);
  if (w0.n_spins() != gen.n_spins) throw std::invalid_argument("system shape mismatch");
  const Eigen::VectorXcd v0 = to_dense(w0);
  const Matrix& G = gen.matrix;
  Trajectory tr;
  tr.times = times;
  const double scale = std::max(G.norm(), 1e-300);
  if ((G + G.adjoint()).norm() <= 1e-10 * scale) {
    // iG is hermitian: G = -i V diag(lambda) V^dagger.
    Eigen::SelfAdjointEigenSolver<Matrix> es(cplx(0.0, 1.0) * G);
    const Matrix& V = es.eigenvectors();
    const Eigen::VectorXcd c0 = V.adjoint() * v0;
    for (double t : times) {
      const Eigen::VectorXcd ph = (es.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp().matrix();
      tr.states.push_back(from_dense(gen.n_spins, V * ph.cwiseProduct(c0)));
    }
  } else {
    for (double t : times) {
      const Matrix E = (G * t).exp();
      tr.states.push_back(from_dense(gen.n_spins, E * v0));
    }
  }
  return tr;
}

Trajectory propagate_rk4(const std::function<WignerCoeffs(double)>& W_H, const WignerCoeffs& w0, double t_end,
                         double dt) {
  if (!(dt > 0.0) || t_end < 0.0) throw std::invalid_argument("invalid step or end time");
  Trajectory tr;
  WignerCoeffs w = w0;
  double t = 0.0;
  tr.times.push_back(t);
  tr.states.push_back(w);
  while (t < t_end - 1e-12 * std::max(1.0, t_end)) {
    const double h = std::min(dt, t_end - t);
    const WignerCoeffs k1 = eom_rhs(W_H(t), w);
    const WignerCoeffs k2 = eom_rhs(W_H(t + h / 2), w + k1 * (h / 2));
    const WignerCoeffs k3 = eom_rhs(W_H(t + h / 2), w + k2 * (h / 2));
    const WignerCoeffs k4 = eom_rhs(W_H(t + h), w + k3 * h);
    w = w + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    t += h;
    tr.times.push_back(t);
    tr.states.push_back(w);
  }
  return tr;
}

Trajectory propagate_rk4(const WignerCoeffs& W_H, const WignerCoeffs& w0, double t_end, double dt) {
  return propagate_rk4([&](double) { return W_H; }, w0, t_end, dt);
}

OracleReport compare_with_oracle(const SpinOperator& H, const SpinOperator& rho0, const std::vector<double>& times) {
  if (H.spin_J() != kHalf || rho0.spin_J() != kHalf || H.n_spins() != rho0.n_spins())
    throw std::invalid_argument("wrong system shape: matching spin-1/2 operators required");
  const Trajectory tr = propagate(build_generator(wigner_transform(H)), wigner_transform(rho0), times);
  OracleReport rep;
  rep.times = times;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const WignerCoeffs exact = wigner_transform(evolve_exact(H, rho0, times[i]));
    rep.deviation.push_back(max_abs_diff(tr.states[i], exact));
    rep.max_deviation = std::max(rep.max_deviation, rep.deviation.back());
  }
  return rep;
}

std::vector<double> time_grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw std::invalid_argument("invalid time grid");
  const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> t;
  t.reserve(n + 1);
  for (long long i = 0; i <= n; ++i) t.push_back(start + static_cast<double>(i) * step);
  return t;
}

}  // namespace moyal
