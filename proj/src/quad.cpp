#include "moyal/quad.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "moyal/random.hpp"
#include "moyal/sph_harm.hpp"

namespace moyal {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("need at least one node");
  GaussLegendre g{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.x[i] = x;
    g.w[i] = w;
    g.x[n - 1 - i] = -x;
    g.w[n - 1 - i] = w;
  }
  return g;
}

SphereGrid::SphereGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("grid needs at least one node per axis");
  const GaussLegendre gl = gauss_legendre(n_theta);
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) {
      nodes_.push_back({std::acos(gl.x[i]), j * dphi});
      weights_.push_back(gl.w[i] * dphi);
    }
}

SphereGrid SphereGrid::for_rank(int L) {
  if (L < 0) throw std::invalid_argument("negative rank");
  return SphereGrid(L / 2 + 1, L + 1);
}

std::vector<cplx> harmonic_table(const SphereGrid& grid, int lmax) {
  const std::size_t D = std::size_t(lmax + 1) * (lmax + 1);
  std::vector<cplx> t(grid.size() * D);
  for (std::size_t i = 0; i < grid.size(); ++i)
    sph_harm_all(lmax, grid.nodes()[i].theta, grid.nodes()[i].phi, t.data() + i * D);
  return t;
}

std::vector<cplx> sample_grid(const WignerCoeffs& w, const SphereGrid& grid, Exec exec) {
  const int r = w.present_rank();
  return evaluate_tensor_grid(w, harmonic_table(grid, r), grid.size(), std::size_t(r + 1) * (r + 1), exec);
}

cplx integrate_samples(const std::vector<cplx>& samples, const SphereGrid& grid, int n_spheres, Exec exec) {
  return weighted_tensor_sum(samples, grid.weights(), n_spheres, exec);
}

cplx integrate(const WignerCoeffs& w, const SphereGrid& grid, Exec exec) {
  if (w.present_rank() > grid.exact_rank()) throw std::invalid_argument("insufficient grid rank");
  return integrate_samples(sample_grid(w, grid, exec), grid, w.n_spins(), exec);
}

WignerCoeffs project_samples(const std::vector<cplx>& samples, const SphereGrid& grid, HalfInt J, int lmax) {
  if (samples.size() != grid.size()) throw std::invalid_argument("sample count does not match the grid");
  const std::size_t D = std::size_t(lmax + 1) * (lmax + 1);
  const std::vector<cplx> y = harmonic_table(grid, lmax);
  std::vector<CoeffEntry> e;
  for (std::size_t s = 0; s < D; ++s) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) acc += grid.weights()[i] * std::conj(y[i * D + s]) * samples[i];
    const RankOrder jm = slot_rank_order(static_cast<int>(s));
    e.push_back({pack_key({jm}), acc});
  }
  return WignerCoeffs(1, J, lmax, std::move(e));
}

Matrix stratonovich_kernel(HalfInt J, SphereAngle at) {
  const int lmax = J.twice;
  const std::vector<cplx> y = sph_harm_all(lmax, at.theta, at.phi);
  Matrix d = Matrix::Zero(J.twice + 1, J.twice + 1);
  for (int j = 0; j <= lmax; ++j)
    for (int m = -j; m <= j; ++m) d += std::conj(y[sphere_slot(j, m)]) * tensor_op(J, j, m).matrix();
  return d;
}

SpinOperator inverse_wigner_by_quadrature(const std::vector<cplx>& samples, const SphereGrid& grid, HalfInt J) {
  if (grid.exact_rank() < 2 * J.twice) throw std::invalid_argument("insufficient grid rank");
  if (samples.size() != grid.size()) throw std::invalid_argument("sample count does not match the grid");
  Matrix a = Matrix::Zero(J.twice + 1, J.twice + 1);
  for (std::size_t i = 0; i < grid.size(); ++i)
    a += grid.weights()[i] * samples[i] * stratonovich_kernel(J, grid.nodes()[i]);
  return SpinOperator(1, J, a);
}

WignerCoeffs integral_star(const std::vector<cplx>& samples_a, const std::vector<cplx>& samples_b,
                           const SphereGrid& grid, HalfInt J) {
  if (grid.exact_rank() < 2 * J.twice) throw std::invalid_argument("insufficient grid rank");
  const WignerCoeffs a = project_samples(samples_a, grid, J, J.twice);
  const WignerCoeffs b = project_samples(samples_b, grid, J, J.twice);
  const SphereRule rule = SphereRule::operator_product;
  return combine(a, b, std::span(&rule, 1), 1.0, Exec::serial).with_max_rank(J.twice);
}

double norm_bound(HalfInt J) { return (J.twice + 1) / std::sqrt(4.0 * std::numbers::pi); }

Eigen::Matrix3d rotation_matrix(const Eigen::Vector3d& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

Matrix spin_rotation(HalfInt J, const Eigen::Vector3d& axis, double angle) {
  const SpinMatrices s = spin_matrices(J);
  const Eigen::Vector3d n = axis.normalized();
  const Matrix gen = n.x() * s.x + n.y() * s.y + n.z() * s.z;
  return unitary_propagator(gen, angle);
}

SphereAngle rotate_back(const Eigen::Matrix3d& R, SphereAngle at) {
  const Eigen::Vector3d r(std::sin(at.theta) * std::cos(at.phi), std::sin(at.theta) * std::sin(at.phi),
                          std::cos(at.theta));
  const Eigen::Vector3d q = R.transpose() * r;
  return {std::acos(std::clamp(q.z(), -1.0, 1.0)), std::atan2(q.y(), q.x())};
}

bool StratonovichReport::passed() const {
  for (const auto& p : postulates)
    if (!p.passed) return false;
  return !postulates.empty();
}

StratonovichReport validate_stratonovich(int n_spins, int trials, std::uint64_t seed, HalfInt J) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const SphereGrid grid = SphereGrid::for_rank(2 * J.twice);
  const WignerCoeffs w_one = wigner_transform(SpinOperator::identity(n_spins, J));
  const std::vector<cplx> one_samples = sample_grid(w_one, grid);

  double lin = 0.0, real = 0.0, norm = 0.0, trac = 0.0, cov = 0.0;
  for (int t = 0; t < trials; ++t) {
    const SpinOperator A = random_operator(n_spins, J, rng);
    const SpinOperator B = random_operator(n_spins, J, rng);
    const cplx a(u(rng), u(rng)), b(u(rng), u(rng));
    const WignerCoeffs wa = wigner_transform(A), wb = wigner_transform(B);
    lin = std::max(lin, max_abs_diff(wigner_transform(A * a + B * b), wa * a + wb * b));

    const WignerCoeffs wh = wigner_transform(random_hermitian(n_spins, J, rng));
    for (int p = 0; p < 4; ++p) real = std::max(real, std::abs(evaluate(wh, random_angles(n_spins, rng)).imag()));

    const std::vector<cplx> sa = sample_grid(wa, grid), sb = sample_grid(wb, grid);
    std::vector<cplx> prod(sa.size()), prod_one(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) {
      prod[i] = std::conj(sb[i]) * sa[i];
      prod_one[i] = one_samples[i] * sa[i];
    }
    norm = std::max(norm, std::abs(A.trace() - integrate_samples(prod_one, grid, n_spins)));
    trac = std::max(trac, std::abs((B.matrix().adjoint() * A.matrix()).trace() - integrate_samples(prod, grid, n_spins)));

    Matrix U;
    std::vector<Eigen::Matrix3d> R;
    {
      std::vector<Eigen::Vector3d> axes;
      std::vector<double> angles;
      for (int k = 0; k < n_spins; ++k) {
        axes.push_back(random_axis(rng));
        angles.push_back(2.0 * std::numbers::pi * u(rng));
      }
      U = spin_rotation(J, axes[0], angles[0]);
      R.push_back(rotation_matrix(axes[0], angles[0]));
      for (int k = 1; k < n_spins; ++k) {
        const Matrix Uk = spin_rotation(J, axes[k], angles[k]);
        Matrix big(U.rows() * Uk.rows(), U.cols() * Uk.cols());
        for (Eigen::Index i = 0; i < U.rows(); ++i)
          for (Eigen::Index j = 0; j < U.cols(); ++j)
            big.block(i * Uk.rows(), j * Uk.cols(), Uk.rows(), Uk.cols()) = U(i, j) * Uk;
        U = big;
        R.push_back(rotation_matrix(axes[k], angles[k]));
      }
    }
    const WignerCoeffs wr = wigner_transform(SpinOperator(n_spins, J, U * A.matrix() * U.adjoint()));
    for (int p = 0; p < 3; ++p) {
      const SphereAngles at = random_angles(n_spins, rng);
      SphereAngles back(n_spins);
      for (int k = 0; k < n_spins; ++k) back[k] = rotate_back(R[k], at[k]);
      cov = std::max(cov, std::abs(evaluate(wr, at) - evaluate(wa, back)));
    }
  }

  StratonovichReport rep{n_spins, J, trials, seed, {}};
  auto add = [&](const char* name, double dev, double thr) { rep.postulates.push_back({name, dev, thr, dev < thr}); };
  add("linearity", lin, 1e-12);
  add("reality", real, 1e-11);
  add("normalization", norm, 1e-8);
  add("traciality", trac, 1e-8);
  add("covariance", cov, 1e-9);
  return rep;
}

}  // namespace moyal
