#include "moyal/spin_ops.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "moyal/angular.hpp"

namespace moyal {
namespace {

Eigen::Index ipow(Eigen::Index b, int e) {
  Eigen::Index r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_spin(HalfInt J) {
  if (J.twice < 1) throw std::invalid_argument("spin number must be positive");
}

// Per-spin basis as rows of an (d^2 x d^2) matrix: row s holds T_s flattened
// as r * d + c.
Matrix flattened_basis(HalfInt J) {
  const int d = J.twice + 1;
  const int D = d * d;
  Matrix B(D, D);
  for (int s = 0; s < D; ++s) {
    const RankOrder jm = slot_rank_order(s);
    const Matrix T = tensor_op(J, jm.j, jm.m).matrix();
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) B(s, r * d + c) = T(r, c);
  }
  return B;
}

// Applies M (D x D) along each interleaved axis of a length D^n tensor.
std::vector<cplx> contract_axes(std::vector<cplx> data, int n, const Matrix& M) {
  const Eigen::Index D = M.rows();
  std::vector<cplx> out(data.size());
  for (int k = 0; k < n; ++k) {
    const Eigen::Index left = ipow(D, k);
    const Eigen::Index right = ipow(D, n - 1 - k);
    for (Eigen::Index a = 0; a < left; ++a)
      for (Eigen::Index s = 0; s < D; ++s)
        for (Eigen::Index b = 0; b < right; ++b) {
          cplx acc = 0.0;
          for (Eigen::Index p = 0; p < D; ++p) acc += M(s, p) * data[(a * D + p) * right + b];
          out[(a * D + s) * right + b] = acc;
        }
    std::swap(data, out);
  }
  return data;
}

// Digits of x in base d, most significant first.
void digits(Eigen::Index x, int d, int n, int* out) {
  for (int k = n - 1; k >= 0; --k) {
    out[k] = static_cast<int>(x % d);
    x /= d;
  }
}

}  // namespace

RankOrder slot_rank_order(int slot) {
  int j = static_cast<int>(std::sqrt(static_cast<double>(slot)));
  while (j * j > slot) --j;
  while ((j + 1) * (j + 1) <= slot) ++j;
  return {j, slot - j * j - j};
}

SpinOperator::SpinOperator(int n_spins, HalfInt J, Matrix matrix)
    : n_spins_(n_spins), J_(J), matrix_(std::move(matrix)) {
  check_spin(J);
  if (n_spins < 1) throw std::invalid_argument("need at least one spin");
  const Eigen::Index d = ipow(J.twice + 1, n_spins);
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw std::invalid_argument("matrix dimension does not match system shape");
}

SpinOperator SpinOperator::identity(int n_spins, HalfInt J) {
  const Eigen::Index d = ipow(J.twice + 1, n_spins);
  return SpinOperator(n_spins, J, Matrix::Identity(d, d));
}

SpinOperator SpinOperator::zero(int n_spins, HalfInt J) {
  const Eigen::Index d = ipow(J.twice + 1, n_spins);
  return SpinOperator(n_spins, J, Matrix::Zero(d, d));
}

SpinOperator SpinOperator::adjoint() const {
  return SpinOperator(n_spins_, J_, matrix_.adjoint());
}

bool SpinOperator::is_hermitian(double tol) const {
  const double n = matrix_.norm();
  return (matrix_ - matrix_.adjoint()).norm() <= tol * std::max(n, 1e-300) || n == 0.0;
}

void SpinOperator::check_shape(const SpinOperator& o) const {
  if (o.n_spins_ != n_spins_ || o.J_ != J_) throw std::invalid_argument("system shape mismatch");
}

SpinOperator SpinOperator::operator+(const SpinOperator& o) const {
  check_shape(o);
  return SpinOperator(n_spins_, J_, matrix_ + o.matrix_);
}

SpinOperator SpinOperator::operator-(const SpinOperator& o) const {
  check_shape(o);
  return SpinOperator(n_spins_, J_, matrix_ - o.matrix_);
}

SpinOperator SpinOperator::operator*(const SpinOperator& o) const {
  check_shape(o);
  return SpinOperator(n_spins_, J_, matrix_ * o.matrix_);
}

SpinOperator SpinOperator::operator*(cplx s) const {
  return SpinOperator(n_spins_, J_, matrix_ * s);
}

SpinMatrices spin_matrices(HalfInt J) {
  check_spin(J);
  const int d = J.twice + 1;
  SpinMatrices s;
  s.z = Matrix::Zero(d, d);
  s.plus = Matrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const double m = J.value() - a;
    s.z(a, a) = m;
    if (a > 0) s.plus(a - 1, a) = std::sqrt(J.value() * (J.value() + 1) - m * (m + 1));
  }
  s.minus = s.plus.adjoint();
  s.x = 0.5 * (s.plus + s.minus);
  s.y = cplx(0.0, -0.5) * (s.plus - s.minus);
  return s;
}

SpinOperator tensor_op(HalfInt J, int j, int m) {
  check_spin(J);
  if (j < 0 || j > J.twice || std::abs(m) > j) throw std::invalid_argument("rank/order out of range");
  const int d = J.twice + 1;
  Matrix T = Matrix::Zero(d, d);
  const double pre = std::sqrt((2.0 * j + 1) / (J.twice + 1));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const int tm1 = J.twice - 2 * a;
      const int tm2 = J.twice - 2 * b;
      T(a, b) = pre * clebsch_gordan(J, HalfInt{tm2}, HalfInt::integer(j), HalfInt::integer(m), J,
                                     HalfInt{tm1});
    }
  return SpinOperator(1, J, T);
}

SpinOperator tensor_op_embedded(int n_spins, HalfInt J, int slot, int j, int m) {
  if (slot < 0 || slot >= n_spins) throw std::invalid_argument("slot out of range");
  BasisIndex idx(n_spins, RankOrder{0, 0});
  idx[slot] = {j, m};
  return basis_op(J, idx);
}

SpinOperator basis_op(HalfInt J, const BasisIndex& index) {
  if (index.empty()) throw std::invalid_argument("empty basis index");
  Matrix out = tensor_op(J, index[0].j, index[0].m).matrix();
  for (std::size_t k = 1; k < index.size(); ++k)
    out = kron(out, tensor_op(J, index[k].j, index[k].m).matrix());
  return SpinOperator(static_cast<int>(index.size()), J, out);
}

SpinOperator cartesian_op(int n_spins, const std::vector<std::pair<int, Axis>>& factors,
                          HalfInt J) {
  check_spin(J);
  const SpinMatrices s = spin_matrices(J);
  const int d = J.twice + 1;
  std::vector<Matrix> local(n_spins, Matrix::Identity(d, d));
  std::set<int> seen;
  for (const auto& [slot, axis] : factors) {
    if (slot < 0 || slot >= n_spins) throw std::invalid_argument("slot out of range");
    if (!seen.insert(slot).second) throw std::invalid_argument("repeated slot in product");
    const Matrix one = Matrix::Identity(d, d);
    switch (axis) {
      case Axis::x: local[slot] = s.x; break;
      case Axis::y: local[slot] = s.y; break;
      case Axis::z: local[slot] = s.z; break;
      case Axis::plus: local[slot] = s.plus; break;
      case Axis::minus: local[slot] = s.minus; break;
      case Axis::alpha:
      case Axis::beta:
        if (J.twice != 1) throw std::invalid_argument("polarization projectors need spin 1/2");
        local[slot] = axis == Axis::alpha ? Matrix(0.5 * one + s.z) : Matrix(0.5 * one - s.z);
        break;
    }
  }
  Matrix out = local[0];
  for (int k = 1; k < n_spins; ++k) out = kron(out, local[k]);
  return SpinOperator(n_spins, J, out);
}

std::vector<cplx> basis_coefficients(const SpinOperator& op) {
  const int n = op.n_spins();
  const int d = op.local_dim();
  const Eigen::Index D = Eigen::Index(d) * d;
  const Eigen::Index dim = op.dim();
  std::vector<cplx> data(static_cast<std::size_t>(ipow(D, n)));
  std::vector<int> rd(n), cd(n);
  for (Eigen::Index r = 0; r < dim; ++r) {
    digits(r, d, n, rd.data());
    for (Eigen::Index c = 0; c < dim; ++c) {
      digits(c, d, n, cd.data());
      Eigen::Index idx = 0;
      for (int k = 0; k < n; ++k) idx = idx * D + rd[k] * d + cd[k];
      data[idx] = op.matrix()(r, c);
    }
  }
  return contract_axes(std::move(data), n, flattened_basis(op.spin_J()).conjugate());
}

SpinOperator from_basis_coefficients(int n_spins, HalfInt J, const std::vector<cplx>& coeffs) {
  check_spin(J);
  const int d = J.twice + 1;
  const Eigen::Index D = Eigen::Index(d) * d;
  if (static_cast<Eigen::Index>(coeffs.size()) != ipow(D, n_spins))
    throw std::invalid_argument("coefficient count does not match system shape");
  const std::vector<cplx> data = contract_axes(coeffs, n_spins, flattened_basis(J).transpose());
  const Eigen::Index dim = ipow(d, n_spins);
  Matrix m(dim, dim);
  std::vector<int> rd(n_spins), cd(n_spins);
  for (Eigen::Index r = 0; r < dim; ++r) {
    digits(r, d, n_spins, rd.data());
    for (Eigen::Index c = 0; c < dim; ++c) {
      digits(c, d, n_spins, cd.data());
      Eigen::Index idx = 0;
      for (int k = 0; k < n_spins; ++k) idx = idx * D + rd[k] * d + cd[k];
      m(r, c) = data[idx];
    }
  }
  return SpinOperator(n_spins, J, m);
}

BasisIndex basis_index_at(int n_spins, HalfInt J, std::size_t flat) {
  const std::size_t D = std::size_t(J.twice + 1) * (J.twice + 1);
  BasisIndex idx(n_spins);
  for (int k = n_spins - 1; k >= 0; --k) {
    idx[k] = slot_rank_order(static_cast<int>(flat % D));
    flat /= D;
  }
  return idx;
}

std::size_t basis_flat_index(HalfInt J, const BasisIndex& index) {
  const std::size_t D = std::size_t(J.twice + 1) * (J.twice + 1);
  std::size_t flat = 0;
  for (const auto& jm : index) {
    if (jm.j > J.twice || std::abs(jm.m) > jm.j) throw std::invalid_argument("rank/order out of range");
    flat = flat * D + sphere_slot(jm.j, jm.m);
  }
  return flat;
}

std::map<BasisIndex, cplx> decompose(const SpinOperator& op) {
  const std::vector<cplx> c = basis_coefficients(op);
  std::map<BasisIndex, cplx> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (std::abs(c[i]) > 1e-14) out.emplace(basis_index_at(op.n_spins(), op.spin_J(), i), c[i]);
  return out;
}

SpinOperator von_neumann_rhs(const SpinOperator& H, const SpinOperator& rho) {
  return (H * rho - rho * H) * cplx(0.0, -1.0);
}

Matrix unitary_propagator(const Matrix& H, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

SpinOperator evolve_exact(const SpinOperator& H, const SpinOperator& rho, double t) {
  if (!H.is_hermitian()) throw std::domain_error("Hamiltonian is not hermitian");
  const Matrix U = unitary_propagator(H.matrix(), t);
  return SpinOperator(rho.n_spins(), rho.spin_J(), U * rho.matrix() * U.adjoint());
}

SpinOperator partial_trace(const SpinOperator& rho, const std::vector<int>& keep) {
  const int n = rho.n_spins();
  const int d = rho.local_dim();
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("slot out of range");
    if (kept[k]) throw std::invalid_argument("repeated slot in subsystem");
    kept[k] = true;
  }
  if (keep.empty()) throw std::invalid_argument("empty subsystem");
  const int nk = static_cast<int>(keep.size());
  const Eigen::Index out_dim = ipow(d, nk);
  Matrix out = Matrix::Zero(out_dim, out_dim);
  std::vector<int> rd(n), cd(n);
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    digits(r, d, n, rd.data());
    for (Eigen::Index c = 0; c < rho.dim(); ++c) {
      digits(c, d, n, cd.data());
      bool diag = true;
      for (int k = 0; k < n && diag; ++k)
        if (!kept[k] && rd[k] != cd[k]) diag = false;
      if (!diag) continue;
      Eigen::Index orow = 0, ocol = 0;
      for (int k = 0; k < n; ++k)
        if (kept[k]) {
          orow = orow * d + rd[k];
          ocol = ocol * d + cd[k];
        }
      out(orow, ocol) += rho.matrix()(r, c);
    }
  }
  return SpinOperator(nk, rho.spin_J(), out);
}

double entanglement_entropy(const SpinOperator& rho, const std::vector<int>& keep) {
  if (!rho.is_hermitian()) throw std::domain_error("state is not hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw std::domain_error("state does not have unit trace");
  const SpinOperator red = partial_trace(rho, keep);
  Eigen::SelfAdjointEigenSolver<Matrix> es(red.matrix());
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p < -1e-10) throw std::domain_error("state is not positive semidefinite");
    if (p > 1e-14) s -= p * std::log2(p);
  }
  return s;
}

}  // namespace moyal
