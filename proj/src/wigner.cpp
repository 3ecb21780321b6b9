#include "moyal/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "moyal/kernels.hpp"
#include "moyal/sph_harm.hpp"

namespace moyal {
namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxSpheres) throw std::invalid_argument("number of spins out of range");
}

int rank_of_slot(int slot) { return slot_rank_order(slot).j; }

int key_rank(CoeffKey key, int n) {
  int r = 0;
  for (int k = 0; k < n; ++k) r = std::max(r, rank_of_slot(key_slot(key, k, n)));
  return r;
}

}  // namespace

CoeffKey pack_key(const BasisIndex& index) {
  if (index.size() > static_cast<std::size_t>(kMaxSpheres))
    throw std::invalid_argument("too many spheres for a packed key");
  CoeffKey key = 0;
  for (const auto& jm : index) {
    if (jm.j < 0 || jm.j > kMaxKeyRank || std::abs(jm.m) > jm.j)
      throw std::invalid_argument("rank/order out of range");
    key = (key << 8) | static_cast<CoeffKey>(sphere_slot(jm.j, jm.m));
  }
  return key;
}

BasisIndex unpack_key(CoeffKey key, int n_spheres) {
  BasisIndex idx(n_spheres);
  for (int k = 0; k < n_spheres; ++k) idx[k] = slot_rank_order(key_slot(key, k, n_spheres));
  return idx;
}

WignerCoeffs::WignerCoeffs(int n_spins, HalfInt J, int max_rank)
    : n_spins_(n_spins), J_(J), max_rank_(max_rank) {
  check_n(n_spins);
  if (J.twice < 1) throw std::invalid_argument("spin number must be positive");
  if (max_rank < 0 || max_rank > kMaxKeyRank) throw std::invalid_argument("rank bound out of range");
}

WignerCoeffs::WignerCoeffs(int n_spins, HalfInt J, int max_rank, std::vector<CoeffEntry> entries)
    : WignerCoeffs(n_spins, J, max_rank) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const CoeffEntry& a, const CoeffEntry& b) { return a.key < b.key; });
  const CoeffKey limit = n_spins == 8 ? ~CoeffKey{0} : (CoeffKey{1} << (8 * n_spins)) - 1;
  for (std::size_t i = 0; i < entries.size();) {
    CoeffEntry e = entries[i++];
    while (i < entries.size() && entries[i].key == e.key) e.value += entries[i++].value;
    if (e.key > limit || key_rank(e.key, n_spins) > max_rank_)
      throw std::invalid_argument("rank/order out of range");
    if (std::abs(e.value) > kDropTolerance) entries_.push_back(e);
  }
}

WignerCoeffs WignerCoeffs::from_map(int n_spins, HalfInt J, int max_rank,
                                    const std::map<BasisIndex, cplx>& coeffs) {
  std::vector<CoeffEntry> e;
  e.reserve(coeffs.size());
  for (const auto& [idx, c] : coeffs) {
    if (static_cast<int>(idx.size()) != n_spins) throw std::invalid_argument("system shape mismatch");
    e.push_back({pack_key(idx), c});
  }
  return WignerCoeffs(n_spins, J, max_rank, std::move(e));
}

WignerCoeffs WignerCoeffs::basis(int n_spins, HalfInt J, const BasisIndex& index, cplx c) {
  int r = 0;
  for (const auto& jm : index) r = std::max(r, jm.j);
  if (static_cast<int>(index.size()) != n_spins) throw std::invalid_argument("system shape mismatch");
  return WignerCoeffs(n_spins, J, r, {{pack_key(index), c}});
}

int WignerCoeffs::present_rank() const {
  int r = 0;
  for (const auto& e : entries_) r = std::max(r, key_rank(e.key, n_spins_));
  return r;
}

cplx WignerCoeffs::at_key(CoeffKey key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const CoeffEntry& e, CoeffKey k) { return e.key < k; });
  return it != entries_.end() && it->key == key ? it->value : cplx{};
}

cplx WignerCoeffs::at(const BasisIndex& index) const {
  if (static_cast<int>(index.size()) != n_spins_) throw std::invalid_argument("system shape mismatch");
  return at_key(pack_key(index));
}

WignerCoeffs WignerCoeffs::with_max_rank(int max_rank) const {
  return WignerCoeffs(n_spins_, J_, max_rank, entries_);
}

void WignerCoeffs::check_same_shape(const WignerCoeffs& o) const {
  if (o.n_spins_ != n_spins_ || o.J_ != J_) throw std::invalid_argument("system shape mismatch");
}

WignerCoeffs WignerCoeffs::operator+(const WignerCoeffs& o) const {
  check_same_shape(o);
  std::vector<CoeffEntry> e(entries_);
  e.insert(e.end(), o.entries_.begin(), o.entries_.end());
  return WignerCoeffs(n_spins_, J_, std::max(max_rank_, o.max_rank_), std::move(e));
}

WignerCoeffs WignerCoeffs::operator-(const WignerCoeffs& o) const { return *this + (-o); }

WignerCoeffs WignerCoeffs::operator-() const { return *this * cplx(-1.0); }

WignerCoeffs WignerCoeffs::operator*(cplx s) const {
  std::vector<CoeffEntry> e(entries_);
  for (auto& x : e) x.value *= s;
  return WignerCoeffs(n_spins_, J_, max_rank_, std::move(e));
}

WignerCoeffs WignerCoeffs::conj() const {
  std::vector<CoeffEntry> e;
  e.reserve(entries_.size());
  for (const auto& x : entries_) {
    CoeffKey key = 0;
    int sign = 1;
    for (int k = 0; k < n_spins_; ++k) {
      const RankOrder jm = slot_rank_order(key_slot(x.key, k, n_spins_));
      if (jm.m % 2) sign = -sign;
      key = (key << 8) | static_cast<CoeffKey>(sphere_slot(jm.j, -jm.m));
    }
    e.push_back({key, double(sign) * std::conj(x.value)});
  }
  return WignerCoeffs(n_spins_, J_, max_rank_, std::move(e));
}

WignerCoeffs wigner_transform(const SpinOperator& op) {
  check_n(op.n_spins());
  const int n = op.n_spins();
  const HalfInt J = op.spin_J();
  const std::vector<cplx> c = basis_coefficients(op);
  std::vector<CoeffEntry> e;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (std::abs(c[i]) > kDropTolerance) e.push_back({pack_key(basis_index_at(n, J, i)), c[i]});
  return WignerCoeffs(n, J, J.twice, std::move(e));
}

SpinOperator inverse_wigner(const WignerCoeffs& w) {
  const int n = w.n_spins();
  const HalfInt J = w.spin_J();
  if (w.present_rank() > J.twice) throw std::invalid_argument("unrepresentable rank");
  const std::size_t D = std::size_t(J.twice + 1) * (J.twice + 1);
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= D;
  std::vector<cplx> dense(total);
  for (const auto& e : w.entries()) dense[basis_flat_index(J, unpack_key(e.key, n))] = e.value;
  return from_basis_coefficients(n, J, dense);
}

cplx evaluate(const WignerCoeffs& w, const SphereAngles& angles) {
  const int n = w.n_spins();
  if (static_cast<int>(angles.size()) != n) throw std::invalid_argument("wrong number of angle pairs");
  const int r = w.present_rank();
  const std::size_t D = std::size_t(r + 1) * (r + 1);
  std::vector<cplx> y(D * n);
  for (int k = 0; k < n; ++k) sph_harm_all(r, angles[k].theta, angles[k].phi, y.data() + k * D);
  cplx sum = 0.0;
  for (const auto& e : w.entries()) {
    cplx term = e.value;
    for (int k = 0; k < n; ++k) term *= y[k * D + key_slot(e.key, k, n)];
    sum += term;
  }
  return sum;
}

WignerCoeffs poisson_bracket(const WignerCoeffs& f, const WignerCoeffs& g, int slot) {
  f.check_same_shape(g);
  if (slot < 0 || slot >= f.n_spins()) throw std::invalid_argument("slot out of range");
  std::vector<SphereRule> rules(f.n_spins(), SphereRule::product);
  rules[slot] = SphereRule::bracket;
  return combine(f, g, rules, 1.0);
}

WignerCoeffs pointwise_product(const WignerCoeffs& f, const WignerCoeffs& g) {
  f.check_same_shape(g);
  std::vector<SphereRule> rules(f.n_spins(), SphereRule::product);
  return combine(f, g, rules, 1.0);
}

WignerCoeffs project_rank(const WignerCoeffs& w, int max_j) {
  if (max_j < 0) throw std::invalid_argument("negative rank");
  std::vector<CoeffEntry> e;
  for (const auto& x : w.entries())
    if (key_rank(x.key, w.n_spins()) <= max_j) e.push_back(x);
  return WignerCoeffs(w.n_spins(), w.spin_J(), std::min(max_j, w.max_rank()), std::move(e));
}

double max_abs_diff(const WignerCoeffs& a, const WignerCoeffs& b) {
  a.check_same_shape(b);
  double m = 0.0;
  auto ia = a.entries().begin(), ib = b.entries().begin();
  const auto ea = a.entries().end(), eb = b.entries().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->key < ib->key)) {
      m = std::max(m, std::abs(ia->value));
      ++ia;
    } else if (ia == ea || ib->key < ia->key) {
      m = std::max(m, std::abs(ib->value));
      ++ib;
    } else {
      m = std::max(m, std::abs(ia->value - ib->value));
      ++ia;
      ++ib;
    }
  }
  return m;
}

double max_abs(const WignerCoeffs& a) {
  double m = 0.0;
  for (const auto& e : a.entries()) m = std::max(m, std::abs(e.value));
  return m;
}

cplx inner_product(const WignerCoeffs& f, const WignerCoeffs& g) {
  f.check_same_shape(g);
  cplx s = 0.0;
  for (const auto& e : f.entries()) s += std::conj(e.value) * g.at_key(e.key);
  return s;
}

cplx bilinear_integral(const WignerCoeffs& f, const WignerCoeffs& g) {
  return inner_product(f.conj(), g);
}

WignerCoeffs lift(const WignerCoeffs& single, int n_spins, int slot) {
  if (single.n_spins() != 1) throw std::invalid_argument("expected a single-sphere function");
  if (slot < 0 || slot >= n_spins) throw std::invalid_argument("slot out of range");
  const double one = std::pow(std::sqrt(4.0 * std::numbers::pi), n_spins - 1);
  std::vector<CoeffEntry> e;
  for (const auto& x : single.entries()) {
    const CoeffKey key = static_cast<CoeffKey>(key_slot(x.key, 0, 1)) << (8 * (n_spins - 1 - slot));
    e.push_back({key, x.value * one});
  }
  return WignerCoeffs(n_spins, single.spin_J(), single.max_rank(), std::move(e));
}

}  // namespace moyal
