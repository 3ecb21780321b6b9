#include "moyal/star.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace moyal {
namespace {

void require_half(const WignerCoeffs& f, const WignerCoeffs& g) {
  f.check_same_shape(g);
  if (f.spin_J() != kHalf) throw std::invalid_argument("wrong system shape: spin 1/2 required");
}

void require_single(const WignerCoeffs& f) {
  if (f.n_spins() != 1) throw std::invalid_argument("wrong system shape: one spin required");
}

// sqrt(2 pi)^(n - |S|) (-i/2)^|S| times the bilinear map with brackets on S.
WignerCoeffs subset_term(const WignerCoeffs& f, const WignerCoeffs& g, unsigned mask, cplx extra) {
  const int n = f.n_spins();
  std::vector<SphereRule> rules(n, SphereRule::product);
  int size = 0;
  for (int k = 0; k < n; ++k)
    if (mask & (1u << k)) {
      rules[k] = SphereRule::bracket;
      ++size;
    }
  const cplx scale = extra * std::pow(std::sqrt(2.0 * std::numbers::pi), n - size) *
                     std::pow(cplx(0.0, -0.5), size);
  return combine(f, g, rules, scale, Exec::serial);
}

// Sum of subset terms accepted by keep(mask), in ascending mask order.
template <class Keep>
WignerCoeffs subset_sum(const WignerCoeffs& f, const WignerCoeffs& g, cplx extra, Keep keep, Exec exec) {
  const int n = f.n_spins();
  const unsigned count = 1u << n;
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < count; ++m)
    if (keep(m)) masks.push_back(m);
  std::vector<WignerCoeffs> terms(masks.size(), WignerCoeffs(n, f.spin_J(), 0));
  const int nm = static_cast<int>(masks.size());
  if (exec == Exec::serial) {
    for (int i = 0; i < nm; ++i) terms[i] = subset_term(f, g, masks[i], extra);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < nm; ++i) terms[i] = subset_term(f, g, masks[i], extra);
  }
  std::vector<CoeffEntry> all;
  int bound = 0;
  for (const auto& t : terms) {
    all.insert(all.end(), t.entries().begin(), t.entries().end());
    bound = std::max(bound, t.max_rank());
  }
  return WignerCoeffs(n, f.spin_J(), bound, std::move(all));
}

}  // namespace

WignerCoeffs prestar_single(const WignerCoeffs& f, const WignerCoeffs& g) {
  require_half(f, g);
  require_single(f);
  const SphereRule rule = SphereRule::prestar;
  return combine(f, g, std::span(&rule, 1), 1.0, Exec::serial);
}

WignerCoeffs star_single(const WignerCoeffs& f, const WignerCoeffs& g) {
  return project_rank(prestar_single(f, g), 1);
}

WignerCoeffs prestar_multi(const WignerCoeffs& f, const WignerCoeffs& g, Exec exec) {
  require_half(f, g);
  return subset_sum(f, g, 1.0, [](unsigned) { return true; }, exec);
}

WignerCoeffs star_multi(const WignerCoeffs& f, const WignerCoeffs& g, Exec exec) {
  return project_rank(prestar_multi(f, g, exec), 1);
}

WignerCoeffs star_commutator(const WignerCoeffs& f, const WignerCoeffs& g, Exec exec) {
  require_half(f, g);
  const auto odd = [](unsigned m) { return std::popcount(m) % 2 == 1; };
  return project_rank(subset_sum(f, g, 2.0, odd, exec), 1);
}

WignerCoeffs eom_rhs(const WignerCoeffs& W_H, const WignerCoeffs& W_rho, Exec exec) {
  return star_commutator(W_H, W_rho, exec) * cplx(0.0, -1.0);
}

bool is_natural_hamiltonian(const WignerCoeffs& W_H) {
  const int n = W_H.n_spins();
  for (const auto& e : W_H.entries()) {
    int coupled = 0;
    for (int k = 0; k < n; ++k)
      if (key_slot(e.key, k, n) != 0) ++coupled;
    if (coupled > 2) return false;
  }
  return true;
}

WignerCoeffs eom_rhs_natural(const WignerCoeffs& W_H, const WignerCoeffs& W_rho) {
  require_half(W_H, W_rho);
  if (!is_natural_hamiltonian(W_H)) throw std::invalid_argument("not a natural Hamiltonian");
  const int n = W_H.n_spins();
  std::vector<CoeffEntry> all;
  int bound = 0;
  for (int k = 0; k < n; ++k) {
    const WignerCoeffs b = poisson_bracket(W_rho, W_H, k);
    all.insert(all.end(), b.entries().begin(), b.entries().end());
    bound = std::max(bound, b.max_rank());
  }
  const WignerCoeffs sum(n, W_H.spin_J(), bound, std::move(all));
  return project_rank(sum, 1) * std::pow(std::sqrt(2.0 * std::numbers::pi), n - 1);
}

double linear_J_scale(HalfInt J) {
  const double j = J.value();
  return 1.0 / std::sqrt(2.0 * j * (j + 1) * (2 * j + 1) / 3.0);
}

WignerCoeffs eom_rhs_linear_J(const WignerCoeffs& W_H, const WignerCoeffs& W_A) {
  W_H.check_same_shape(W_A);
  require_single(W_H);
  if (W_H.present_rank() > 1) throw std::invalid_argument("nonlinear Hamiltonian unsupported for J > 1/2");
  const WignerCoeffs b = poisson_bracket(W_A, W_H.with_max_rank(1), 0);
  return project_rank(b, W_A.max_rank()) * linear_J_scale(W_H.spin_J());
}

}  // namespace moyal
