#include "moyal/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "moyal/angular.hpp"

namespace moyal {
namespace {

constexpr int kChunks = 64;
constexpr std::size_t kDenseLimit = std::size_t{1} << 20;

struct PairTable {
  int Db = 0;
  std::vector<std::uint32_t> offsets;
  std::vector<std::pair<int, cplx>> items;

  std::span<const std::pair<int, cplx>> at(int sa, int sb) const {
    const std::size_t i = std::size_t(sa) * Db + sb;
    return {items.data() + offsets[i], items.data() + offsets[i + 1]};
  }
};

PairTable build_pair_table(SphereRule rule, int ra, int rb, HalfInt J) {
  const AngularTables& t = angular_tables();
  PairTable p;
  const int Da = (ra + 1) * (ra + 1);
  p.Db = (rb + 1) * (rb + 1);
  p.offsets.reserve(std::size_t(Da) * p.Db + 1);
  p.offsets.push_back(0);
  for (int sa = 0; sa < Da; ++sa) {
    const RankOrder a = slot_rank_order(sa);
    for (int sb = 0; sb < p.Db; ++sb) {
      const RankOrder b = slot_rank_order(sb);
      const int M = a.m + b.m;
      int Lmax = a.j + b.j;
      if (rule == SphereRule::operator_product) Lmax = std::min(Lmax, J.twice);
      for (int L = std::max(std::abs(a.j - b.j), std::abs(M)); L <= Lmax; ++L) {
        cplx c;
        switch (rule) {
          case SphereRule::product: c = t.Z(a.j, b.j, L); break;
          case SphereRule::bracket: c = t.U(a.j, b.j, L); break;
          case SphereRule::prestar: c = t.Lambda(a.j, b.j, L); break;
          case SphereRule::operator_product: c = t.Q(J, a.j, b.j, L); break;
        }
        if (c == 0.0) continue;
        c *= t.cg(a.j, a.m, b.j, b.m, L);
        if (c == 0.0) continue;
        p.items.emplace_back(sphere_slot(L, M), c);
      }
      p.offsets.push_back(static_cast<std::uint32_t>(p.items.size()));
    }
  }
  return p;
}

struct Term {
  CoeffKey key;
  std::size_t dense;
  cplx v;
};

// Accumulates f[begin, end) x g into a sorted entry list.
class ChunkWorker {
 public:
  ChunkWorker(const WignerCoeffs& f, const WignerCoeffs& g, const std::vector<const PairTable*>& tables,
              cplx scale, int Dout, bool dense)
      : f_(f), g_(g), tables_(tables), scale_(scale), n_(f.n_spins()), Dout_(Dout), dense_(dense) {
    if (dense_) {
      std::size_t total = 1;
      for (int k = 0; k < n_; ++k) total *= Dout_;
      buffer_.assign(total, cplx{});
    }
  }

  std::vector<CoeffEntry> run(std::size_t begin, std::size_t end) {
    const auto fe = f_.entries();
    const auto ge = g_.entries();
    for (std::size_t ia = begin; ia < end; ++ia) {
      for (const auto& b : ge) {
        cur_.clear();
        cur_.push_back({0, 0, scale_ * fe[ia].value * b.value});
        for (int k = 0; k < n_ && !cur_.empty(); ++k) {
          const auto list = tables_[k]->at(key_slot(fe[ia].key, k, n_), key_slot(b.key, k, n_));
          next_.clear();
          for (const Term& t : cur_)
            for (const auto& [so, c] : list)
              next_.push_back({(t.key << 8) | static_cast<CoeffKey>(so),
                               t.dense * Dout_ + static_cast<std::size_t>(so), t.v * c});
          std::swap(cur_, next_);
        }
        for (const Term& t : cur_) {
          if (dense_)
            buffer_[t.dense] += t.v;
          else
            sparse_[t.key] += t.v;
        }
      }
    }
    std::vector<CoeffEntry> out;
    if (dense_) {
      for (std::size_t i = 0; i < buffer_.size(); ++i) {
        if (buffer_[i] == cplx{}) continue;
        CoeffKey key = 0;
        std::size_t rest = i;
        for (int k = n_ - 1; k >= 0; --k) {
          key |= static_cast<CoeffKey>(rest % Dout_) << (8 * (n_ - 1 - k));
          rest /= Dout_;
        }
        out.push_back({key, buffer_[i]});
        buffer_[i] = cplx{};
      }
      std::sort(out.begin(), out.end(), [](const CoeffEntry& a, const CoeffEntry& b) { return a.key < b.key; });
    } else {
      out.reserve(sparse_.size());
      for (const auto& [k, v] : sparse_) out.push_back({k, v});
      sparse_.clear();
      std::sort(out.begin(), out.end(), [](const CoeffEntry& a, const CoeffEntry& b) { return a.key < b.key; });
    }
    return out;
  }

 private:
  const WignerCoeffs& f_;
  const WignerCoeffs& g_;
  const std::vector<const PairTable*>& tables_;
  cplx scale_;
  int n_;
  std::size_t Dout_;
  bool dense_;
  std::vector<cplx> buffer_;
  std::unordered_map<CoeffKey, cplx> sparse_;
  std::vector<Term> cur_, next_;
};

}  // namespace

WignerCoeffs combine(const WignerCoeffs& f, const WignerCoeffs& g, std::span<const SphereRule> rules,
                     cplx scale, Exec exec) {
  f.check_same_shape(g);
  const int n = f.n_spins();
  if (static_cast<int>(rules.size()) != n) throw std::invalid_argument("one rule per sphere required");
  const HalfInt J = f.spin_J();
  const int ra = f.present_rank();
  const int rb = g.present_rank();
  int rout = 0;
  for (SphereRule r : rules)
    rout = std::max(rout, r == SphereRule::operator_product ? std::min(ra + rb, J.twice) : ra + rb);
  if (rout > kMaxKeyRank) throw std::invalid_argument("product rank exceeds the supported range");
  int bound = 0;
  for (SphereRule r : rules)
    bound = std::max(bound, r == SphereRule::operator_product ? std::min(f.max_rank() + g.max_rank(), J.twice)
                                                              : f.max_rank() + g.max_rank());
  bound = std::clamp(bound, rout, kMaxKeyRank);

  std::vector<PairTable> distinct;
  std::vector<SphereRule> distinct_rules;
  for (SphereRule r : rules)
    if (std::find(distinct_rules.begin(), distinct_rules.end(), r) == distinct_rules.end()) {
      distinct_rules.push_back(r);
      distinct.push_back(build_pair_table(r, ra, rb, J));
    }
  std::vector<const PairTable*> tables(n);
  for (int k = 0; k < n; ++k) {
    const auto it = std::find(distinct_rules.begin(), distinct_rules.end(), rules[k]);
    tables[k] = &distinct[it - distinct_rules.begin()];
  }

  const int Dout = (rout + 1) * (rout + 1);
  double total = 1.0;
  for (int k = 0; k < n; ++k) total *= Dout;
  const bool dense = total <= static_cast<double>(kDenseLimit);

  if (f.empty() || g.empty()) return WignerCoeffs(n, J, bound);

  std::vector<CoeffEntry> merged;
  if (exec == Exec::serial) {
    ChunkWorker w(f, g, tables, scale, Dout, dense);
    merged = w.run(0, f.size());
  } else {
    const std::size_t nf = f.size();
    const int chunks = static_cast<int>(std::min<std::size_t>(kChunks, nf));
    std::vector<std::vector<CoeffEntry>> parts(chunks);
#pragma omp parallel
    {
      ChunkWorker w(f, g, tables, scale, Dout, dense);
#pragma omp for schedule(dynamic, 1)
      for (int c = 0; c < chunks; ++c)
        parts[c] = w.run(nf * c / chunks, nf * (c + 1) / chunks);
    }
    for (auto& p : parts) merged.insert(merged.end(), p.begin(), p.end());
  }
  return WignerCoeffs(n, J, bound, std::move(merged));
}

std::vector<cplx> evaluate_many(const WignerCoeffs& w, const std::vector<SphereAngles>& points, Exec exec) {
  std::vector<cplx> out(points.size());
  const long long np = static_cast<long long>(points.size());
  if (exec == Exec::serial) {
    for (long long i = 0; i < np; ++i) out[i] = evaluate(w, points[i]);
  } else {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < np; ++i) out[i] = evaluate(w, points[i]);
  }
  return out;
}

std::vector<cplx> evaluate_tensor_grid(const WignerCoeffs& w, const std::vector<cplx>& ytab, std::size_t nodes,
                                       std::size_t stride, Exec exec) {
  const int n = w.n_spins();
  const int r = w.present_rank();
  if (stride < std::size_t(r + 1) * (r + 1) || ytab.size() < nodes * stride)
    throw std::invalid_argument("harmonic table does not cover the function's rank");
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= nodes;
  std::vector<int> slots;
  std::vector<cplx> coeffs;
  for (const auto& e : w.entries()) {
    for (int k = 0; k < n; ++k) slots.push_back(key_slot(e.key, k, n));
    coeffs.push_back(e.value);
  }
  std::vector<cplx> out(total);
  auto body = [&](long long i) {
    std::size_t node[kMaxSpheres];
    std::size_t rest = static_cast<std::size_t>(i);
    for (int k = n - 1; k >= 0; --k) {
      node[k] = rest % nodes;
      rest /= nodes;
    }
    cplx sum = 0.0;
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      cplx term = coeffs[e];
      for (int k = 0; k < n; ++k) term *= ytab[node[k] * stride + slots[e * n + k]];
      sum += term;
    }
    out[i] = sum;
  };
  const long long nt = static_cast<long long>(total);
  if (exec == Exec::serial) {
    for (long long i = 0; i < nt; ++i) body(i);
  } else {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nt; ++i) body(i);
  }
  return out;
}

cplx weighted_tensor_sum(const std::vector<cplx>& values, const std::vector<double>& weights, int n_spheres,
                         Exec exec) {
  const std::size_t nodes = weights.size();
  std::size_t total = 1;
  for (int k = 0; k < n_spheres; ++k) total *= nodes;
  if (values.size() != total) throw std::invalid_argument("sample count does not match the grid");

  // Compensated sum over [begin, end).
  auto partial = [&](std::size_t begin, std::size_t end) {
    cplx sum = 0.0, comp = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      double wt = 1.0;
      std::size_t rest = i;
      for (int k = 0; k < n_spheres; ++k) {
        wt *= weights[rest % nodes];
        rest /= nodes;
      }
      const cplx term = wt * values[i];
      const cplx t = sum + term;
      const double cr = std::abs(sum.real()) >= std::abs(term.real()) ? (sum.real() - t.real()) + term.real()
                                                                      : (term.real() - t.real()) + sum.real();
      const double ci = std::abs(sum.imag()) >= std::abs(term.imag()) ? (sum.imag() - t.imag()) + term.imag()
                                                                      : (term.imag() - t.imag()) + sum.imag();
      comp += cplx(cr, ci);
      sum = t;
    }
    return sum + comp;
  };
  if (exec == Exec::serial) return partial(0, total);

  const int chunks = static_cast<int>(std::min<std::size_t>(kChunks, std::max<std::size_t>(total, 1)));
  std::vector<cplx> parts(chunks);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < chunks; ++c) parts[c] = partial(total * c / chunks, total * (c + 1) / chunks);
  cplx sum = 0.0;
  for (const cplx& p : parts) sum += p;
  return sum;
}

}  // namespace moyal
