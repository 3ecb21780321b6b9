// Serial reference vs OpenMP kernel timings. Arg(0) = serial, Arg(1) = parallel.

#include <benchmark/benchmark.h>

#include "moyal/kernels.hpp"
#include "moyal/quad.hpp"
#include "moyal/random.hpp"
#include "moyal/star.hpp"

using namespace moyal;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

WignerCoeffs random_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  return wigner_transform(random_operator(n, kHalf, rng));
}

void BM_CombineProduct(benchmark::State& s) {
  const int n = static_cast<int>(s.range(1));
  const WignerCoeffs f = random_state(n, 1), g = random_state(n, 2);
  const std::vector<SphereRule> rules(n, SphereRule::prestar);
  for (auto _ : s) benchmark::DoNotOptimize(combine(f, g, rules, 1.0, exec_of(s)));
}

void BM_PrestarMulti(benchmark::State& s) {
  const int n = static_cast<int>(s.range(1));
  const WignerCoeffs f = random_state(n, 3), g = random_state(n, 4);
  for (auto _ : s) benchmark::DoNotOptimize(prestar_multi(f, g, exec_of(s)));
}

void BM_EomRhs(benchmark::State& s) {
  const int n = static_cast<int>(s.range(1));
  const WignerCoeffs h = random_state(n, 5), rho = random_state(n, 6);
  for (auto _ : s) benchmark::DoNotOptimize(eom_rhs(h, rho, exec_of(s)));
}

void BM_SampleGrid(benchmark::State& s) {
  const int n = static_cast<int>(s.range(1));
  const WignerCoeffs w = random_state(n, 7);
  const SphereGrid grid = SphereGrid::for_rank(4);
  for (auto _ : s) benchmark::DoNotOptimize(sample_grid(w, grid, exec_of(s)));
}

void BM_WeightedTensorSum(benchmark::State& s) {
  const int n = static_cast<int>(s.range(1));
  const SphereGrid grid = SphereGrid::for_rank(4);
  const std::vector<cplx> samples = sample_grid(random_state(n, 8), grid);
  for (auto _ : s) benchmark::DoNotOptimize(weighted_tensor_sum(samples, grid.weights(), n, exec_of(s)));
}

void BM_EvaluateMany(benchmark::State& s) {
  const int n = static_cast<int>(s.range(1));
  const WignerCoeffs w = random_state(n, 9);
  Rng rng(10);
  std::vector<SphereAngles> pts;
  for (int i = 0; i < 4096; ++i) pts.push_back(random_angles(n, rng));
  for (auto _ : s) benchmark::DoNotOptimize(evaluate_many(w, pts, exec_of(s)));
}

}  // namespace

BENCHMARK(BM_CombineProduct)->ArgsProduct({{0, 1}, {2, 4, 5}});
BENCHMARK(BM_PrestarMulti)->ArgsProduct({{0, 1}, {2, 4, 5}});
BENCHMARK(BM_EomRhs)->ArgsProduct({{0, 1}, {3, 4}});
BENCHMARK(BM_SampleGrid)->ArgsProduct({{0, 1}, {2, 3}});
BENCHMARK(BM_WeightedTensorSum)->ArgsProduct({{0, 1}, {2, 3}});
BENCHMARK(BM_EvaluateMany)->ArgsProduct({{0, 1}, {2, 4}});

BENCHMARK_MAIN();
