// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "ordyn/conley.hpp"
#include "ordyn/sweep.hpp"

using namespace ordyn;

namespace {

DynSystem random_system(int n, std::uint64_t seed, bool discrete = false) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(1.5 / n);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<Pair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!discrete && i != j && edge(rng)) pairs.emplace_back(i, j);
  std::vector<int> f(n);
  for (auto& v : f) v = pick(rng);
  return DynSystem(Topology(Preorder::closure_of(n, pairs)), f);
}

void BM_SubsetSweep(benchmark::State& state) {
  const DynSystem d = random_system(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(subset_sweep(d, NbhdKind::Attracting));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void BM_SubsetSweepSerial(benchmark::State& state) {
  const DynSystem d = random_system(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(subset_sweep_serial(d, NbhdKind::Attracting));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

// Discrete systems are closed, so the whole subset space is scanned.
void BM_ClosedViolation(benchmark::State& state) {
  const DynSystem d = random_system(static_cast<int>(state.range(0)), 11, true);
  for (auto _ : state) benchmark::DoNotOptimize(closed_violation(d));
}

void BM_ClosedViolationSerial(benchmark::State& state) {
  const DynSystem d = random_system(static_cast<int>(state.range(0)), 11, true);
  for (auto _ : state) benchmark::DoNotOptimize(closed_violation_serial(d));
}

SweepOptions sweep_options() {
  SweepOptions o;
  o.n = 3;
  o.all_topologies = true;
  return o;
}

void BM_Sweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep(sweep_options()));
}

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(sweep_options()));
}

}  // namespace

BENCHMARK(BM_SubsetSweep)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubsetSweepSerial)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosedViolation)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosedViolationSerial)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
