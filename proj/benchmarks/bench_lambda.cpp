#include <benchmark/benchmark.h>

#include "anonlip/coupling.hpp"
#include "anonlip/lipschitz.hpp"
#include "anonlip/oracle.hpp"
#include "anonlip/poisson_binomial.hpp"
#include "anonlip/walk.hpp"

namespace {

void BM_PassageProb(benchmark::State& state) {
  const anonlip::WalkParams p(state.range(0), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(anonlip::passage_prob(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PassageProb)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_MStat(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(anonlip::m_stat(state.range(0), 0.3));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MStat)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_DeltaStar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(anonlip::delta_star(state.range(0), 3, 1e-10));
}
BENCHMARK(BM_DeltaStar)->Arg(100)->Arg(1000);

void BM_Oracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(anonlip::lambda_oracle(n, k, 0.3));
}
BENCHMARK(BM_Oracle)->Args({8, 3})->Args({14, 3})->Args({14, 4});

void BM_Coupling(benchmark::State& state) {
  anonlip::CouplingConfig cfg;
  cfg.steps = static_cast<int>(state.range(0));
  cfg.samples = 1 << 16;
  cfg.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(anonlip::simulate_coupling(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.samples));
}
BENCHMARK(BM_Coupling)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
