#include <benchmark/benchmark.h>

#include <random>

#include "mdist/constructions.h"
#include "mdist/eval.h"
#include "mdist/metric.h"
#include "mdist/search.h"

namespace mdist {
namespace {

void BM_Distortion(benchmark::State& state, MechanismKind kind, double alpha) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto instance = random_instance(Space::kLine, n, n / 4 + 1, 1);
  const auto id = make_mechanism(kind, alpha);
  for (auto _ : state) {
    benchmark::DoNotOptimize(distortion(instance, id, Objective::kSocialCost));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_Distortion, minisum, MechanismKind::kMinisumTAS, 2.0)
    ->RangeMultiplier(4)->Range(16, 1024)->Complexity();
BENCHMARK_CAPTURE(BM_Distortion, ewm, MechanismKind::kEliminationWeightedMajority,
                  2.414)
    ->RangeMultiplier(4)->Range(16, 1024)->Complexity();
BENCHMARK_CAPTURE(BM_Distortion, compact, MechanismKind::kMostCompactSet, 2.0)
    ->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_ValidateMetric(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto g = to_general(random_instance(Space::kGeneral, k / 2, k - k / 2, 2));
  for (auto _ : state) benchmark::DoNotOptimize(validate_metric(g.dist()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ValidateMetric)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_MetricClosure(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  PartialDistanceMatrix p(k);
  for (std::size_t a = 0; a + 1 < k; ++a) p.set(a, a + 1, u(rng));
  for (std::size_t a = 0; a + 3 < k; a += 3) p.set(a, a + 3, u(rng));
  for (auto _ : state) benchmark::DoNotOptimize(metric_closure(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MetricClosure)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_BuildCyclic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build(ConstructionId::kCyclicSymmetric, {n, 3.0, 1e-6, 1e-6, 0}));
  }
}
BENCHMARK(BM_BuildCyclic)->Arg(100)->Arg(1000);

void BM_HillClimb(benchmark::State& state) {
  SearchConfig config;
  config.mechanism = make_mechanism(MechanismKind::kMinisumTAS, 2.0);
  config.n_range = {2, 8};
  config.m_range = {2, 6};
  config.restarts = 4;
  config.steps = 100;
  for (auto _ : state) benchmark::DoNotOptimize(hill_climb(config));
}
BENCHMARK(BM_HillClimb);

}  // namespace
}  // namespace mdist

BENCHMARK_MAIN();
