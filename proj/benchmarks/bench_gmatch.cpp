#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "gmatch/algorithms.hpp"
#include "gmatch/experiment.hpp"
#include "gmatch/rounding.hpp"
#include "gmatch/spectral.hpp"

namespace {

using namespace gmatch;

PlantedInstance instance(std::size_t n, double lambda) {
  return make_planted_instance(n, 0.2, lambda, 0, 1);
}

std::vector<double> random_scores(std::size_t n) {
  Rng rng({99, n});
  std::vector<double> v(n * n);
  for (double& x : v) x = rng.uniform01();
  return v;
}

void BM_OperatorApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PlantedInstance inst = instance(n, 0.05);
  const AlignmentOperator op = build_alignment_operator(inst.g1, inst.g2, kDefaultEpsilon);
  const std::vector<double> v = random_scores(n);
  std::vector<double> out(n * n);
  for (auto _ : state) {
    op.apply(v, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OperatorApply)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_TopEigenvector(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PlantedInstance inst = instance(n, 0.05);
  const AlignmentOperator op = build_alignment_operator(inst.g1, inst.g2, kDefaultEpsilon);
  for (auto _ : state) benchmark::DoNotOptimize(top_eigenvector(op));
}
BENCHMARK(BM_TopEigenvector)->Arg(20)->Arg(50)->Arg(100);

void BM_Hungarian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ScoreMatrix s(random_scores(n));
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_matching(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hungarian)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_GreedyRound(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ScoreMatrix s(random_scores(n));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_round(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GreedyRound)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_Align(benchmark::State& state) {
  const auto algo = static_cast<Algorithm>(state.range(0));
  const PlantedInstance inst = instance(50, 0.05);
  const AlignmentOperator op = build_alignment_operator(inst.g1, inst.g2, kDefaultEpsilon);
  for (auto _ : state) benchmark::DoNotOptimize(align(op, algo));
  state.SetLabel(std::string(algorithm_name(algo)));
}
BENCHMARK(BM_Align)
    ->Arg(static_cast<int>(Algorithm::kEigenAlign))
    ->Arg(static_cast<int>(Algorithm::kProjectedPower));

}  // namespace

BENCHMARK_MAIN();
