#include <benchmark/benchmark.h>

#include "majorant_lab/extremal.hpp"
#include "majorant_lab/randsets.hpp"

namespace {

using namespace majorant_lab;

FrequencySet selector_set(std::int64_t n, std::uint64_t stream) {
  SeededRng rng(1, stream);
  return sample(BernoulliSelector{n, 0.5}, rng);
}

void BM_EvaluateOnGrid(benchmark::State& state) {
  const auto poly = TrigPolynomial::all_ones(selector_set(state.range(0), 0));
  const Grid grid{static_cast<std::size_t>(4 * state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_on_grid(poly, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateOnGrid)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

void BM_EvenExactNorm(benchmark::State& state) {
  const auto poly = TrigPolynomial::all_ones(selector_set(state.range(0), 1));
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm_even_exact(poly, 2));
}
BENCHMARK(BM_EvenExactNorm)->RangeMultiplier(4)->Range(256, 1 << 14);

void BM_AdaptiveNorm(benchmark::State& state) {
  const auto poly = TrigPolynomial::all_ones(selector_set(state.range(0), 2));
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm_adaptive(poly, 3.0, 1e-9));
}
BENCHMARK(BM_AdaptiveNorm)->RangeMultiplier(4)->Range(256, 1 << 14);

void BM_MajorantNumerator(benchmark::State& state) {
  const auto set = selector_set(state.range(0), 3);
  OptimizerConfig cfg;
  cfg.restarts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(majorant_numerator(set, 3.0, cfg));
}
BENCHMARK(BM_MajorantNumerator)->RangeMultiplier(4)->Range(128, 2048)->Unit(benchmark::kMillisecond);

void BM_LambdaP(benchmark::State& state) {
  SeededRng rng(1, 4);
  const auto set = sample(BlockUniform{state.range(0), 16}, rng);
  OptimizerConfig cfg;
  cfg.restarts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lambda_p_constant(set, 4.0, cfg));
}
BENCHMARK(BM_LambdaP)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
