// Multiresolution estimator throughput across trace sizes, plus the
// fast-vs-naive gap that motivates the prefix-sum circular path.
#include <benchmark/benchmark.h>

#include <vector>

#include "mrt/multires.hpp"
#include "mrt/rng.hpp"

namespace {

mrt::DyadicView random_trace(int m, std::uint64_t seed) {
  mrt::Rng rng(seed);
  std::vector<double> v(std::size_t{1} << m);
  for (auto& x : v) x = rng.exponential(1.0);
  return mrt::make_dyadic(std::move(v));
}

void BM_AveragingCircular(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const mrt::DyadicView x = random_trace(m, 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(mrt::averaging_circular(x, 2.0));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << m));
}
BENCHMARK(BM_AveragingCircular)->Arg(14)->Arg(16)->Arg(18);

void BM_AveragingCircularNaive(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const mrt::DyadicView x = random_trace(m, 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(mrt::averaging_circular_naive(x, 2.0));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << m));
}
BENCHMARK(BM_AveragingCircularNaive)->Arg(10)->Arg(12);

void BM_AveragingDisjoint(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const mrt::DyadicView x = random_trace(m, 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(mrt::averaging_disjoint(x, 2.0));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << m));
}
BENCHMARK(BM_AveragingDisjoint)->Arg(14)->Arg(16)->Arg(18);

void BM_AveragingViaAutocorr(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const mrt::DyadicView x = random_trace(m, 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(mrt::averaging_via_autocorr(x));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << m));
}
BENCHMARK(BM_AveragingViaAutocorr)->Arg(14)->Arg(16)->Arg(18);

void BM_EnergyCircular(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const mrt::DyadicView x = random_trace(m, 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(mrt::energy_circular(x));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << m));
}
BENCHMARK(BM_EnergyCircular)->Arg(14)->Arg(16)->Arg(18);

void BM_AutocorrelationFft(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const mrt::DyadicView x = random_trace(m, 42);
  const std::size_t max_lag = (std::size_t{1} << m) / 4;
  for (auto _ : state)
    benchmark::DoNotOptimize(mrt::autocorrelation(x.values, max_lag));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << m));
}
BENCHMARK(BM_AutocorrelationFft)->Arg(14)->Arg(16)->Arg(18);

}  // namespace

BENCHMARK_MAIN();
