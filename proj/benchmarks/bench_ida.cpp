// Interval-detection throughput on three-level 0/1 sessions of increasing
// length, plus the aggregation step across seeds.
#include <benchmark/benchmark.h>

#include <optional>
#include <vector>

#include "mrt/ida.hpp"
#include "mrt/simulate.hpp"

namespace {

mrt::SessionBitmap three_level_session(int bins_log2, std::uint64_t seed) {
  const std::vector<mrt::LevelSpec> levels = {
      mrt::LevelSpec::uniform(65536, 4096, 0.3),
      mrt::LevelSpec::uniform(2048, 128, 0.3),
      mrt::LevelSpec::uniform(64, 4, 0.3)};
  return mrt::simulate_session_levels(levels, std::nullopt,
                                      std::size_t{1} << bins_log2, seed);
}

void BM_RunIda(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const mrt::SessionBitmap session = three_level_session(m, 7);
  for (auto _ : state) benchmark::DoNotOptimize(mrt::run_ida(session));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << m));
}
BENCHMARK(BM_RunIda)->Arg(16)->Arg(18)->Arg(19);

void BM_AggregateIda(benchmark::State& state) {
  std::vector<mrt::IdaResult> results;
  for (std::uint64_t seed = 1; seed <= 8; ++seed)
    results.push_back(mrt::run_ida(three_level_session(16, seed)));
  for (auto _ : state)
    benchmark::DoNotOptimize(mrt::aggregate_ida(results));
}
BENCHMARK(BM_AggregateIda);

}  // namespace

BENCHMARK_MAIN();
