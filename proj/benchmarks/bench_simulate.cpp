// Generator throughput for the main traffic models at a common desk scale.
#include <benchmark/benchmark.h>

#include "mrt/simulate.hpp"

namespace {

mrt::SimConfig base_cfg(mrt::Model model) {
  mrt::SimConfig cfg;
  cfg.model = model;
  cfg.users = 100;
  cfg.bins_log2 = 14;
  cfg.seed = 42;
  if (model == mrt::Model::SessionLevels || model == mrt::Model::Combined ||
      model == mrt::Model::CombinedRttLevels)
    cfg.levels = {mrt::LevelSpec::exponential(256, 256)};
  if (model == mrt::Model::CombinedRttLevels) cfg.rtt_level_count = 1;
  return cfg;
}

void run_model(benchmark::State& state, mrt::Model model) {
  const mrt::SimConfig cfg = base_cfg(model);
  for (auto _ : state) benchmark::DoNotOptimize(mrt::simulate(cfg));
  state.SetItemsProcessed(state.iterations() *
                          (std::int64_t{1} << cfg.bins_log2));
}

void BM_OnOff(benchmark::State& s) { run_model(s, mrt::Model::OnOff); }
void BM_Packetized(benchmark::State& s) {
  run_model(s, mrt::Model::Packetized);
}
void BM_SlowStart(benchmark::State& s) {
  run_model(s, mrt::Model::SlowStart);
}
void BM_SessionLevels(benchmark::State& s) {
  run_model(s, mrt::Model::SessionLevels);
}
void BM_Combined(benchmark::State& s) { run_model(s, mrt::Model::Combined); }
void BM_CombinedRttLevels(benchmark::State& s) {
  run_model(s, mrt::Model::CombinedRttLevels);
}

BENCHMARK(BM_OnOff);
BENCHMARK(BM_Packetized);
BENCHMARK(BM_SlowStart);
BENCHMARK(BM_SessionLevels);
BENCHMARK(BM_Combined);
BENCHMARK(BM_CombinedRttLevels);

}  // namespace

BENCHMARK_MAIN();
