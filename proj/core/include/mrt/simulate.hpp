// SPDX-License-Identifier: MIT
//
// Traffic simulators, built incrementally:
//   OnOff          - n independent 0/1 sources; heavy-tailed ON, light OFF.
//   Packetized     - each transfer becomes individual packets spaced by
//                    round-trip gaps.
//   SlowStart      - packetized, but packets leave in doubling bursts capped
//                    at a window maximum.
//   SessionLevels  - nested ON/OFF levels (and optional packet spikes)
//                    multiplied into one 0/1 session bitmap.
//   Combined       - session-levels bitmap whose active slots are weighted
//                    by a capped doubling schedule over heavy-tailed budgets.
// Plus reference baselines (random heights, i.i.d. noise, ...). All models
// are deterministic functions of (config, seed).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrt/rng.hpp"
#include "mrt/trace.hpp"

namespace mrt {

// Pareto family with tail exponent p in (1,2) (finite mean, infinite
// variance) and minimum value `scale`.
struct HeavyTailSpec {
  double p = 1.4;
  double scale = 1.0;
  bool integer_valued = false;

  double sample(Rng& rng) const;           // real-valued draw
  std::uint64_t sample_integer(Rng& rng) const;  // ceil of the draw
  double mean() const;                     // scale * p / (p - 1)
};

enum class LightTailFamily { Exponential, UniformAroundMean, GaussianTruncated, Constant };

// Light-tailed nonnegative durations, parameterized by mean. `spread` is
// family-specific: half-width ratio for UniformAroundMean (in [0,1]),
// standard deviation for GaussianTruncated, ignored otherwise.
struct LightTailSpec {
  LightTailFamily family = LightTailFamily::Exponential;
  double mean = 1.0;
  double spread = 0.0;

  double sample(Rng& rng) const;
};

// One ON/OFF alternation layer of a session. Levels are listed coarsest
// first; on_mean must strictly decrease along the list.
struct LevelSpec {
  double on_mean = 1.0;
  double off_mean = 1.0;
  LightTailSpec on_dist{};
  LightTailSpec off_dist{};

  static LevelSpec exponential(double on_mean, double off_mean);
  // Uniform in mean*(1 +- ratio).
  static LevelSpec uniform(double on_mean, double off_mean, double ratio);
  // "Sharp" layer: uniform with a tight +-10% ratio.
  static LevelSpec sharp(double on_mean, double off_mean);
  // Truncated Gaussian with sigma = 2*sqrt(mean).
  static LevelSpec gaussian(double on_mean, double off_mean);
};

enum class Model {
  OnOff,            // summed 0/1 ON/OFF sources
  Packetized,       // unit packets, round-trip gaps
  SlowStart,        // doubling burst schedule, cap slow_start_max
  SessionLevels,    // multiplied ON/OFF levels (+ optional spikes)
  Combined,         // levels bitmap + budgeted doubling weights
  CombinedRttLevels,  // Combined, schedule continues across packet-scale gaps
  RandomHeights,      // OnOff with an i.i.d. height per ON interval
  RandomHeightsTail,  // OnOff aggregate plus a sparse spike train
  PacketizedHeights,  // Packetized with an i.i.d. height per transfer
  ExpIid,             // i.i.d. exponential bins
  HeavyTailIid        // i.i.d. Pareto bins
};

struct SimConfig {
  Model model = Model::OnOff;
  std::uint64_t users = 1;   // number of superposed sources
  int bins_log2 = 14;        // trace length 2^bins_log2
  double bin_width = 1.0;
  std::uint64_t seed = 1;

  HeavyTailSpec load{};      // ON length / transfer size / weight budget
  LightTailSpec off{LightTailFamily::Exponential, 8.0, 0.0};
  LightTailSpec rtt{LightTailFamily::Exponential, 4.0, 0.0};
  bool rtt_spikes = true;    // SessionLevels: include the packet-spike layer
  std::uint64_t slow_start_max = 32;  // burst cap M >= 1

  std::vector<LevelSpec> levels{};    // coarsest first
  std::size_t rtt_level_count = 0;    // CombinedRttLevels: finest layers
                                      // treated as packet-scale
  // Burn-in before bin 0, in expected ON+OFF cycles (OnOff-family models).
  double burn_in_cycles = 10.0;

  LightTailSpec height{LightTailFamily::Exponential, 1.0, 0.0};  // RH / ARRRH
  double spike_gap_mean = 100.0;   // RandomHeightsTail spike spacing
  double spike_height_mean = 0.5;  // RandomHeightsTail spike mass
  bool spike_heavy = false;        // heavy-tailed spike heights
  double iid_mean = 1.0;           // ExpIid bin mean
};

// Validates the fields used by cfg.model; throws std::invalid_argument.
void validate_config(const SimConfig& cfg);

// Run the configured model. Deterministic in (cfg, cfg.seed).
BinnedTrace simulate(const SimConfig& cfg);

// Individual models (each validates what it uses).
BinnedTrace simulate_on_off(const SimConfig& cfg);
BinnedTrace simulate_packetized(const SimConfig& cfg);
BinnedTrace simulate_slow_start(const SimConfig& cfg);
BinnedTrace simulate_session_sum(const SimConfig& cfg);   // SessionLevels
BinnedTrace simulate_combined(const SimConfig& cfg);      // both Combined modes
BinnedTrace simulate_baseline(const SimConfig& cfg);      // RH/RH_HT/ARRRH/iid

// One session's 0/1 bitmap: optional packet-spike layer (isolated ones,
// light-tailed gaps) multiplied with one alternating ON/OFF vector per
// level, coarsest first, each with a random whole-bin phase.
SessionBitmap simulate_session_levels(const std::vector<LevelSpec>& levels,
                                      const std::optional<LightTailSpec>& rtt,
                                      std::size_t bins, std::uint64_t seed);

// Burst sizes for a transfer of `load` packets under cap `max_burst`:
// 1, 2, 4, ..., capped, with the final burst truncated so the sizes add up
// to exactly `load`.
std::vector<std::uint64_t> slow_start_schedule(std::uint64_t load,
                                               std::uint64_t max_burst);

// Closed-form number of bursts for a transfer of `load` packets; equals
// slow_start_schedule(load, max_burst).size() whenever the last burst is
// full-sized (see tests for the truncated-remainder caveat).
std::uint64_t slow_start_emission_count(std::uint64_t load,
                                        std::uint64_t max_burst);

// Bookkeeping from a Combined run, for conservation checks. A "budget" is
// one heavy-tailed transfer size; a budget is complete once the assigned
// weights reach it (the weight that crosses the line may overshoot by at
// most cap-1). Budgets cut off by the end of the session bitmap are not
// counted here.
struct SlowStartStats {
  std::uint64_t completed_budgets = 0;
  std::uint64_t budget_total = 0;     // sum of completed budgets
  std::uint64_t emitted_total = 0;    // weights assigned to completed budgets
  std::uint64_t overshoot_total = 0;  // emitted_total - budget_total
  std::uint64_t max_overshoot = 0;    // per-budget max (always < cap)
};
BinnedTrace simulate_combined_with_stats(const SimConfig& cfg,
                                         SlowStartStats* stats);

}  // namespace mrt
