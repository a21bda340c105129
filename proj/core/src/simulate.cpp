// SPDX-License-Identifier: MIT
//
// All models work natively on the bin grid: every duration parameter (ON/OFF
// lengths, round-trip gaps, level cycles) is expressed in bins, and interval
// lengths are rounded to whole bins (at least one). bin_width is metadata
// carried into the output, never a conversion factor. This keeps the trivial
// cases exact (a single constant-cycle source is a perfect square wave) and
// the traces integer-valued where the model says they are.
#include "mrt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mrt/errors.hpp"

namespace mrt {

double HeavyTailSpec::sample(Rng& rng) const { return rng.pareto(p, scale); }

std::uint64_t HeavyTailSpec::sample_integer(Rng& rng) const {
  return rng.pareto_integer(p, scale);
}

double HeavyTailSpec::mean() const { return scale * p / (p - 1.0); }

double LightTailSpec::sample(Rng& rng) const {
  switch (family) {
    case LightTailFamily::Exponential:
      return rng.exponential(mean);
    case LightTailFamily::UniformAroundMean:
      return rng.uniform(mean * (1.0 - spread), mean * (1.0 + spread));
    case LightTailFamily::GaussianTruncated: {
      // Resample until nonnegative; keeps the mean close to `mean` for the
      // mild sigmas used here and stays trivially deterministic.
      double v = rng.normal(mean, spread);
      while (v < 0.0) v = rng.normal(mean, spread);
      return v;
    }
    case LightTailFamily::Constant:
      return mean;
  }
  return mean;
}

LevelSpec LevelSpec::exponential(double on_mean, double off_mean) {
  LevelSpec lv;
  lv.on_mean = on_mean;
  lv.off_mean = off_mean;
  lv.on_dist = {LightTailFamily::Exponential, on_mean, 0.0};
  lv.off_dist = {LightTailFamily::Exponential, off_mean, 0.0};
  return lv;
}

LevelSpec LevelSpec::uniform(double on_mean, double off_mean, double ratio) {
  LevelSpec lv;
  lv.on_mean = on_mean;
  lv.off_mean = off_mean;
  lv.on_dist = {LightTailFamily::UniformAroundMean, on_mean, ratio};
  lv.off_dist = {LightTailFamily::UniformAroundMean, off_mean, ratio};
  return lv;
}

LevelSpec LevelSpec::sharp(double on_mean, double off_mean) {
  return uniform(on_mean, off_mean, 0.1);
}

LevelSpec LevelSpec::gaussian(double on_mean, double off_mean) {
  LevelSpec lv;
  lv.on_mean = on_mean;
  lv.off_mean = off_mean;
  lv.on_dist = {LightTailFamily::GaussianTruncated, on_mean,
                2.0 * std::sqrt(on_mean)};
  lv.off_dist = {LightTailFamily::GaussianTruncated, off_mean,
                 2.0 * std::sqrt(off_mean)};
  return lv;
}

namespace {

using std::int64_t;
using std::uint64_t;

// Round a duration to whole bins, never below one bin.
int64_t whole_bins(double x) {
  return std::max<int64_t>(1, std::llround(x));
}

void validate_heavy(const HeavyTailSpec& ht, const char* what) {
  if (!(ht.p > 1.0) || !(ht.p < 2.0))
    throw std::invalid_argument(std::string(what) +
                                ": tail exponent p must lie in (1, 2)");
  if (!(ht.scale > 0.0))
    throw std::invalid_argument(std::string(what) + ": scale must be > 0");
}

void validate_light(const LightTailSpec& lt, const char* what) {
  if (!(lt.mean > 0.0))
    throw std::invalid_argument(std::string(what) + ": mean must be > 0");
  switch (lt.family) {
    case LightTailFamily::UniformAroundMean:
      if (!(lt.spread >= 0.0) || !(lt.spread <= 1.0))
        throw std::invalid_argument(std::string(what) +
                                    ": uniform spread must lie in [0, 1]");
      break;
    case LightTailFamily::GaussianTruncated:
      if (!(lt.spread > 0.0))
        throw std::invalid_argument(std::string(what) +
                                    ": gaussian spread must be > 0");
      break;
    default:
      if (!(lt.spread >= 0.0))
        throw std::invalid_argument(std::string(what) +
                                    ": spread must be >= 0");
  }
}

void validate_levels(const SimConfig& cfg) {
  if (cfg.levels.empty())
    throw std::invalid_argument("levels: at least one level required");
  double prev_on = std::numeric_limits<double>::infinity();
  for (const auto& lv : cfg.levels) {
    if (!(lv.on_mean >= 1.0) || !(lv.off_mean >= 1.0))
      throw std::invalid_argument("levels: on/off means must be >= 1 bin");
    if (!(lv.on_mean < prev_on))
      throw std::invalid_argument(
          "levels: on_mean must strictly decrease (coarsest first)");
    prev_on = lv.on_mean;
    validate_light(lv.on_dist, "level on");
    validate_light(lv.off_dist, "level off");
  }
}

}  // namespace

void validate_config(const SimConfig& cfg) {
  if (cfg.bins_log2 < 1 || cfg.bins_log2 > 30)
    throw std::invalid_argument("bins_log2 must lie in [1, 30]");
  if (!(cfg.bin_width > 0.0))
    throw std::invalid_argument("bin_width must be > 0");
  if (!(cfg.burn_in_cycles >= 0.0))
    throw std::invalid_argument("burn_in_cycles must be >= 0");

  const bool iid =
      cfg.model == Model::ExpIid || cfg.model == Model::HeavyTailIid;
  if (!iid && cfg.users < 1)
    throw std::invalid_argument("users must be >= 1");

  switch (cfg.model) {
    case Model::OnOff:
    case Model::RandomHeights:
    case Model::RandomHeightsTail:
      validate_heavy(cfg.load, "load");
      validate_light(cfg.off, "off");
      if (cfg.model == Model::RandomHeights)
        validate_light(cfg.height, "height");
      if (cfg.model == Model::RandomHeightsTail) {
        if (!(cfg.spike_gap_mean > 0.0) || !(cfg.spike_height_mean > 0.0))
          throw std::invalid_argument("spike means must be > 0");
      }
      break;
    case Model::Packetized:
    case Model::PacketizedHeights:
      validate_heavy(cfg.load, "load");
      validate_light(cfg.off, "off");
      validate_light(cfg.rtt, "rtt");
      if (cfg.model == Model::PacketizedHeights)
        validate_light(cfg.height, "height");
      break;
    case Model::SlowStart:
      validate_heavy(cfg.load, "load");
      validate_light(cfg.off, "off");
      validate_light(cfg.rtt, "rtt");
      if (cfg.slow_start_max < 1)
        throw std::invalid_argument("slow_start_max must be >= 1");
      break;
    case Model::SessionLevels:
      validate_levels(cfg);
      if (cfg.rtt_spikes) validate_light(cfg.rtt, "rtt");
      break;
    case Model::Combined:
    case Model::CombinedRttLevels:
      validate_levels(cfg);
      validate_heavy(cfg.load, "load");
      validate_light(cfg.rtt, "rtt");
      if (cfg.slow_start_max < 1)
        throw std::invalid_argument("slow_start_max must be >= 1");
      if (cfg.model == Model::CombinedRttLevels &&
          cfg.rtt_level_count > cfg.levels.size())
        throw std::invalid_argument(
            "rtt_level_count cannot exceed the number of levels");
      break;
    case Model::ExpIid:
      if (!(cfg.iid_mean > 0.0))
        throw std::invalid_argument("iid_mean must be > 0");
      break;
    case Model::HeavyTailIid:
      validate_heavy(cfg.load, "load");
      break;
  }
}

namespace {

// Shared ON/OFF alternation: starts OFF, first cycle lengths drawn up
// front so a uniform whole-bin shift within that cycle (plus burn-in)
// stationarizes the phase. paint(a, b, rng) covers the ON range [a, b).
template <typename Paint>
void on_off_walk(const SimConfig& cfg, uint64_t user, int64_t n_bins,
                 Paint&& paint) {
  Rng rng = Rng::substream(cfg.seed, user);
  const int64_t off1 = whole_bins(cfg.off.sample(rng));
  const int64_t on1 = whole_bins(cfg.load.sample(rng));
  const int64_t shift =
      static_cast<int64_t>(rng.below(static_cast<uint64_t>(off1 + on1)));
  const double mean_cycle = cfg.off.mean + cfg.load.mean();
  const int64_t burn =
      static_cast<int64_t>(std::llround(cfg.burn_in_cycles * mean_cycle));

  int64_t pos = -(burn + shift);
  bool first = true;
  while (pos < n_bins) {
    const int64_t off_len = first ? off1 : whole_bins(cfg.off.sample(rng));
    pos += off_len;
    if (pos >= n_bins) break;
    const int64_t on_len = first ? on1 : whole_bins(cfg.load.sample(rng));
    paint(pos, pos + on_len, rng);
    pos += on_len;
    first = false;
  }
}

BinnedTrace empty_trace(const SimConfig& cfg, int64_t* n_bins) {
  BinnedTrace out;
  out.bin_width = cfg.bin_width;
  *n_bins = int64_t{1} << cfg.bins_log2;
  out.values.assign(static_cast<std::size_t>(*n_bins), 0.0);
  return out;
}

void add_range(std::vector<double>& values, int64_t a, int64_t b, double w) {
  const int64_t n = static_cast<int64_t>(values.size());
  for (int64_t i = std::max<int64_t>(a, 0); i < std::min(b, n); ++i)
    values[static_cast<std::size_t>(i)] += w;
}

}  // namespace

BinnedTrace simulate_on_off(const SimConfig& cfg) {
  validate_config(cfg);
  int64_t n_bins = 0;
  BinnedTrace out = empty_trace(cfg, &n_bins);
  const bool heights = cfg.model == Model::RandomHeights;
  for (uint64_t u = 0; u < cfg.users; ++u) {
    on_off_walk(cfg, u, n_bins, [&](int64_t a, int64_t b, Rng& rng) {
      const double w = heights ? cfg.height.sample(rng) : 1.0;
      add_range(out.values, a, b, w);
    });
  }
  return out;
}

namespace {

// Packet deposition shared by Packetized / PacketizedHeights / SlowStart:
// every burst is preceded by one round-trip gap; bursts landing past the
// end of the trace are dropped.
template <typename BurstWeights>
void packet_walk(const SimConfig& cfg, uint64_t user, int64_t n_bins,
                 std::vector<double>& values, BurstWeights&& weights_for) {
  Rng rng = Rng::substream(cfg.seed, user);
  double pos = 0.0;
  while (pos < static_cast<double>(n_bins)) {
    pos += cfg.off.sample(rng);
    const uint64_t load = cfg.load.sample_integer(rng);
    for (double w : weights_for(load, rng)) {
      pos += cfg.rtt.sample(rng);
      if (pos >= static_cast<double>(n_bins)) break;
      values[static_cast<std::size_t>(pos)] += w;
    }
  }
}

}  // namespace

BinnedTrace simulate_packetized(const SimConfig& cfg) {
  validate_config(cfg);
  int64_t n_bins = 0;
  BinnedTrace out = empty_trace(cfg, &n_bins);
  const bool heights = cfg.model == Model::PacketizedHeights;
  std::vector<double> weights;
  for (uint64_t u = 0; u < cfg.users; ++u) {
    packet_walk(cfg, u, n_bins, out.values,
                [&](uint64_t load, Rng& rng) -> const std::vector<double>& {
                  const double w = heights ? cfg.height.sample(rng) : 1.0;
                  weights.assign(static_cast<std::size_t>(load), w);
                  return weights;
                });
  }
  return out;
}

std::vector<uint64_t> slow_start_schedule(uint64_t load, uint64_t max_burst) {
  if (load < 1) throw std::invalid_argument("load must be >= 1");
  if (max_burst < 1) throw std::invalid_argument("max_burst must be >= 1");
  std::vector<uint64_t> out;
  uint64_t remaining = load;
  uint64_t window = 1;
  while (remaining > 0) {
    const uint64_t burst = std::min(std::min(window, max_burst), remaining);
    out.push_back(burst);
    remaining -= burst;
    window = std::min(window * 2, max_burst);
  }
  return out;
}

std::uint64_t slow_start_emission_count(uint64_t load, uint64_t max_burst) {
  if (load < 1) throw std::invalid_argument("load must be >= 1");
  if (max_burst < 1) throw std::invalid_argument("max_burst must be >= 1");
  const double log_part =
      std::log2(static_cast<double>(std::min(load, max_burst)));
  const double linear_part =
      load >= 2 * max_burst
          ? static_cast<double>(load - 2 * max_burst + 1) /
                static_cast<double>(max_burst)
          : 0.0;
  return static_cast<uint64_t>(std::floor(log_part + linear_part)) + 1;
}

BinnedTrace simulate_slow_start(const SimConfig& cfg) {
  validate_config(cfg);
  int64_t n_bins = 0;
  BinnedTrace out = empty_trace(cfg, &n_bins);
  std::vector<double> weights;
  for (uint64_t u = 0; u < cfg.users; ++u) {
    packet_walk(cfg, u, n_bins, out.values,
                [&](uint64_t load, Rng&) -> const std::vector<double>& {
                  weights.clear();
                  for (uint64_t w : slow_start_schedule(load, cfg.slow_start_max))
                    weights.push_back(static_cast<double>(w));
                  return weights;
                });
  }
  return out;
}

namespace {

struct LevelParts {
  std::vector<std::uint8_t> bits;       // final session bitmap
  std::vector<std::uint8_t> coarse_on;  // AND of the first coarse_count
                                        // levels (empty if coarse_count==0)
};

// One session: optional packet-spike layer, then each level's ON/OFF
// alternation zeroing its OFF ranges (elementwise product of all layers).
// Draw order (spikes, then levels coarsest first) is part of the
// reproducibility contract.
LevelParts generate_level_session(const std::vector<LevelSpec>& levels,
                                  const std::optional<LightTailSpec>& rtt,
                                  std::size_t bins, uint64_t seed,
                                  std::size_t coarse_count) {
  if (levels.empty())
    throw std::invalid_argument("levels: at least one level required");
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");

  LevelParts parts;
  parts.bits.assign(bins, 1);
  if (coarse_count > 0) parts.coarse_on.assign(bins, 1);
  const int64_t n = static_cast<int64_t>(bins);
  Rng rng(seed);

  if (rtt.has_value()) {
    // Spike layer: isolated ones separated by light-tailed whole-bin gaps.
    std::vector<std::uint8_t> spikes(bins, 0);
    int64_t t = 0;
    while (t < n) {
      spikes[static_cast<std::size_t>(t)] = 1;
      t += 1 + whole_bins(rtt->sample(rng));
    }
    for (std::size_t i = 0; i < bins; ++i) parts.bits[i] &= spikes[i];
  }

  for (std::size_t idx = 0; idx < levels.size(); ++idx) {
    const LevelSpec& lv = levels[idx];
    const bool track_coarse = idx < coarse_count;
    const int64_t on1 = whole_bins(lv.on_dist.sample(rng));
    const int64_t off1 = whole_bins(lv.off_dist.sample(rng));
    const int64_t phase =
        static_cast<int64_t>(rng.below(static_cast<uint64_t>(on1 + off1)));
    int64_t pos = -phase;
    bool first = true;
    while (pos < n) {
      const int64_t on_len = first ? on1 : whole_bins(lv.on_dist.sample(rng));
      pos += on_len;  // ON range: bits unchanged
      const int64_t off_len =
          first ? off1 : whole_bins(lv.off_dist.sample(rng));
      for (int64_t i = std::max<int64_t>(pos, 0);
           i < std::min(pos + off_len, n); ++i) {
        parts.bits[static_cast<std::size_t>(i)] = 0;
        if (track_coarse) parts.coarse_on[static_cast<std::size_t>(i)] = 0;
      }
      pos += off_len;
      first = false;
    }
  }
  return parts;
}

}  // namespace

SessionBitmap simulate_session_levels(const std::vector<LevelSpec>& levels,
                                      const std::optional<LightTailSpec>& rtt,
                                      std::size_t bins, std::uint64_t seed) {
  LevelParts parts = generate_level_session(levels, rtt, bins, seed, 0);
  SessionBitmap out;
  out.bits = std::move(parts.bits);
  return out;
}

BinnedTrace simulate_session_sum(const SimConfig& cfg) {
  validate_config(cfg);
  int64_t n_bins = 0;
  BinnedTrace out = empty_trace(cfg, &n_bins);
  const std::optional<LightTailSpec> rtt =
      cfg.rtt_spikes ? std::optional<LightTailSpec>(cfg.rtt) : std::nullopt;
  for (uint64_t u = 0; u < cfg.users; ++u) {
    LevelParts parts = generate_level_session(
        cfg.levels, rtt, static_cast<std::size_t>(n_bins),
        Rng::derive2(cfg.seed, u, 0), 0);
    for (std::size_t i = 0; i < parts.bits.size(); ++i)
      out.values[i] += parts.bits[i];
  }
  return out;
}

BinnedTrace simulate_combined_with_stats(const SimConfig& cfg,
                                         SlowStartStats* stats) {
  validate_config(cfg);
  int64_t n_bins = 0;
  BinnedTrace out = empty_trace(cfg, &n_bins);
  const bool classify_gaps = cfg.model == Model::CombinedRttLevels;
  const std::size_t coarse_count =
      classify_gaps ? cfg.levels.size() - cfg.rtt_level_count : 0;
  const uint64_t cap = cfg.slow_start_max;

  std::vector<std::uint32_t> off_prefix;
  for (uint64_t u = 0; u < cfg.users; ++u) {
    // Stream 0 shapes the session bitmap (identical to the SessionLevels
    // model), stream 1 draws transfer budgets; with cap 1 the two models
    // therefore produce bit-identical traces.
    LevelParts parts = generate_level_session(
        cfg.levels, cfg.rtt, static_cast<std::size_t>(n_bins),
        Rng::derive2(cfg.seed, u, 0), coarse_count);
    Rng budget_rng(Rng::derive2(cfg.seed, u, 1));

    if (classify_gaps && coarse_count > 0) {
      // off_prefix[i] = count of coarse-OFF bins below i; a gap (prev, i) is
      // packet-scale iff no coarse level was OFF strictly inside it.
      off_prefix.assign(parts.bits.size() + 1, 0);
      for (std::size_t i = 0; i < parts.bits.size(); ++i)
        off_prefix[i + 1] =
            off_prefix[i] + (parts.coarse_on[i] ? 0u : 1u);
    }

    bool budget_open = false;
    uint64_t budget = 0, emitted = 0, window = 1;
    int64_t remaining = 0;
    int64_t prev = -1;
    for (int64_t i = 0; i < n_bins; ++i) {
      if (!parts.bits[static_cast<std::size_t>(i)]) continue;
      if (budget_open && classify_gaps && coarse_count > 0 && prev >= 0 &&
          i - prev > 1 && off_prefix[i] - off_prefix[prev + 1] > 0) {
        budget_open = false;  // coarse gap: the transfer was cut short
      }
      if (!budget_open) {
        budget = cfg.load.sample_integer(budget_rng);
        remaining = static_cast<int64_t>(budget);
        window = 1;
        emitted = 0;
        budget_open = true;
      }
      out.values[static_cast<std::size_t>(i)] += static_cast<double>(window);
      emitted += window;
      remaining -= static_cast<int64_t>(window);
      window = std::min(window * 2, cap);
      if (remaining <= 0) {
        if (stats) {
          stats->completed_budgets += 1;
          stats->budget_total += budget;
          stats->emitted_total += emitted;
          const uint64_t overshoot = emitted - budget;
          stats->overshoot_total += overshoot;
          stats->max_overshoot = std::max(stats->max_overshoot, overshoot);
        }
        budget_open = false;
      }
      prev = i;
    }
  }
  return out;
}

BinnedTrace simulate_combined(const SimConfig& cfg) {
  return simulate_combined_with_stats(cfg, nullptr);
}

BinnedTrace simulate_baseline(const SimConfig& cfg) {
  validate_config(cfg);
  int64_t n_bins = 0;
  switch (cfg.model) {
    case Model::RandomHeights:
      return simulate_on_off(cfg);
    case Model::RandomHeightsTail: {
      // Unit-height aggregate plus a sparse spike train on its own
      // substream (index `users`, past every per-user stream).
      SimConfig base = cfg;
      base.model = Model::OnOff;
      BinnedTrace out = simulate_on_off(base);
      n_bins = static_cast<int64_t>(out.values.size());
      Rng rng = Rng::substream(cfg.seed, cfg.users);
      double pos = rng.exponential(cfg.spike_gap_mean);
      while (pos < static_cast<double>(n_bins)) {
        const double h =
            cfg.spike_heavy
                ? rng.pareto(cfg.load.p, cfg.spike_height_mean *
                                             (cfg.load.p - 1.0) / cfg.load.p)
                : rng.exponential(cfg.spike_height_mean);
        out.values[static_cast<std::size_t>(pos)] += h;
        pos += rng.exponential(cfg.spike_gap_mean);
      }
      return out;
    }
    case Model::PacketizedHeights:
      return simulate_packetized(cfg);
    case Model::ExpIid: {
      BinnedTrace out = empty_trace(cfg, &n_bins);
      Rng rng = Rng::substream(cfg.seed, 0);
      for (double& v : out.values) v = rng.exponential(cfg.iid_mean);
      return out;
    }
    case Model::HeavyTailIid: {
      BinnedTrace out = empty_trace(cfg, &n_bins);
      Rng rng = Rng::substream(cfg.seed, 0);
      for (double& v : out.values) v = cfg.load.sample(rng);
      return out;
    }
    default:
      throw std::invalid_argument("not a baseline model");
  }
}

BinnedTrace simulate(const SimConfig& cfg) {
  switch (cfg.model) {
    case Model::OnOff:
      return simulate_on_off(cfg);
    case Model::Packetized:
      return simulate_packetized(cfg);
    case Model::SlowStart:
      return simulate_slow_start(cfg);
    case Model::SessionLevels:
      return simulate_session_sum(cfg);
    case Model::Combined:
    case Model::CombinedRttLevels:
      return simulate_combined(cfg);
    case Model::RandomHeights:
    case Model::RandomHeightsTail:
    case Model::PacketizedHeights:
    case Model::ExpIid:
    case Model::HeavyTailIid:
      return simulate_baseline(cfg);
  }
  throw std::invalid_argument("unknown model");
}

}  // namespace mrt
