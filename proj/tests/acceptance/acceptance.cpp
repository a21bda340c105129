// SPDX-License-Identifier: MIT
//
// Acceptance suite: twelve end-to-end criteria covering estimator oracle
// equivalences, analytic invariants, and Monte-Carlo regime checks on
// simulated traffic. Each criterion prints exactly one line:
//
//   [PASS] 03 white-noise-slope: mean slope -0.502 in [-0.55,-0.45] ... (4.1s)
//
// Run all with no arguments, a single criterion with --only N. Exit code is
// the number of failing criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mrt/errors.hpp"
#include "mrt/gaussianity.hpp"
#include "mrt/ida.hpp"
#include "mrt/ingest.hpp"
#include "mrt/level_tools.hpp"
#include "mrt/multires.hpp"
#include "mrt/rng.hpp"
#include "mrt/simulate.hpp"
#include "mrt/trace.hpp"

namespace {

// ------------------------------------------------------------------ helpers

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

Fit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  Fit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = f.intercept + f.slope * xs[i];
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

// Local maxima, strict rise from the left, plateaus counted once (leftmost).
std::vector<std::size_t> local_maxima(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool up = i == 0 ? true : v[i] > v[i - 1];
    const bool down = i + 1 >= n ? true : v[i] >= v[i + 1];
    if (i == 0 && n > 1 && !(v[0] > v[1])) continue;
    if (i + 1 == n && n > 1 && !(v[n - 1] > v[n - 2])) continue;
    if (up && down) out.push_back(i);
  }
  return out;
}

// Indices of the top-k entries of v restricted to `candidates`, by value
// descending, ties broken toward the smaller index.
std::vector<std::size_t> top_by_value(const std::vector<double>& v,
                                      std::vector<std::size_t> candidates,
                                      std::size_t k) {
  std::sort(candidates.begin(), candidates.end(),
            [&](std::size_t a, std::size_t b) {
              if (v[a] != v[b]) return v[a] > v[b];
              return a < b;
            });
  if (candidates.size() > k) candidates.resize(k);
  return candidates;
}

std::vector<double> log2_values(const mrt::MultiresProfile& p) {
  std::vector<double> out(p.scale_values.size(),
                          std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (auto l = p.log2_value(i)) out[i] = *l;
  return out;
}

mrt::DyadicView dyadic_of(const mrt::SimConfig& cfg) {
  return mrt::make_dyadic(mrt::simulate(cfg).values);
}

std::string join_scales(const std::vector<std::size_t>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out + "}";
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------- criteria

// 1. The fast circular p-Averaging path must agree with a naive
//    all-shifts reimplementation, and the autocorrelation route must agree
//    with the direct route, to 1e-9 relative on 100 random inputs of 2^10.
Outcome c01_estimator_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_fast = 0.0, worst_ac = 0.0;
  for (int i = 0; i < 100; ++i) {
    mrt::Rng rng(mrt::Rng::derive(900100, static_cast<std::uint64_t>(i)));
    std::vector<double> v(1024);
    if (i % 2 == 0)
      for (auto& x : v) x = rng.exponential(1.0);
    else
      for (auto& x : v) x = rng.pareto(1.2, 1.0);
    const mrt::DyadicView x = mrt::make_dyadic(std::move(v));

    const double p = (i % 2 == 0) ? 2.0 : 1.4;
    const mrt::MultiresProfile fast = mrt::averaging_circular(x, p);
    const mrt::MultiresProfile naive = mrt::averaging_circular_naive(x, p);
    for (std::size_t j = 0; j < fast.scale_values.size(); ++j)
      worst_fast = std::max(worst_fast,
                            std::abs(fast.scale_values[j] -
                                     naive.scale_values[j]) /
                                naive.scale_values[j]);

    const mrt::MultiresProfile direct = mrt::averaging_circular(x, 2.0);
    const mrt::MultiresProfile via_ac = mrt::averaging_via_autocorr(x);
    for (std::size_t j = 0; j < direct.scale_values.size(); ++j)
      worst_ac = std::max(worst_ac,
                          std::abs(via_ac.scale_values[j] -
                                   direct.scale_values[j]) /
                              direct.scale_values[j]);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  Outcome o;
  o.pass = worst_fast <= 1e-9 && worst_ac <= 1e-9 && secs < 30.0;
  o.detail = "fast-vs-naive max rel err " + num(worst_fast) +
             ", autocorr-route " + num(worst_ac) +
             " (tol 1e-9 each); 100 inputs of 2^10 in " + num(secs) +
             "s (limit 30s)";
  return o;
}

// 2. The Energy/Averaging identity must hold on every test input, both
//    block schemes: disjoint log2 E_j = j - 2 + 2 log2 A_j, circular
//    log2 E_j = j - 1 + 2 log2 A_j, to 1e-9 absolute.
Outcome c02_energy_identity() {
  std::vector<mrt::DyadicView> inputs;
  for (int i = 0; i < 100; ++i) {
    mrt::Rng rng(mrt::Rng::derive(900200, static_cast<std::uint64_t>(i)));
    std::vector<double> v(1024);
    if (i % 2 == 0)
      for (auto& x : v) x = rng.exponential(1.0);
    else
      for (auto& x : v) x = rng.pareto(1.2, 1.0);
    inputs.push_back(mrt::make_dyadic(std::move(v)));
  }
  const auto add_model = [&](mrt::Model model, std::uint64_t seed) {
    mrt::SimConfig cfg;
    cfg.model = model;
    cfg.users = 8;
    cfg.bins_log2 = 12;
    cfg.seed = seed;
    if (model == mrt::Model::SessionLevels ||
        model == mrt::Model::Combined ||
        model == mrt::Model::CombinedRttLevels)
      cfg.levels = {mrt::LevelSpec::exponential(256, 256)};
    if (model == mrt::Model::CombinedRttLevels) cfg.rtt_level_count = 1;
    inputs.push_back(dyadic_of(cfg));
  };
  add_model(mrt::Model::OnOff, 9001);
  add_model(mrt::Model::Packetized, 9002);
  add_model(mrt::Model::SlowStart, 9003);
  add_model(mrt::Model::SessionLevels, 9004);
  add_model(mrt::Model::Combined, 9005);
  add_model(mrt::Model::CombinedRttLevels, 9006);
  add_model(mrt::Model::RandomHeights, 9007);
  add_model(mrt::Model::ExpIid, 9008);
  add_model(mrt::Model::HeavyTailIid, 9009);

  double worst = 0.0;
  std::size_t checked = 0;
  for (const mrt::DyadicView& x : inputs) {
    const mrt::MultiresProfile a1 = mrt::averaging_disjoint(x, 2.0);
    const mrt::MultiresProfile e1 = mrt::energy_disjoint(x);
    for (std::size_t i = 0; i < a1.scale_values.size(); ++i) {
      const auto la = a1.log2_value(i);
      const auto le = e1.log2_value(i);
      if (!la || !le) continue;
      const double j = static_cast<double>(a1.scale_of(i));
      worst = std::max(worst, std::abs(*le - (j - 2.0 + 2.0 * *la)));
      ++checked;
    }
    const mrt::MultiresProfile a2 = mrt::averaging_circular(x, 2.0);
    const mrt::MultiresProfile e2 = mrt::energy_circular(x);
    for (std::size_t i = 0; i < a2.scale_values.size(); ++i) {
      const auto la = a2.log2_value(i);
      const auto le = e2.log2_value(i);
      if (!la || !le) continue;
      const double j = static_cast<double>(a2.scale_of(i));
      worst = std::max(worst, std::abs(*le - (j - 1.0 + 2.0 * *la)));
      ++checked;
    }
  }
  Outcome o;
  o.pass = worst <= 1e-9 && checked > 0;
  o.detail = "max |identity residual| " + num(worst) + " over " +
             std::to_string(checked) + " scale checks on " +
             std::to_string(inputs.size()) +
             " inputs (100 random + 9 simulated), tol 1e-9";
  return o;
}

// 3. An i.i.d. exponential trace must show the n^(-1/2) mean-convergence
//    law: fitted log2 A_j slope over j in [2,12] near -0.5.
Outcome c03_white_noise_slope() {
  const int seeds = 32;
  double sum_slope = 0.0;
  for (int s = 1; s <= seeds; ++s) {
    mrt::SimConfig cfg;
    cfg.model = mrt::Model::ExpIid;
    cfg.bins_log2 = 16;
    cfg.seed = static_cast<std::uint64_t>(s);
    const mrt::MultiresProfile prof =
        mrt::averaging_circular(dyadic_of(cfg), 2.0);
    const std::vector<double> logs = log2_values(prof);
    std::vector<double> xs, ys;
    for (int j = 2; j <= 12; ++j) {
      xs.push_back(j);
      ys.push_back(logs[static_cast<std::size_t>(j)]);
    }
    sum_slope += linear_fit(xs, ys).slope;
  }
  const double mean_slope = sum_slope / seeds;
  Outcome o;
  o.pass = mean_slope >= -0.55 && mean_slope <= -0.45;
  o.detail = "mean slope " + num(mean_slope) +
             " in [-0.55,-0.45]; 2^16 bins, j in [2,12], 32 seeds";
  return o;
}

// 4. Aggregated heavy-tailed ON/OFF traffic must give a straight-line
//    Energy profile: R^2 of the linear fit of the seed-mean log2 E_j
//    over j in [3,11] above 0.98.
Outcome c04_energy_linearity() {
  const int seeds = 16;
  std::vector<double> acc(17, 0.0);
  for (int s = 1; s <= seeds; ++s) {
    mrt::SimConfig cfg;
    cfg.model = mrt::Model::OnOff;
    cfg.users = 500;
    cfg.bins_log2 = 15;
    cfg.seed = static_cast<std::uint64_t>(s);
    cfg.load.p = 1.2;
    const std::vector<double> logs =
        log2_values(mrt::energy_circular(dyadic_of(cfg)));
    for (std::size_t i = 0; i < acc.size() && i < logs.size(); ++i)
      acc[i] += logs[i];
  }
  std::vector<double> xs, ys;
  for (int j = 3; j <= 11; ++j) {
    xs.push_back(j);
    ys.push_back(acc[static_cast<std::size_t>(j)] / seeds);
  }
  const Fit f = linear_fit(xs, ys);
  Outcome o;
  o.pass = f.r2 > 0.98;
  o.detail = "energy-fit R^2 " + num(f.r2) + " > 0.98 (slope " +
             num(f.slope) + "); 500 users, tail 1.2, 2^15 bins, j in "
             "[3,11], 16 seeds";
  return o;
}

// 5. A single session level at 2^12 must raise a bump in the Averaging
//    profile near scale 12; adding the intra-session spike layer must make
//    the profile fall at the finest scales first.
Outcome c05_level_bump_and_spike_decay() {
  const int seeds = 16;
  const auto mean_profile = [&](bool spikes) {
    std::vector<double> acc(17, 0.0);
    for (int s = 1; s <= seeds; ++s) {
      mrt::SimConfig cfg;
      cfg.model = mrt::Model::SessionLevels;
      cfg.users = 50;
      cfg.bins_log2 = 16;
      cfg.seed = static_cast<std::uint64_t>(500 + s);
      cfg.levels = {mrt::LevelSpec::exponential(4096, 4096)};
      cfg.rtt_spikes = spikes;
      const std::vector<double> logs =
          log2_values(mrt::averaging_circular(dyadic_of(cfg), 2.0));
      for (std::size_t i = 0; i < acc.size() && i < logs.size(); ++i)
        acc[i] += logs[i];
    }
    for (double& v : acc) v /= seeds;
    return acc;
  };

  const std::vector<double> smooth = mean_profile(false);
  const std::vector<std::size_t> maxima = local_maxima(smooth);
  bool bump_ok = false;
  std::size_t bump_at = 0;
  for (std::size_t idx : maxima)
    if (idx >= 11 && idx <= 13) {
      bump_ok = true;
      bump_at = idx;
    }

  const std::vector<double> spiky = mean_profile(true);
  const Fit fine = linear_fit({0.0, 1.0, 2.0},
                              {spiky[0], spiky[1], spiky[2]});
  const bool decay_ok = fine.slope <= -0.3;

  Outcome o;
  o.pass = bump_ok && decay_ok;
  o.detail = std::string("no-spike bump at scale ") +
             (bump_ok ? std::to_string(bump_at) : std::string("none")) +
             " (need within 12+-1, maxima " + join_scales(maxima) +
             "); with spikes finest-3-scale slope " + num(fine.slope) +
             " <= -0.3; level 2^12, 50 users, 2^16 bins, 16 seeds";
  return o;
}

// 6. On a three-level session mix (true levels 7/12/17) the level tools
//    must read the levels back: detector top-3 within +-1 of true levels,
//    flat regions covering scales 12 and 17.
Outcome c06_level_tools() {
  const int seeds = 8;
  const int m = 19;
  std::vector<double> acc(static_cast<std::size_t>(m), 0.0);
  for (int s = 1; s <= seeds; ++s) {
    mrt::SimConfig cfg;
    cfg.model = mrt::Model::SessionLevels;
    cfg.users = 24;
    cfg.bins_log2 = m;
    cfg.seed = static_cast<std::uint64_t>(600 + s);
    cfg.levels = {mrt::LevelSpec::exponential(131072, 131072),
                  mrt::LevelSpec::exponential(4096, 4096),
                  mrt::LevelSpec::exponential(128, 128)};
    const std::vector<double> logs =
        log2_values(mrt::averaging_circular(dyadic_of(cfg), 2.0));
    for (std::size_t i = 0; i < acc.size() && i < logs.size(); ++i)
      acc[i] += logs[i];
  }
  mrt::MultiresProfile mean;
  mean.p = 2.0;
  mean.m = m;
  mean.definition = mrt::Definition::CircularBlocks;
  mean.kind = mrt::ProfileKind::Averaging;
  for (double v : acc) mean.scale_values.push_back(std::exp2(v / seeds));

  const mrt::SlopeSeries t1 = mrt::tool1_level_detector(mean, 0.01);
  std::vector<std::size_t> order(t1.level_scales.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return t1.level_strengths[a] > t1.level_strengths[b];
  });
  std::vector<std::size_t> top3;
  for (std::size_t i = 0; i < order.size() && i < 3; ++i)
    top3.push_back(static_cast<std::size_t>(t1.level_scales[order[i]]));
  const auto near_level = [](std::size_t scale) {
    for (int t : {7, 12, 17})
      if (std::abs(static_cast<int>(scale) - t) <= 1) return true;
    return false;
  };
  bool tool1_ok = top3.size() == 3;
  for (std::size_t scale : top3) tool1_ok = tool1_ok && near_level(scale);

  const mrt::FlatRegions t2 = mrt::tool2_flat_regions(mean, -0.1);
  const auto covered = [&](int scale) {
    for (const auto& [a, b] : t2.regions)
      if (a <= scale && scale <= b) return true;
    return false;
  };
  const bool tool2_ok = covered(12) && covered(17);

  std::string regions = "{";
  for (std::size_t i = 0; i < t2.regions.size(); ++i) {
    if (i) regions += ",";
    regions += "[" + std::to_string(t2.regions[i].first) + "," +
               std::to_string(t2.regions[i].second) + "]";
  }
  regions += "}";

  Outcome o;
  o.pass = tool1_ok && tool2_ok;
  o.detail = "detector top-3 scales " + join_scales(top3) +
             " each within +-1 of {7,12,17}; flat regions " + regions +
             " cover 12 and 17: " + (tool2_ok ? "yes" : "NO") +
             "; 24 users, 2^19 bins, 8 seeds";
  return o;
}

// 7. The interval-detection image must recover the interval scales of a
//    three-level 0/1 session (1-runs near 2^6/2^11/2^16, 0-runs near
//    2^2/2^7/2^12, lengths uniform +-30%), per seed.
Outcome c07_interval_detection() {
  const std::vector<mrt::LevelSpec> levels = {
      mrt::LevelSpec::uniform(65536, 4096, 0.3),
      mrt::LevelSpec::uniform(2048, 128, 0.3),
      mrt::LevelSpec::uniform(64, 4, 0.3)};
  const std::size_t bins = std::size_t{1} << 19;
  const std::vector<int> ones_targets = {6, 11, 16};
  const std::vector<int> zero_targets = {2, 7, 12};

  int pass_seeds = 0;
  std::string first_fail;
  for (int s = 1; s <= 8; ++s) {
    const mrt::SessionBitmap session = mrt::simulate_session_levels(
        levels, std::nullopt, bins, static_cast<std::uint64_t>(700 + s));
    const mrt::IdaResult r = mrt::run_ida(session);

    const auto peaks_match = [&](const std::vector<double>& v,
                                 const std::vector<int>& targets,
                                 bool drop_artifact) {
      std::vector<std::size_t> cand = local_maxima(v);
      if (drop_artifact) {
        std::erase(cand, static_cast<std::size_t>(r.artifact_class));
      }
      const std::vector<std::size_t> top =
          top_by_value(v, cand, targets.size());
      if (top.size() != targets.size()) return std::make_pair(false, top);
      for (int t : targets) {
        bool hit = false;
        for (std::size_t idx : top)
          hit = hit || std::abs(static_cast<int>(idx) - t) <= 1;
        if (!hit) return std::make_pair(false, top);
      }
      for (std::size_t idx : top) {
        bool near_any = false;
        for (int t : targets)
          near_any = near_any || std::abs(static_cast<int>(idx) - t) <= 1;
        if (!near_any) return std::make_pair(false, top);
      }
      return std::make_pair(true, top);
    };

    const auto [ok1, top1] = peaks_match(r.v1, ones_targets, true);
    const auto [ok0, top0] = peaks_match(r.v0, zero_targets, false);
    if (ok1 && ok0) {
      ++pass_seeds;
    } else if (first_fail.empty()) {
      first_fail = "seed " + std::to_string(700 + s) + ": 1-run peaks " +
                   join_scales(top1) + " vs {6,11,16}, 0-run peaks " +
                   join_scales(top0) + " vs {2,7,12}";
    }
  }
  Outcome o;
  o.pass = pass_seeds == 8;
  o.detail = std::to_string(pass_seeds) +
             "/8 seeds recover 1-run peaks {6,11,16}+-1 and 0-run peaks "
             "{2,7,12}+-1 (2^19-bin sessions)" +
             (first_fail.empty() ? "" : "; first failure: " + first_fail);
  return o;
}

// 8. Kolmogorov-distance calibration: genuinely normal 512-sample windows
//    sit below 0.08, standardized heavy-tail (index 0.8) windows sit above
//    0.2, at the advertised rates.
Outcome c08_kolmogorov_calibration() {
  mrt::Rng normal_rng(880001);
  int normal_ok = 0;
  for (int w = 0; w < 1000; ++w) {
    std::vector<double> win(512);
    for (auto& v : win) v = normal_rng.normal(0.0, 1.0);
    if (mrt::kolmogorov_to_normal(win) < 0.08) ++normal_ok;
  }
  mrt::Rng pareto_rng(880002);
  int pareto_ok = 0;
  for (int w = 0; w < 1000; ++w) {
    std::vector<double> win(512);
    for (auto& v : win) v = pareto_rng.pareto(0.8, 1.0);
    if (mrt::kolmogorov_to_normal(win) > 0.2) ++pareto_ok;
  }
  Outcome o;
  o.pass = normal_ok >= 990 && pareto_ok >= 950;
  o.detail = "normal windows d_K<0.08: " + num(normal_ok / 10.0) +
             "% (need >=99%); heavy-tail(0.8) d_K>0.2: " +
             num(pareto_ok / 10.0) + "% (need >=95%); 1000x512 samples each";
  return o;
}

// Shared Monte-Carlo machinery for the session-doubling regime criteria.
// Pilot-tuned pair spanning the cap-vs-users^(1/p) boundary: the near
// regime (2000 users, cap 8, boundary 2000^(2/3) ~ 159) aggregates into
// window-Gaussian traffic; the far regime (24 users, cap 256, boundary
// 24^(2/3) ~ 8.3) does not. Round-trip/idle means of 2/4 bins keep per-bin
// emission counts high enough that window Gaussianity saturates in the
// near regime.
mrt::SimConfig doubling_cfg(std::uint64_t users, std::uint64_t max_window,
                            std::uint64_t seed) {
  mrt::SimConfig cfg;
  cfg.model = mrt::Model::SlowStart;
  cfg.users = users;
  cfg.bins_log2 = 16;
  cfg.seed = seed;
  cfg.load.p = 1.5;
  cfg.slow_start_max = max_window;
  cfg.rtt = {mrt::LightTailFamily::Exponential, 2.0, 0.0};
  cfg.off = {mrt::LightTailFamily::Exponential, 4.0, 0.0};
  return cfg;
}

double mean_window_distance(const mrt::BinnedTrace& trace) {
  const mrt::KolmogorovSeries k = mrt::windowed_kolmogorov(trace, 512);
  double sum = 0.0;
  int n = 0;
  for (const auto& d : k.distances)
    if (d) {
      sum += *d;
      ++n;
    }
  return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

// 9. Regime separation for the session-doubling model: the many-users /
//    small-cap regime looks Gaussian in windowed marginals, the few-users /
//    large-cap regime does not, and the multiscale deviation score D is
//    monotone in the cap.
Outcome c09_regime_separation() {
  const int seeds = 16;
  double near_sum = 0.0, far_sum = 0.0;
  double d_sum[3] = {0.0, 0.0, 0.0};
  const std::uint64_t caps[3] = {8, 64, 256};
  for (int s = 1; s <= seeds; ++s) {
    const std::uint64_t seed = static_cast<std::uint64_t>(900 + s);
    near_sum += mean_window_distance(
        mrt::simulate(doubling_cfg(2000, 8, seed)));
    const mrt::BinnedTrace far_trace =
        mrt::simulate(doubling_cfg(24, 256, seed));
    far_sum += mean_window_distance(far_trace);
    for (int c = 0; c < 3; ++c) {
      const mrt::BinnedTrace t =
          c == 2 ? far_trace : mrt::simulate(doubling_cfg(24, caps[c], seed));
      d_sum[c] +=
          mrt::tool3_gaussian_deviation(mrt::make_dyadic(t.values), 6).D;
    }
  }
  const double near_mean = near_sum / seeds;
  const double far_mean = far_sum / seeds;
  const double d0 = d_sum[0] / seeds, d1 = d_sum[1] / seeds,
               d2 = d_sum[2] / seeds;
  Outcome o;
  const bool monotone = d0 < d1 && d1 < d2;
  o.pass = near_mean < 0.1 && far_mean > 0.2 && monotone;
  o.detail = "near(2000 users, cap 8) mean d_K " + num(near_mean) +
             " < 0.1; far(24 users, cap 256) " + num(far_mean) +
             " > 0.2; D at caps {8,64,256} = {" + num(d0) + "," + num(d1) +
             "," + num(d2) + "} monotone: " + (monotone ? "yes" : "NO") +
             "; 2^16 bins, 16 seeds";
  return o;
}

// 10. Sign of the windowed burstiness score: every far-regime seed is
//     negative (windows with more traffic are closer to Gaussian), while
//     the near regime is not meaningfully below zero in Monte-Carlo mean.
Outcome c10_burstiness_sign() {
  const auto o_of = [](const mrt::BinnedTrace& t) {
    // k=3,s=9 at 2^16 bins is outside the default guard rails (documented
    // override): window counts per scale are 128/64/32.
    return mrt::tool4_burstiness(mrt::make_dyadic(t.values), 3, 9, true).O;
  };
  double far_max = -std::numeric_limits<double>::infinity();
  for (int s = 1; s <= 16; ++s)
    far_max = std::max(
        far_max, o_of(mrt::simulate(doubling_cfg(
                     24, 256, static_cast<std::uint64_t>(900 + s)))));
  double near_sum = 0.0;
  for (int s = 1; s <= 32; ++s)
    near_sum += o_of(mrt::simulate(
        doubling_cfg(2000, 8, static_cast<std::uint64_t>(900 + s))));
  const double near_mean = near_sum / 32;
  Outcome o;
  o.pass = far_max < 0.0 && near_mean > -0.1;
  o.detail = "far regime per-seed max O " + num(far_max) +
             " < 0 (16 seeds); near regime mean O " + num(near_mean) +
             " > -0.1 (32 seeds); k=3, s=9, 2^16 bins";
  return o;
}

// 11. Conservation and determinism: the emission schedule splits every
//     session budget exactly, and identical configs give byte-identical
//     trace files.
Outcome c11_conservation_determinism() {
  std::uint64_t checked = 0;
  for (const std::uint64_t cap : {std::uint64_t{4}, std::uint64_t{32},
                                  std::uint64_t{256}}) {
    for (std::uint64_t load = 1; load <= 100000; ++load) {
      const std::vector<std::uint64_t> sched =
          mrt::slow_start_schedule(load, cap);
      std::uint64_t sum = 0;
      for (std::uint64_t w : sched) sum += w;
      if (sum != load) {
        Outcome o;
        o.detail = "schedule sum " + std::to_string(sum) + " != load " +
                   std::to_string(load) + " at cap " + std::to_string(cap);
        return o;
      }
      ++checked;
    }
  }

  const auto text_of = [](const mrt::BinnedTrace& t) {
    std::string out;
    char buf[64];
    for (double v : t.values) {
      std::snprintf(buf, sizeof buf, "%.17g\n", v);
      out += buf;
    }
    return out;
  };
  bool identical = true;
  for (const mrt::Model model :
       {mrt::Model::Combined, mrt::Model::SlowStart, mrt::Model::OnOff}) {
    mrt::SimConfig cfg;
    cfg.model = model;
    cfg.users = 16;
    cfg.bins_log2 = 12;
    cfg.seed = 77;
    if (model == mrt::Model::Combined)
      cfg.levels = {mrt::LevelSpec::exponential(256, 256)};
    identical = identical &&
                text_of(mrt::simulate(cfg)) == text_of(mrt::simulate(cfg));
  }
  Outcome o;
  o.pass = identical;
  o.detail = std::to_string(checked) +
             " session budgets split exactly (caps {4,32,256} x 10^5 "
             "loads); repeated runs byte-identical for 3 models: " +
             (identical ? "yes" : "NO");
  return o;
}

// 12. Splitting a multi-connection packet log by connection key and merging
//     the groups must reproduce the original event multiset exactly.
Outcome c12_parsing_partition() {
  mrt::Rng rng(1212);
  const int conns = 27;
  std::vector<std::string> keys;
  for (int c = 0; c < conns; ++c)
    keys.push_back("10.0." + std::to_string(c / 8) + "." +
                   std::to_string(c % 8) + " 10.1.0." + std::to_string(c) +
                   " " + std::to_string(1024 + c) + " " +
                   std::to_string(80 + c % 3));

  std::vector<std::pair<double, double>> original;
  std::vector<std::string> lines;
  for (int e = 0; e < 3000; ++e) {
    const int c = e < conns ? e : static_cast<int>(rng.below(conns));
    const double t = rng.uniform(0.0, 1000.0);
    const double size = 40.0 + static_cast<double>(rng.below(1500));
    original.emplace_back(t, size);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g %.17g ", t, size);
    lines.push_back(std::string(buf) + keys[static_cast<std::size_t>(c)]);
  }
  for (std::size_t i = lines.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(lines[i - 1], lines[j]);
  }
  std::string text = "# synthetic connection log\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    text += lines[i];
    text += '\n';
    if (i % 500 == 250) text += "\n";  // blank lines must be ignored
  }

  std::istringstream split_in(text);
  const std::map<mrt::ConnectionKey, mrt::PacketTrace> groups =
      mrt::parse_connections(split_in);
  std::vector<std::pair<double, double>> merged;
  for (const auto& [key, trace] : groups)
    for (const mrt::PacketEvent& ev : trace.events())
      merged.emplace_back(ev.timestamp, ev.size);

  std::istringstream all_in(text);
  const mrt::PacketTrace all = mrt::parse_all_connections(all_in);
  std::vector<std::pair<double, double>> aggregate;
  for (const mrt::PacketEvent& ev : all.events())
    aggregate.emplace_back(ev.timestamp, ev.size);

  std::sort(original.begin(), original.end());
  std::sort(merged.begin(), merged.end());
  std::sort(aggregate.begin(), aggregate.end());

  Outcome o;
  const bool split_ok = merged == original;
  const bool agg_ok = aggregate == original;
  o.pass = split_ok && agg_ok &&
           groups.size() == static_cast<std::size_t>(conns);
  o.detail = "3000 events, " + std::to_string(groups.size()) +
             " connections: split+merge == original multiset: " +
             (split_ok ? "yes" : "NO") +
             "; aggregate parse == original: " + (agg_ok ? "yes" : "NO") +
             " (exact doubles)";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {1, "estimator-oracle-equivalence", c01_estimator_oracles},
    {2, "energy-averaging-identity", c02_energy_identity},
    {3, "white-noise-slope", c03_white_noise_slope},
    {4, "heavy-tail-energy-linearity", c04_energy_linearity},
    {5, "level-bump-and-spike-decay", c05_level_bump_and_spike_decay},
    {6, "level-tools-accuracy", c06_level_tools},
    {7, "interval-detection-reconstruction", c07_interval_detection},
    {8, "kolmogorov-calibration", c08_kolmogorov_calibration},
    {9, "doubling-regime-separation", c09_regime_separation},
    {10, "burstiness-sign", c10_burstiness_sign},
    {11, "conservation-and-determinism", c11_conservation_determinism},
    {12, "parsing-partition", c12_parsing_partition},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > 12) {
        std::cerr << "acceptance: --only expects 1..12\n";
        return 2;
      }
    } else if (arg == "--list") {
      for (const Criterion& c : kCriteria)
        std::printf("%2d %s\n", c.id, c.name);
      return 0;
    } else {
      std::cerr << "usage: acceptance [--only N] [--list]\n";
      return 2;
    }
  }

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] %02d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures;
}
