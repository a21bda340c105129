// SPDX-License-Identifier: MIT
#include "mrt/ida.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "mrt/errors.hpp"

namespace mrt {

namespace {

// floor(log_base(len)). Exact bit arithmetic for base 2; for other bases a
// tiny upward nudge keeps exact powers (b^i computed in floating point) in
// class i instead of dropping to i-1 over rounding noise.
int class_of_length(std::size_t len, double base) {
  if (base == 2.0)
    return static_cast<int>(std::bit_width(len)) - 1;
  return static_cast<int>(
      std::floor(std::log(static_cast<double>(len)) / std::log(base) + 1e-9));
}

struct Run {
  std::size_t start = 0;
  std::size_t len = 0;
};

std::vector<Run> runs_of(const std::vector<std::uint8_t>& bits,
                         std::uint8_t value) {
  std::vector<Run> out;
  std::size_t i = 0;
  while (i < bits.size()) {
    if (bits[i] != value) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < bits.size() && bits[j] == value) ++j;
    out.push_back({i, j - i});
    i = j;
  }
  return out;
}

void validate_config(const IdaConfig& cfg) {
  if (!(cfg.base > 1.0))
    throw std::invalid_argument("ida: base must be > 1");
  if (!(cfg.gamma > 0.0) || !(cfg.gamma < 1.0))
    throw std::invalid_argument("ida: gamma must lie in (0, 1)");
  if (!(cfg.c1 > 0.0) || !(cfg.c2 > 0.0) || !(cfg.c1 > cfg.c2))
    throw std::invalid_argument("ida: contrast constants need c1 > c2 > 0");
  if (!(cfg.epsilon > 0.0))
    throw std::invalid_argument("ida: epsilon must be > 0");
}

// Part 4 for one column: divide by the second-largest entry (floored at
// epsilon so single-entry columns saturate rather than blow up) and clamp
// into [0, 1]. With the default contrast constants the divide-only branch
// of the rule is unreachable once clamping is applied, so one path serves
// both cases.
void contrast_normalize(const std::vector<double>& column, double epsilon,
                        std::vector<double>* out) {
  double m1 = 0.0, m2 = 0.0;
  for (double v : column) {
    if (v > m1) {
      m2 = m1;
      m1 = v;
    } else if (v > m2) {
      m2 = v;
    }
  }
  const double denom = std::max(m2, epsilon);
  out->resize(column.size());
  for (std::size_t j = 0; j < column.size(); ++j)
    (*out)[j] = std::clamp(column[j] / denom, 0.0, 1.0);
}

void normalize_to_max(std::vector<double>* v) {
  double mx = 0.0;
  for (double x : *v) mx = std::max(mx, x);
  if (mx > 0.0)
    for (double& x : *v) x /= mx;
}

// Rebuild im / v1 / v0 from the (already stage-normalized) arrays. Shared
// by run_ida and aggregate_ida so superposition reuses the same final step.
void finalize_image(IdaResult* r, const IdaConfig& cfg) {
  const std::size_t C = r->stage_array.size();
  const std::size_t S = C == 0 ? 0 : r->stage_array.front().size();
  r->im.assign(C, std::vector<double>(S + 2, 0.0));

  std::vector<double> column(C), normalized;
  for (std::size_t i = 0; i < S; ++i) {
    for (std::size_t j = 0; j < C; ++j) column[j] = r->stage_array[j][i];
    contrast_normalize(column, cfg.epsilon, &normalized);
    for (std::size_t j = 0; j < C; ++j) r->im[j][i] = normalized[j];
  }
  // Column S stays zero: visual separator between stages and gap profile.
  contrast_normalize(r->gap_histogram, cfg.epsilon, &normalized);
  for (std::size_t j = 0; j < C; ++j) r->im[j][S + 1] = normalized[j];

  r->v1.assign(C, 0.0);
  r->v0.assign(C, 0.0);
  for (std::size_t j = 0; j < C; ++j) {
    for (std::size_t i = 0; i < S; ++i) r->v1[j] += r->im[j][i];
    r->v0[j] = r->im[j][S + 1];
  }
  normalize_to_max(&r->v1);
  normalize_to_max(&r->v0);
}

}  // namespace

IdaResult run_ida(const SessionBitmap& session, const IdaConfig& cfg) {
  validate_config(cfg);
  const std::vector<std::uint8_t>& bits = session.bits;
  const std::size_t n = bits.size();
  if (n < 2)
    throw insufficient_data_error("ida: bitmap needs at least 2 bins");

  bool any0 = false, any1 = false;
  for (std::uint8_t b : bits) {
    if (b == 0)
      any0 = true;
    else if (b == 1)
      any1 = true;
    else
      throw std::invalid_argument("ida: bitmap values must be 0 or 1");
  }
  if (!any0 || !any1)
    throw degenerate_data_error("ida: bitmap is constant");

  IdaResult r;
  r.config = cfg;
  r.session_length = n;
  r.artifact_class = class_of_length(n, cfg.base);
  const std::size_t classes =
      static_cast<std::size_t>(r.artifact_class) + 1;
  const std::size_t stages = classes + 1;

  // Part 1: gap mass per class, straight off the unmodified bitmap.
  r.gap_histogram.assign(classes, 0.0);
  for (const Run& run : runs_of(bits, 0))
    r.gap_histogram[static_cast<std::size_t>(
        class_of_length(run.len, cfg.base))] += static_cast<double>(run.len);

  // Part 2: per stage, record the 1-run length histogram of the current
  // bitmap, then fill every gap of class <= stage.
  r.stage_array.assign(classes, std::vector<double>(stages, 0.0));
  r.fill_weights.assign(stages, 0.0);
  std::vector<std::uint8_t> work = bits;
  for (std::size_t stage = 0; stage < stages; ++stage) {
    for (const Run& run : runs_of(work, 1))
      r.stage_array[static_cast<std::size_t>(
          class_of_length(run.len, cfg.base))][stage] +=
          static_cast<double>(run.len);
    for (const Run& run : runs_of(work, 0)) {
      if (class_of_length(run.len, cfg.base) <= static_cast<int>(stage))
        std::fill(work.begin() + run.start,
                  work.begin() + run.start + run.len, std::uint8_t{1});
    }
    double ones = 0.0;
    for (std::uint8_t b : work) ones += b;
    r.fill_weights[stage] = ones;
  }

  // Part 3: per class row, pick the stage where the row's mass collapses
  // (first top-down drop through gamma * rowmax), falling back to the stage
  // of the row maximum, and normalize the row by that stage's fill weight.
  r.picked_stage.assign(classes, 0);
  std::vector<double> row_max(classes, 0.0);
  for (std::size_t j = 0; j < classes; ++j) {
    double mx = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < stages; ++i) {
      if (r.stage_array[j][i] > mx) {
        mx = r.stage_array[j][i];
        arg = i;
      }
    }
    row_max[j] = mx;
    int picked = static_cast<int>(arg);
    if (mx > 0.0) {
      for (std::size_t i = stages - 1; i >= 1; --i) {
        if (r.stage_array[j][i] < cfg.gamma * mx &&
            r.stage_array[j][i - 1] >= cfg.gamma * mx) {
          picked = static_cast<int>(i);
          break;
        }
      }
    }
    r.picked_stage[j] = picked;
  }
  int global_pick = 0;
  if (cfg.global_stage) {
    std::size_t dominant = 0;
    for (std::size_t j = 1; j < classes; ++j)
      if (row_max[j] > row_max[dominant]) dominant = j;
    global_pick = r.picked_stage[dominant];
  }
  for (std::size_t j = 0; j < classes; ++j) {
    const int pick = cfg.global_stage ? global_pick : r.picked_stage[j];
    const double w = r.fill_weights[static_cast<std::size_t>(pick)];
    for (std::size_t i = 0; i < stages; ++i) r.stage_array[j][i] /= w;
    r.gap_histogram[j] /= w;
  }

  finalize_image(&r, cfg);
  return r;
}

IdaResult aggregate_ida(const std::vector<IdaResult>& results) {
  if (results.empty())
    throw empty_input_error("ida aggregate: no results given");
  const IdaConfig cfg = results.front().config;
  for (const IdaResult& r : results)
    if (r.config.base != cfg.base)
      throw std::invalid_argument("ida aggregate: mixed class bases");

  IdaResult agg;
  agg.config = cfg;
  std::size_t classes = 0, stages = 0;
  for (const IdaResult& r : results) {
    classes = std::max(classes, r.classes());
    stages = std::max(stages, r.stages());
    agg.session_length = std::max(agg.session_length, r.session_length);
    agg.artifact_class = std::max(agg.artifact_class, r.artifact_class);
  }

  agg.stage_array.assign(classes, std::vector<double>(stages, 0.0));
  agg.gap_histogram.assign(classes, 0.0);
  agg.fill_weights.assign(stages, 0.0);
  for (const IdaResult& r : results) {
    for (std::size_t j = 0; j < r.classes(); ++j) {
      agg.gap_histogram[j] += r.gap_histogram[j];
      for (std::size_t i = 0; i < r.stages(); ++i)
        agg.stage_array[j][i] += r.stage_array[j][i];
    }
    // A shorter session's missing stages are "fully filled": continue its
    // weight series with its final value instead of padding zeros.
    for (std::size_t i = 0; i < stages; ++i)
      agg.fill_weights[i] +=
          r.fill_weights[std::min(i, r.fill_weights.size() - 1)];
  }
  // picked_stage is per-session diagnostics; an aggregate has none.
  finalize_image(&agg, cfg);
  return agg;
}

}  // namespace mrt
