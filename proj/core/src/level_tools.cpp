// SPDX-License-Identifier: MIT
#include "mrt/level_tools.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mrt/errors.hpp"
#include "mrt/gaussianity.hpp"

namespace mrt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t usable_scales(const MultiresProfile& profile) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < profile.scale_values.size(); ++i)
    if (profile.log2_value(i).has_value()) ++count;
  return count;
}

// S[i] = log2 A(i) - log2 A(i-1); missing where either endpoint is missing.
std::vector<std::optional<double>> slopes(const MultiresProfile& profile) {
  const std::size_t n = profile.scale_values.size();
  std::vector<std::optional<double>> S(n);
  for (std::size_t i = 1; i < n; ++i) {
    const auto hi = profile.log2_value(i);
    const auto lo = profile.log2_value(i - 1);
    if (hi && lo) S[i] = *hi - *lo;
  }
  return S;
}

}  // namespace

SlopeSeries tool1_level_detector(const MultiresProfile& averaging,
                                 double epsilon) {
  if (averaging.kind != ProfileKind::Averaging)
    throw std::invalid_argument("tool1 expects an Averaging profile");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("tool1: epsilon must be > 0");
  if (usable_scales(averaging) < 4)
    throw insufficient_data_error(
        "tool1 needs at least 4 usable (nonzero) scales");

  SlopeSeries out;
  out.epsilon = epsilon;
  out.first_scale = averaging.first_scale();
  out.S = slopes(averaging);

  const std::size_t n = out.S.size();
  out.Sc.assign(n, std::nullopt);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!out.S[i] || !out.S[i + 1]) continue;
    const double a = *out.S[i];
    const double b = *out.S[i + 1];
    out.Sc[i] =
        std::abs(b - a) / std::max(std::min(std::abs(a), std::abs(b)), epsilon);
  }

  // Local maxima of Sc; a plateau counts once at its leftmost index, and a
  // missing neighbor (series edge or zero-valued scale) counts as lower.
  struct Candidate {
    int scale;
    double strength;
  };
  std::vector<Candidate> found;
  std::size_t i = 0;
  while (i < n) {
    if (!out.Sc[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && out.Sc[j + 1] && *out.Sc[j + 1] == *out.Sc[i]) ++j;
    const double left = (i > 0 && out.Sc[i - 1]) ? *out.Sc[i - 1] : kNegInf;
    const double right =
        (j + 1 < n && out.Sc[j + 1]) ? *out.Sc[j + 1] : kNegInf;
    if (*out.Sc[i] > left && *out.Sc[i] > right && *out.Sc[i] > 0.0)
      found.push_back({averaging.scale_of(i), *out.Sc[i]});
    i = j + 1;
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.strength > b.strength;
                   });
  for (const Candidate& c : found) {
    out.level_scales.push_back(c.scale);
    out.level_strengths.push_back(c.strength);
  }
  return out;
}

FlatRegions tool2_flat_regions(const MultiresProfile& averaging,
                               double threshold) {
  if (averaging.kind != ProfileKind::Averaging)
    throw std::invalid_argument("tool2 expects an Averaging profile");
  if (usable_scales(averaging) < 2)
    throw insufficient_data_error("tool2 needs at least 2 usable scales");

  FlatRegions out;
  out.threshold = threshold;
  out.first_scale = averaging.first_scale();
  out.S = slopes(averaging);

  // Maximal runs of scales whose incoming slope stays above the threshold;
  // a missing slope breaks the run.
  int run_start = -1;
  for (std::size_t i = 0; i <= out.S.size(); ++i) {
    const bool flat =
        i < out.S.size() && out.S[i].has_value() && *out.S[i] > threshold;
    if (flat && run_start < 0) run_start = static_cast<int>(i);
    if (!flat && run_start >= 0) {
      out.regions.emplace_back(averaging.scale_of(run_start),
                               averaging.scale_of(i - 1));
      run_start = -1;
    }
  }
  return out;
}

namespace {

void check_tool_input(const DyadicView& x, int k) {
  if (x.values.size() != (std::size_t{1} << x.m))
    throw std::invalid_argument("DyadicView length does not match 2^m");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
}

std::vector<double> halve(const std::vector<double>& cur) {
  std::vector<double> next(cur.size() / 2);
  for (std::size_t i = 0; i < next.size(); ++i)
    next[i] = cur[2 * i] + cur[2 * i + 1];
  return next;
}

}  // namespace

BurstinessReport tool3_gaussian_deviation(const DyadicView& x, int k,
                                          bool force) {
  check_tool_input(x, k);
  if (k > x.m - 1)
    throw std::invalid_argument(
        "k too large: coarsest scale needs at least 2 blocks");
  if (k > x.m - 10) {
    if (!force)
      throw std::invalid_argument(
          "k > m-10 leaves under 1024 points at the coarsest scale; "
          "pass force to override");
    std::cerr << "warning: k > m-10; coarse-scale distances rest on few "
                 "points\n";
  }

  BurstinessReport out;
  out.k = k;
  double sum = 0.0;
  std::size_t usable = 0;
  std::vector<double> cur = x.values;
  for (int j = 0; j < k; ++j) {
    try {
      const double d = kolmogorov_to_normal(cur);
      out.per_scale_D.push_back(d);
      sum += d;
      ++usable;
    } catch (const degenerate_data_error&) {
      out.per_scale_D.push_back(std::nullopt);
    }
    if (j + 1 < k) cur = halve(cur);
  }
  if (usable == 0)
    throw insufficient_data_error(
        "every aggregation scale was degenerate (constant)");
  out.D = sum / static_cast<double>(usable);
  return out;
}

BurstinessReport tool4_burstiness(const DyadicView& x, int k, int s,
                                  bool force) {
  check_tool_input(x, k);
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  const bool guarded = s >= 9 && k <= x.m - s - 7;
  if (!guarded) {
    if (!force)
      throw std::invalid_argument(
          "tool4 guard rails are s >= 9 and k <= m-s-7; pass force to "
          "override");
    std::cerr << "warning: tool4 running outside its guard rails (s=" << s
              << ", k=" << k << ", m=" << x.m << ")\n";
  }

  BurstinessReport out;
  out.k = k;
  out.s = s;
  const std::size_t window = std::size_t{1} << s;

  double weighted = 0.0, weight = 0.0;
  std::vector<double> cur = x.values;
  for (int j = 0; j < k; ++j) {
    const std::size_t count = cur.size() / window;
    if (count < 3) {
      out.per_scale_C.push_back(std::nullopt);
      out.per_scale_Dbar.push_back(std::nullopt);
      if (j + 1 < k) cur = halve(cur);
      continue;
    }
    // Normalize once per scale; window statistics are then taken verbatim
    // (window distances use the global centering, window traffic is the sum
    // of normalized values).
    double mean = 0.0;
    for (double v : cur) mean += v;
    mean /= static_cast<double>(cur.size());
    double var = 0.0;
    for (double v : cur) var += (v - mean) * (v - mean);
    var /= static_cast<double>(cur.size());
    if (var <= 0.0) {
      out.per_scale_C.push_back(std::nullopt);
      out.per_scale_Dbar.push_back(std::nullopt);
      if (j + 1 < k) cur = halve(cur);
      continue;
    }
    const double inv_sd = 1.0 / std::sqrt(var);

    std::vector<double> distances, traffic;
    distances.reserve(count);
    traffic.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
      std::vector<double> z(window);
      double t = 0.0;
      for (std::size_t i = 0; i < window; ++i) {
        z[i] = (cur[w * window + i] - mean) * inv_sd;
        t += z[i];
      }
      distances.push_back(ks_distance_to_normal(EmpiricalCdf(std::move(z))));
      traffic.push_back(t);
    }
    const double dbar =
        std::accumulate(distances.begin(), distances.end(), 0.0) /
        static_cast<double>(count);
    try {
      const double c = pearson(distances, traffic);
      out.per_scale_C.push_back(c);
      out.per_scale_Dbar.push_back(dbar);
      weighted += c * dbar;
      weight += dbar;
    } catch (const degenerate_data_error&) {
      out.per_scale_C.push_back(std::nullopt);
      out.per_scale_Dbar.push_back(std::nullopt);
    }
    if (j + 1 < k) cur = halve(cur);
  }
  if (weight <= 0.0)
    throw insufficient_data_error(
        "tool4: no scale had enough usable windows");
  out.O = weighted / weight;
  return out;
}

}  // namespace mrt
