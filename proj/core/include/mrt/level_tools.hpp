// SPDX-License-Identifier: MIT
//
// Scale-domain reading tools on top of the multiresolution profiles:
//   1. slope-curvature level detector (candidate session levels),
//   2. flat-region finder (scale bands where the profile stops falling),
//   3. per-scale distance-to-Gaussian summary,
//   4. windowed burstiness score (does traffic volume drive non-Gaussianity?).
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mrt/multires.hpp"
#include "mrt/trace.hpp"

namespace mrt {

struct SlopeSeries {
  // S[i] = log2 A(scale i) - log2 A(scale i - 1), the slope INTO scale i;
  // Sc[i] = |S[i+1] - S[i]| / max(min(|S[i]|, |S[i+1]|), epsilon).
  // Entries are missing where either operand's profile value was zero.
  std::vector<std::optional<double>> S;
  std::vector<std::optional<double>> Sc;
  double epsilon = 0.01;
  int first_scale = 0;  // absolute scale of index 0 (from the profile)

  // Candidate levels: local maxima of Sc with positive strength (strict;
  // plateaus report their leftmost index; a missing neighbor counts as
  // lower, so a perfectly linear profile yields no candidates). Absolute
  // scales, sorted by curvature strength, strongest first.
  std::vector<int> level_scales;
  std::vector<double> level_strengths;
};

// Tool 1. Requires an Averaging profile with at least 4 usable (nonzero)
// scales; throws insufficient_data_error otherwise.
SlopeSeries tool1_level_detector(const MultiresProfile& averaging,
                                 double epsilon = 0.01);

struct FlatRegions {
  double threshold = -0.1;
  // Maximal runs of scales whose incoming slope exceeds `threshold`,
  // as inclusive [first, last] absolute-scale pairs.
  std::vector<std::pair<int, int>> regions;
  std::vector<std::optional<double>> S;  // the slopes used
  int first_scale = 0;
};

// Tool 2. Requires at least 2 usable scales.
FlatRegions tool2_flat_regions(const MultiresProfile& averaging,
                               double threshold = -0.1);

// Shared result shape for tools 3 and 4.
struct BurstinessReport {
  int k = 0;  // number of dyadic aggregation scales examined (j = 0..k-1)
  int s = 0;  // tool 4 window exponent (windows of 2^s coarse bins)

  // Tool 3: per-scale Kolmogorov distance of the aggregated series
  // (globally normalized per scale), nullopt where degenerate, and their
  // mean D over usable scales.
  std::vector<std::optional<double>> per_scale_D;
  double D = 0.0;

  // Tool 4: per-scale correlation C_j between windowed distances and
  // windowed traffic, the per-scale mean distance Dbar_j, and the combined
  // score O = sum C_j Dbar_j / sum Dbar_j in [-1, 1]. Scales with fewer
  // than 3 windows or degenerate correlations are nullopt.
  std::vector<std::optional<double>> per_scale_C;
  std::vector<std::optional<double>> per_scale_Dbar;
  double O = 0.0;
};

// Tool 3: D_j = Kolmogorov distance of the scale-j block-sum series
// (j = 0..k-1), normalized once per scale; D = mean over usable scales.
// Guard rail: k <= m - 10 so the coarsest series keeps >= 1024 points;
// pass force=true to override (a warning goes to stderr).
BurstinessReport tool3_gaussian_deviation(const DyadicView& x, int k,
                                          bool force = false);

// Tool 4: windowed variant. Per scale j the (globally normalized) block-sum
// series is cut into windows of 2^s points; D_{j,l} is each window's raw
// Kolmogorov distance, T_{j,l} its summed normalized traffic;
// C_j = pearson(D_j, T_j). Guard rails s >= 9 and k <= m - s - 7 keep >= 3
// windows of >= 512 points everywhere; force=true overrides with a warning.
BurstinessReport tool4_burstiness(const DyadicView& x, int k, int s = 9,
                                  bool force = false);

}  // namespace mrt
