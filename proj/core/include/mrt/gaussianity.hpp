// SPDX-License-Identifier: MIT
//
// Distance-to-Gaussian machinery: exact Kolmogorov statistic of an empirical
// CDF against the standard normal, whole-series and windowed variants, and
// the distance/traffic correlation used by the burstiness tools.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mrt/trace.hpp"

namespace mrt {

// Standard normal CDF via erfc; absolute error well below 1e-12.
double normal_cdf(double x);

// Sorted-sample empirical CDF.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);  // sorts; n >= 1
  double operator()(double t) const;                   // fraction <= t
  const std::vector<double>& sorted_samples() const noexcept {
    return samples_;
  }
  std::size_t n() const noexcept { return samples_.size(); }

 private:
  std::vector<double> samples_;
};

// Exact sup_t |F_n(t) - Phi(t)|, evaluated at both one-sided jumps of every
// sample point (no grid approximation). No normalization is applied here.
double ks_distance_to_normal(const EmpiricalCdf& cdf);

// Center by the sample mean, scale by the population standard deviation,
// then take the exact Kolmogorov distance to the standard normal.
// Throws degenerate_data_error if the sample variance is zero, and
// std::invalid_argument on fewer than 2 samples.
double kolmogorov_to_normal(const std::vector<double>& samples);

struct KolmogorovSeries {
  std::size_t window_size = 0;
  // One entry per complete window; nullopt marks a zero-variance window.
  std::vector<std::optional<double>> distances;
  // Raw (un-normalized) traffic sum of each window.
  std::vector<double> window_traffic;
};

// Split into floor(n/window) non-overlapping windows (trailing partial bins
// dropped), normalize each window independently, and record its Kolmogorov
// distance plus raw traffic. Requires window >= 2 and n >= 2*window
// (insufficient_data_error otherwise).
KolmogorovSeries windowed_kolmogorov(const BinnedTrace& trace,
                                     std::size_t window = 512);

// Pearson correlation of two equal-length series (n >= 2; throws
// degenerate_data_error when either side has zero variance).
double pearson(const std::vector<double>& a, const std::vector<double>& b);

// Pearson correlation between a windowed-Kolmogorov series' distances and
// its window traffic, skipping missing windows. Needs at least 3 usable
// pairs (insufficient_data_error otherwise).
double distance_traffic_correlation(const KolmogorovSeries& series);

}  // namespace mrt
