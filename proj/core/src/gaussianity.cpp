// SPDX-License-Identifier: MIT
#include "mrt/gaussianity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mrt/errors.hpp"

namespace mrt {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty())
    throw empty_input_error("empirical CDF needs at least one sample");
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::operator()(double t) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), t);
  return static_cast<double>(it - samples_.begin()) /
         static_cast<double>(samples_.size());
}

double ks_distance_to_normal(const EmpiricalCdf& cdf) {
  // The sup over t of |F_n - Phi| is attained at a sample point, approaching
  // from below (F_n = (i-1)/n) or at the point itself (F_n = i/n). Checking
  // both one-sided values at every sample is therefore exact.
  const auto& xs = cdf.sorted_samples();
  const double n = static_cast<double>(xs.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double phi = normal_cdf(xs[i]);
    const double above = static_cast<double>(i + 1) / n - phi;
    const double below = phi - static_cast<double>(i) / n;
    sup = std::max({sup, above, below});
  }
  return sup;
}

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // population (divide by n)
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  for (double v : xs) m.mean += v;
  m.mean /= static_cast<double>(xs.size());
  for (double v : xs) m.variance += (v - m.mean) * (v - m.mean);
  m.variance /= static_cast<double>(xs.size());
  return m;
}

}  // namespace

double kolmogorov_to_normal(const std::vector<double>& samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("Kolmogorov distance needs >= 2 samples");
  const Moments m = moments(samples);
  if (m.variance <= 0.0)
    throw degenerate_data_error("Kolmogorov distance undefined: zero variance");
  const double inv_sd = 1.0 / std::sqrt(m.variance);
  std::vector<double> z(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    z[i] = (samples[i] - m.mean) * inv_sd;
  return ks_distance_to_normal(EmpiricalCdf(std::move(z)));
}

KolmogorovSeries windowed_kolmogorov(const BinnedTrace& trace,
                                     std::size_t window) {
  if (window < 2) throw std::invalid_argument("window must be >= 2");
  const std::size_t n = trace.values.size();
  if (n < 2 * window)
    throw insufficient_data_error(
        "windowed Kolmogorov needs at least two complete windows");

  KolmogorovSeries out;
  out.window_size = window;
  const std::size_t count = n / window;  // trailing partial window dropped
  out.distances.reserve(count);
  out.window_traffic.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    const auto first = trace.values.begin() + w * window;
    std::vector<double> slice(first, first + window);
    double traffic = 0.0;
    for (double v : slice) traffic += v;
    out.window_traffic.push_back(traffic);
    try {
      out.distances.push_back(kolmogorov_to_normal(slice));
    } catch (const degenerate_data_error&) {
      out.distances.push_back(std::nullopt);  // constant window
    }
  }
  return out;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("pearson: length mismatch");
  if (a.size() < 2)
    throw std::invalid_argument("pearson needs >= 2 pairs");
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  if (ma.variance <= 0.0 || mb.variance <= 0.0)
    throw degenerate_data_error("pearson undefined: zero variance");
  double cov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    cov += (a[i] - ma.mean) * (b[i] - mb.mean);
  cov /= static_cast<double>(a.size());
  const double r = cov / std::sqrt(ma.variance * mb.variance);
  return std::clamp(r, -1.0, 1.0);
}

double distance_traffic_correlation(const KolmogorovSeries& series) {
  std::vector<double> d, t;
  for (std::size_t i = 0; i < series.distances.size(); ++i) {
    if (!series.distances[i].has_value()) continue;
    d.push_back(*series.distances[i]);
    t.push_back(series.window_traffic[i]);
  }
  if (d.size() < 3)
    throw insufficient_data_error(
        "distance/traffic correlation needs >= 3 usable windows");
  return pearson(d, t);
}

}  // namespace mrt
