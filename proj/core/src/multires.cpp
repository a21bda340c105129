// SPDX-License-Identifier: MIT
#include "mrt/multires.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "mrt/errors.hpp"

namespace mrt {

namespace {

void check_dyadic(const DyadicView& x, int min_m) {
  if (x.m < min_m)
    throw insufficient_data_error("series too short for block statistics");
  if (x.values.size() != (std::size_t{1} << x.m))
    throw std::invalid_argument("DyadicView length does not match 2^m");
}

double power_p(double value, double p) {
  if (p == 2.0) return value * value;
  if (p == 1.0) return value;
  return std::pow(value, p);
}

double root_p(double value, double p) {
  if (p == 2.0) return std::sqrt(value);
  if (p == 1.0) return value;
  return std::pow(value, 1.0 / p);
}

// FFT of the zero-padded, centered series -> inverse of the power spectrum,
// i.e. the raw correlation sums sum_s y_s y_{s+k} (circular over length L).
// FFTW's unnormalized transform pair scales by L, hence the 1/L below.
// FFTW planning is not thread-safe; this library plans serially.
std::vector<double> correlation_sums(const std::vector<double>& centered,
                                     std::size_t L) {
  double* buf = fftw_alloc_real(L);
  fftw_complex* spec = fftw_alloc_complex(L / 2 + 1);
  if (!buf || !spec) throw std::bad_alloc();
  for (std::size_t i = 0; i < L; ++i)
    buf[i] = i < centered.size() ? centered[i] : 0.0;

  fftw_plan fwd = fftw_plan_dft_r2c_1d(static_cast<int>(L), buf, spec,
                                       FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);
  for (std::size_t i = 0; i < L / 2 + 1; ++i) {
    spec[i][0] = spec[i][0] * spec[i][0] + spec[i][1] * spec[i][1];
    spec[i][1] = 0.0;
  }
  fftw_plan bwd = fftw_plan_dft_c2r_1d(static_cast<int>(L), spec, buf,
                                       FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);

  std::vector<double> sums(L);
  for (std::size_t i = 0; i < L; ++i) sums[i] = buf[i] / static_cast<double>(L);
  fftw_free(buf);
  fftw_free(spec);
  return sums;
}

std::vector<double> centered_copy(const std::vector<double>& x, double* mean,
                                  double* ssq) {
  double mu = 0.0;
  for (double v : x) mu += v;
  mu /= static_cast<double>(x.size());
  std::vector<double> y(x.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = x[i] - mu;
    s += y[i] * y[i];
  }
  if (mean) *mean = mu;
  if (ssq) *ssq = s;
  return y;
}

}  // namespace

std::optional<double> MultiresProfile::log2_value(std::size_t index) const {
  const double v = scale_values.at(index);
  if (v <= 0.0) return std::nullopt;
  return std::log2(v);
}

MultiresProfile averaging_disjoint(const DyadicView& x, double p) {
  check_dyadic(x, 1);
  if (!(p > 0.0)) throw std::invalid_argument("averaging exponent p must be > 0");
  MultiresProfile out;
  out.p = p;
  out.m = x.m;
  out.definition = Definition::DisjointBlocks;
  out.kind = ProfileKind::Averaging;
  out.scale_values.reserve(x.m);

  // cur holds the scale-j block means; one halving step per scale.
  std::vector<double> cur = x.values;
  for (int j = 0; j < x.m; ++j) {
    const std::size_t pairs = cur.size() / 2;
    double acc = 0.0;
    std::vector<double> next(pairs);
    for (std::size_t k = 0; k < pairs; ++k) {
      const double d = std::abs(cur[2 * k + 1] - cur[2 * k]);
      acc += power_p(d, p);
      next[k] = 0.5 * (cur[2 * k] + cur[2 * k + 1]);
    }
    out.scale_values.push_back(root_p(acc / static_cast<double>(pairs), p));
    cur = std::move(next);
  }
  return out;
}

MultiresProfile energy_disjoint(const DyadicView& x) {
  check_dyadic(x, 1);
  MultiresProfile out;
  out.p = 2.0;
  out.m = x.m;
  out.definition = Definition::DisjointBlocks;
  out.kind = ProfileKind::Energy;
  out.scale_values.reserve(x.m);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // sums holds raw scale-j block sums; the 2^{-j/2} weighting is applied to
  // the values themselves before differencing, as the definition states.
  std::vector<double> sums = x.values;
  for (int j = 0; j < x.m; ++j) {
    const std::size_t pairs = sums.size() / 2;
    const double weight = std::exp2(-0.5 * j);
    double acc = 0.0;
    std::vector<double> next(pairs);
    for (std::size_t k = 0; k < pairs; ++k) {
      const double lo = sums[2 * k] * weight;
      const double hi = sums[2 * k + 1] * weight;
      const double d = std::abs(hi - lo) * inv_sqrt2;
      acc += d * d;
      next[k] = sums[2 * k] + sums[2 * k + 1];
    }
    out.scale_values.push_back(acc / static_cast<double>(pairs));
    sums = std::move(next);
  }
  return out;
}

MultiresProfile averaging_circular(const DyadicView& x, double p) {
  check_dyadic(x, 1);
  if (!(p > 0.0)) throw std::invalid_argument("averaging exponent p must be > 0");
  MultiresProfile out;
  out.p = p;
  out.m = x.m;
  out.definition = Definition::CircularBlocks;
  out.kind = ProfileKind::Averaging;
  out.scale_values.reserve(x.m);

  const std::size_t M = x.values.size();
  // sums[s] = circular block sum starting at s with length 2^j; the
  // recurrence sums_{j+1}(s) = sums_j(s) + sums_j(s + 2^j mod M) visits
  // every shifted block once, so the mean over s IS the full shifted mean.
  std::vector<double> sums = x.values;
  std::vector<double> next(M);
  for (int j = 0; j < x.m; ++j) {
    const std::size_t h = std::size_t{1} << j;
    const double inv_len = std::exp2(-static_cast<double>(j));
    double acc = 0.0;
    for (std::size_t s = 0; s < M; ++s) {
      const double a = sums[s] * inv_len;
      const double b = sums[(s + h) & (M - 1)] * inv_len;
      acc += power_p(std::abs(b - a), p);
      next[s] = sums[s] + sums[(s + h) & (M - 1)];
    }
    out.scale_values.push_back(root_p(acc / static_cast<double>(M), p));
    std::swap(sums, next);
  }
  return out;
}

MultiresProfile energy_circular(const DyadicView& x) {
  check_dyadic(x, 1);
  MultiresProfile out;
  out.p = 2.0;
  out.m = x.m;
  out.definition = Definition::CircularBlocks;
  out.kind = ProfileKind::Energy;
  out.scale_values.reserve(x.m);

  const std::size_t M = x.values.size();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<double> sums = x.values;
  std::vector<double> next(M);
  for (int j = 0; j < x.m; ++j) {
    const std::size_t h = std::size_t{1} << j;
    const double weight = std::exp2(-0.5 * j);
    double acc = 0.0;
    for (std::size_t s = 0; s < M; ++s) {
      const double a = sums[s] * weight;
      const double b = sums[(s + h) & (M - 1)] * weight;
      const double d = std::abs(b - a) * inv_sqrt2;
      acc += d * d;
      next[s] = sums[s] + sums[(s + h) & (M - 1)];
    }
    out.scale_values.push_back(acc / static_cast<double>(M));
    std::swap(sums, next);
  }
  return out;
}

MultiresProfile averaging_circular_naive(const DyadicView& x, double p) {
  check_dyadic(x, 1);
  if (!(p > 0.0)) throw std::invalid_argument("averaging exponent p must be > 0");
  MultiresProfile out;
  out.p = p;
  out.m = x.m;
  out.definition = Definition::CircularBlocks;
  out.kind = ProfileKind::Averaging;

  const std::size_t M = x.values.size();
  auto at = [&](std::size_t i) { return x.values[i & (M - 1)]; };
  for (int j = 0; j < x.m; ++j) {
    const std::size_t len = std::size_t{1} << j;
    double acc = 0.0;
    // Literal quadruple sum: for every shift l of the block grid and every
    // block index k, difference of two adjacent len-blocks.
    for (std::size_t l = 0; l < 2 * len; ++l) {
      for (std::size_t k = 0; k < M / (2 * len); ++k) {
        const std::size_t base = l + 2 * len * k;
        double first = 0.0, second = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
          first += at(base + i);
          second += at(base + len + i);
        }
        acc += power_p(std::abs(second - first), p);
      }
    }
    // 2^{-(m + jp)} sum, then the 1/p root; rewritten as mean of block-mean
    // differences over the M visited positions.
    const double mean = acc / static_cast<double>(M);
    out.scale_values.push_back(root_p(mean, p) * std::exp2(-static_cast<double>(j)));
  }
  return out;
}

AutocorrSeries autocorrelation(const std::vector<double>& x,
                               std::size_t max_lag) {
  if (x.size() < 2)
    throw insufficient_data_error("autocorrelation needs >= 2 samples");
  if (max_lag < 1 || max_lag >= x.size())
    throw std::invalid_argument("max_lag must be in [1, n-1]");

  AutocorrSeries out;
  double ssq = 0.0;
  std::vector<double> y = centered_copy(x, &out.mean, &ssq);
  out.variance = ssq / static_cast<double>(x.size());
  if (ssq <= 0.0)
    throw degenerate_data_error("autocorrelation undefined: zero variance");

  // Zero-pad to at least 2n so circular wrap never contaminates lags < n.
  std::size_t L = 1;
  while (L < 2 * x.size()) L <<= 1;
  std::vector<double> sums = correlation_sums(y, L);
  out.values.resize(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) out.values[k] = sums[k] / ssq;
  out.values[0] = 1.0;
  return out;
}

std::vector<double> circular_autocorrelation(const std::vector<double>& x) {
  if (x.size() < 2)
    throw insufficient_data_error("autocorrelation needs >= 2 samples");
  double ssq = 0.0;
  std::vector<double> y = centered_copy(x, nullptr, &ssq);
  if (ssq <= 0.0)
    throw degenerate_data_error("autocorrelation undefined: zero variance");
  std::vector<double> sums = correlation_sums(y, x.size());
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = sums[k] / sums[0];
  out[0] = 1.0;
  return out;
}

MultiresProfile averaging_via_autocorr(const DyadicView& x) {
  check_dyadic(x, 1);
  MultiresProfile out;
  out.p = 2.0;
  out.m = x.m;
  out.definition = Definition::CircularBlocks;
  out.kind = ProfileKind::Averaging;
  out.scale_values.reserve(x.m);

  const std::size_t M = x.values.size();
  double ssq = 0.0;
  std::vector<double> y = centered_copy(x.values, nullptr, &ssq);
  if (ssq <= 0.0) {
    // Constant series: every profile entry is exactly zero.
    out.scale_values.assign(x.m, 0.0);
    return out;
  }
  const double variance = ssq / static_cast<double>(M);
  std::vector<double> sums = correlation_sums(y, M);
  std::vector<double> R(M);
  for (std::size_t k = 0; k < M; ++k) R[k] = sums[k] / sums[0];

  // The largest index touched is 2^j + i <= 2^{j+1} - 1 <= M - 1 for every
  // j <= m - 1, so no folding is ever needed on R.
  for (int j = 0; j < x.m; ++j) {
    const std::size_t h = std::size_t{1} << j;
    double bracket = 1.0 - R[h];
    for (std::size_t i = 1; i < h; ++i) {
      const double weight =
          1.0 - static_cast<double>(i) / static_cast<double>(h);
      bracket += weight * (2.0 * R[i] - R[h + i] - R[h - i]);
    }
    const double a2 = variance * std::exp2(1.0 - j) * bracket;
    out.scale_values.push_back(std::sqrt(std::max(a2, 0.0)));
  }
  return out;
}

}  // namespace mrt
