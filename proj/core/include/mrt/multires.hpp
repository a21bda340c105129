// SPDX-License-Identifier: MIT
//
// Multiresolution statistics of a 2^m-length series: the p-Averaging and
// Energy scale profiles under two block schemes, plus autocorrelation and an
// autocorrelation-based route to the second-order Averaging profile.
//
// Block schemes:
//   DisjointBlocks  - classic dyadic pyramid over disjoint blocks; the
//                     profile holds scales j = 1..m.
//   CircularBlocks  - every circular shift of the block origin contributes
//                     (indices fold mod 2^m); scales j = 0..m-1.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mrt/trace.hpp"

namespace mrt {

enum class Definition : int { DisjointBlocks = 1, CircularBlocks = 2 };
enum class ProfileKind { Averaging, Energy };

struct MultiresProfile {
  std::vector<double> scale_values;  // A_j^[p] or E_j; nonnegative
  double p = 2.0;                    // averaging exponent (2 for Energy)
  int m = 0;                         // input length was 2^m
  Definition definition = Definition::CircularBlocks;
  ProfileKind kind = ProfileKind::Averaging;

  // Absolute scale of scale_values[0]: 1 for disjoint blocks, 0 for circular.
  int first_scale() const noexcept {
    return definition == Definition::DisjointBlocks ? 1 : 0;
  }
  int scale_of(std::size_t index) const noexcept {
    return first_scale() + static_cast<int>(index);
  }
  // log2 of a profile entry; exact zeros are reported as missing rather
  // than -inf so plots and slope tools can skip them.
  std::optional<double> log2_value(std::size_t index) const;
};

// p-Averaging over disjoint dyadic blocks (p > 0). Input must be a 2^m
// series with m >= 1.
MultiresProfile averaging_disjoint(const DyadicView& x, double p);

// Energy over disjoint dyadic blocks, computed through its own
// 2^{-j/2}-scaled sum pipeline (numerically independent of averaging).
MultiresProfile energy_disjoint(const DyadicView& x);

// p-Averaging over circularly shifted blocks, O(m 2^m) pyramid form.
MultiresProfile averaging_circular(const DyadicView& x, double p);

// Energy over circularly shifted blocks.
MultiresProfile energy_circular(const DyadicView& x);

// Reference implementation of the circular-blocks p-Averaging straight from
// its quadruple-sum definition, O(4^m). Tests only; do not call on m > ~12.
MultiresProfile averaging_circular_naive(const DyadicView& x, double p);

struct AutocorrSeries {
  std::vector<double> values;  // Corr(0)..Corr(max_lag); values[0] == 1
  double mean = 0.0;
  double variance = 0.0;  // population variance
};

// Linear (non-circular) sample autocorrelation, FFT-accelerated:
//   Corr(k) = sum_{i<n-k} (x_i - xbar)(x_{i+k} - xbar) / sum_i (x_i - xbar)^2
// Requires 1 <= max_lag < n; throws degenerate_data_error on zero variance.
AutocorrSeries autocorrelation(const std::vector<double>& x,
                               std::size_t max_lag);

// Circular autocorrelation R(0)..R(n-1), indices folded mod n; R(0) == 1.
std::vector<double> circular_autocorrelation(const std::vector<double>& x);

// Second-order Averaging profile (circular blocks) evaluated through the
// circular autocorrelation:
//   A_j^2 = Var(X)/2^{j-1} * { 1 - R(2^j)
//           + sum_{i=1}^{2^j-1} (1 - i/2^j) [2R(i) - R(2^j+i) - R(2^j-i)] }.
// Agrees with averaging_circular(x, 2) to floating-point accuracy; kept as
// an independent route for cross-checking, not merged with it.
MultiresProfile averaging_via_autocorr(const DyadicView& x);

}  // namespace mrt
