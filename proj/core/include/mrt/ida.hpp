// SPDX-License-Identifier: MIT
//
// Interval Detection Algorithm: reads the ON/OFF interval structure of a 0/1
// session bitmap directly, with no model fitting. Gap lengths are bucketed
// into logarithmic classes (class i holds lengths in [b^i, b^{i+1})); the
// bitmap is then coarsened stage by stage - at stage i every gap of class
// <= i is filled with ones - and the histogram of the resulting 1-run
// lengths is recorded per stage. Normalizations turn those histograms into
// an intensity image and two summary profiles.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mrt/trace.hpp"

namespace mrt {

struct IdaConfig {
  double base = 2.0;      // class base b > 1 (sqrt(2) supported)
  double gamma = 0.1;     // stage-pick threshold in (0,1)
  double c1 = 3.0;        // column contrast: strong if m1 > c1*m2 ...
  double c2 = 0.3;        // ... and m2 > c2*m1
  double epsilon = 1e-12; // divisor floor for single-entry columns
  // Normalize all rows by the dominant row's picked stage weight instead of
  // each row's own.
  bool global_stage = false;
};

struct IdaResult {
  IdaConfig config{};
  std::size_t session_length = 0;
  int artifact_class = 0;  // floor(log_b length): holds the wrap-around
                           // final interval, flagged so plots can gray it out

  // Part 1: total zeros per gap class, from the unmodified bitmap.
  std::vector<double> gap_histogram;  // size = classes

  // Part 2/3: a[class][stage] = ones in runs of that class after filling
  // gaps of class < stage... recorded before each stage's fill, then
  // row-normalized by the picked stage's fill weight.
  std::vector<std::vector<double>> stage_array;  // classes x stages
  std::vector<double> fill_weights;              // ones count per stage
  std::vector<int> picked_stage;                 // Part 3 choice per row

  // Part 4: contrast-normalized image, classes x (stages + 1 + 1): the
  // stage columns, a zero separator column, then the gap column. All
  // entries lie in [0, 1].
  std::vector<std::vector<double>> im;

  // Row sums of im over the stage columns, normalized to max 1.
  std::vector<double> v1;
  // The gap column of im, normalized to max 1.
  std::vector<double> v0;

  std::size_t classes() const noexcept { return stage_array.size(); }
  std::size_t stages() const noexcept {
    return stage_array.empty() ? 0 : stage_array.front().size();
  }
};

// Run the algorithm on one session bitmap. Throws degenerate_data_error if
// the bitmap is all zeros or all ones, std::invalid_argument on bad config.
IdaResult run_ida(const SessionBitmap& session, const IdaConfig& cfg = {});

// Superpose several results (padding to common shape, summing the raw
// arrays, then redoing the final contrast normalization). All inputs must
// share the same base; throws std::invalid_argument otherwise and
// empty_input_error on an empty list.
IdaResult aggregate_ida(const std::vector<IdaResult>& results);

}  // namespace mrt
