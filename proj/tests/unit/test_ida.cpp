// SPDX-License-Identifier: MIT
//
// The periodic worked example pins every stage of the algorithm end to end
// with exact expected numbers derived by hand: a 16-ones/4-zeros period
// repeated 51 times. The remaining tests check the structural invariants on
// randomized bitmaps.
#include "mrt/ida.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mrt/errors.hpp"
#include "mrt/rng.hpp"
#include "mrt/simulate.hpp"

namespace {

mrt::SessionBitmap periodic_bitmap(std::size_t periods, std::size_t ones,
                                   std::size_t zeros) {
  mrt::SessionBitmap s;
  for (std::size_t p = 0; p < periods; ++p) {
    s.bits.insert(s.bits.end(), ones, 1);
    s.bits.insert(s.bits.end(), zeros, 0);
  }
  return s;
}

mrt::SessionBitmap random_bitmap(std::size_t n, std::uint64_t seed) {
  // Bursty 0/1 pattern with runs across several classes.
  mrt::Rng rng(seed);
  mrt::SessionBitmap s;
  while (s.bits.size() < n) {
    const std::size_t ones = 1 + rng.below(60);
    const std::size_t zeros = 1 + rng.below(40);
    s.bits.insert(s.bits.end(), ones, 1);
    s.bits.insert(s.bits.end(), zeros, 0);
  }
  s.bits.resize(n);
  s.bits.front() = 1;  // ensure both symbols present after resize
  s.bits.back() = 0;
  return s;
}

TEST(Ida, PeriodicWorkedExampleExact) {
  // 51 periods of (16 ones, 4 zeros): length 1020.
  auto bitmap = periodic_bitmap(51, 16, 4);
  ASSERT_EQ(bitmap.bits.size(), 1020u);
  auto r = mrt::run_ida(bitmap);

  // Geometry: floor(log2 1020) = 9 -> 10 classes, 11 stages.
  EXPECT_EQ(r.session_length, 1020u);
  EXPECT_EQ(r.artifact_class, 9);
  ASSERT_EQ(r.classes(), 10u);
  ASSERT_EQ(r.stages(), 11u);

  // Fill weights: 816 ones until stage 2 fills the class-2 gaps, then 1020.
  for (std::size_t i = 0; i < r.stages(); ++i)
    EXPECT_DOUBLE_EQ(r.fill_weights[i], i < 2 ? 816.0 : 1020.0) << i;

  // Stage picks: the 1-run row (class 4) collapses at stage 3; the merged
  // full-length row (class 9) has no drop and falls back to its max stage.
  EXPECT_EQ(r.picked_stage[4], 3);
  EXPECT_EQ(r.picked_stage[9], 3);

  // Row 4 = 816/1020 = 0.8 at stages 0-2; row 9 = 1 from stage 3 on.
  for (std::size_t j = 0; j < r.classes(); ++j) {
    for (std::size_t i = 0; i < r.stages(); ++i) {
      double want = 0.0;
      if (j == 4 && i <= 2) want = 0.8;
      if (j == 9 && i >= 3) want = 1.0;
      EXPECT_NEAR(r.stage_array[j][i], want, 1e-12) << "a[" << j << "][" << i
                                                    << "]";
    }
  }

  // Gap mass: 51*4 zeros in class 2, normalized by w[picked of row 2]=816.
  for (std::size_t j = 0; j < r.classes(); ++j)
    EXPECT_NEAR(r.gap_histogram[j], j == 2 ? 204.0 / 816.0 : 0.0, 1e-12);

  // Image: single-entry columns saturate at 1; separator column is zero.
  ASSERT_EQ(r.im.front().size(), r.stages() + 2);
  for (std::size_t i = 0; i < r.stages(); ++i) {
    for (std::size_t j = 0; j < r.classes(); ++j) {
      double want = 0.0;
      if (j == 4 && i <= 2) want = 1.0;
      if (j == 9 && i >= 3) want = 1.0;
      EXPECT_NEAR(r.im[j][i], want, 1e-12);
    }
  }
  for (std::size_t j = 0; j < r.classes(); ++j) {
    EXPECT_DOUBLE_EQ(r.im[j][r.stages()], 0.0);  // separator
    EXPECT_NEAR(r.im[j][r.stages() + 1], j == 2 ? 1.0 : 0.0, 1e-12);
  }

  // Profiles: v1 peaks at the artifact row (8 saturated stages) with the
  // true 1-run class at 3/8; v0 flags the true gap class.
  for (std::size_t j = 0; j < r.classes(); ++j) {
    double want_v1 = 0.0;
    if (j == 4) want_v1 = 3.0 / 8.0;
    if (j == 9) want_v1 = 1.0;
    EXPECT_NEAR(r.v1[j], want_v1, 1e-12) << "v1[" << j << "]";
    EXPECT_NEAR(r.v0[j], j == 2 ? 1.0 : 0.0, 1e-12) << "v0[" << j << "]";
  }
}

TEST(Ida, GapMassConservation) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    auto bitmap = random_bitmap(5000, seed);
    auto r = mrt::run_ida(bitmap);
    double zeros = 0.0;
    for (auto b : bitmap.bits) zeros += b == 0 ? 1.0 : 0.0;
    // gap_histogram was divided row-wise by picked fill weights; undo that
    // to recover the raw class masses, which partition the zero count.
    double reconstructed = 0.0;
    for (std::size_t j = 0; j < r.classes(); ++j)
      reconstructed +=
          r.gap_histogram[j] *
          r.fill_weights[static_cast<std::size_t>(r.picked_stage[j])];
    EXPECT_NEAR(reconstructed, zeros, 1e-9 * zeros);
  }
}

TEST(Ida, FillWeightsMonotoneAndSaturating) {
  for (std::uint64_t seed : {5u, 6u}) {
    auto bitmap = random_bitmap(3000, seed);
    auto r = mrt::run_ida(bitmap);
    for (std::size_t i = 1; i < r.stages(); ++i)
      EXPECT_GE(r.fill_weights[i], r.fill_weights[i - 1]);
    EXPECT_DOUBLE_EQ(r.fill_weights.back(),
                     static_cast<double>(bitmap.bits.size()));
    // Once everything is merged, the only 1-run is the whole session.
    const std::size_t last = r.stages() - 1;
    for (std::size_t j = 0; j < r.classes(); ++j) {
      const double raw =
          r.stage_array[j][last] *
          r.fill_weights[static_cast<std::size_t>(r.picked_stage[j])];
      if (j == static_cast<std::size_t>(r.artifact_class))
        EXPECT_NEAR(raw, static_cast<double>(bitmap.bits.size()), 1e-9);
      else
        EXPECT_NEAR(raw, 0.0, 1e-12);
    }
  }
}

TEST(Ida, ImageStaysInUnitInterval) {
  for (std::uint64_t seed : {7u, 8u}) {
    auto r = mrt::run_ida(random_bitmap(4000, seed));
    for (const auto& row : r.im)
      for (double v : row) {
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
      }
    for (double v : r.v1) ASSERT_LE(v, 1.0);
    for (double v : r.v0) ASSERT_LE(v, 1.0);
    EXPECT_DOUBLE_EQ(*std::max_element(r.v1.begin(), r.v1.end()), 1.0);
    EXPECT_DOUBLE_EQ(*std::max_element(r.v0.begin(), r.v0.end()), 1.0);
  }
}

TEST(Ida, DoublingTheBitmapShiftsEveryClassByOne) {
  auto bitmap = random_bitmap(2000, 11);
  mrt::SessionBitmap doubled;
  for (auto b : bitmap.bits) {
    doubled.bits.push_back(b);
    doubled.bits.push_back(b);
  }
  auto r = mrt::run_ida(bitmap);
  auto rd = mrt::run_ida(doubled);
  ASSERT_EQ(rd.classes(), r.classes() + 1);
  ASSERT_EQ(rd.stages(), r.stages() + 1);
  EXPECT_EQ(rd.artifact_class, r.artifact_class + 1);

  // Raw payloads (normalization undone) shift by one class/stage and scale
  // by two; stage i of the original corresponds to stage i+1 of the double.
  auto raw_gap = [](const mrt::IdaResult& res, std::size_t j) {
    return res.gap_histogram[j] *
           res.fill_weights[static_cast<std::size_t>(res.picked_stage[j])];
  };
  auto raw_a = [](const mrt::IdaResult& res, std::size_t j, std::size_t i) {
    return res.stage_array[j][i] *
           res.fill_weights[static_cast<std::size_t>(res.picked_stage[j])];
  };
  for (std::size_t j = 0; j < r.classes(); ++j) {
    EXPECT_NEAR(raw_gap(rd, j + 1), 2.0 * raw_gap(r, j), 1e-9);
    EXPECT_EQ(rd.picked_stage[j + 1], r.picked_stage[j] + 1);
    for (std::size_t i = 0; i < r.stages(); ++i)
      EXPECT_NEAR(raw_a(rd, j + 1, i + 1), 2.0 * raw_a(r, j, i), 1e-9);
  }
  for (std::size_t i = 0; i < r.stages(); ++i)
    EXPECT_DOUBLE_EQ(rd.fill_weights[i + 1], 2.0 * r.fill_weights[i]);
}

TEST(Ida, AggregateOfOneIsItself) {
  auto r = mrt::run_ida(random_bitmap(3000, 12));
  auto agg = mrt::aggregate_ida({r});
  EXPECT_EQ(agg.stage_array, r.stage_array);
  EXPECT_EQ(agg.gap_histogram, r.gap_histogram);
  EXPECT_EQ(agg.fill_weights, r.fill_weights);
  EXPECT_EQ(agg.im, r.im);
  EXPECT_EQ(agg.v0, r.v0);
  EXPECT_EQ(agg.v1, r.v1);
  EXPECT_EQ(agg.artifact_class, r.artifact_class);
}

TEST(Ida, AggregateOfIdenticalCopiesKeepsTheImage) {
  auto r = mrt::run_ida(random_bitmap(3000, 13));
  auto agg = mrt::aggregate_ida({r, r, r});
  // Sums scale all columns uniformly; the contrast normalization divides
  // that right back out.
  ASSERT_EQ(agg.im.size(), r.im.size());
  for (std::size_t j = 0; j < r.im.size(); ++j)
    for (std::size_t i = 0; i < r.im[j].size(); ++i)
      EXPECT_NEAR(agg.im[j][i], r.im[j][i], 1e-12);
  for (std::size_t j = 0; j < r.v1.size(); ++j) {
    EXPECT_NEAR(agg.v1[j], r.v1[j], 1e-12);
    EXPECT_NEAR(agg.v0[j], r.v0[j], 1e-12);
  }
}

TEST(Ida, AggregateMixedSizesAndErrors) {
  auto small = mrt::run_ida(random_bitmap(500, 14));
  auto large = mrt::run_ida(random_bitmap(4000, 15));
  auto agg = mrt::aggregate_ida({small, large});
  EXPECT_EQ(agg.classes(), large.classes());
  EXPECT_EQ(agg.session_length, large.session_length);

  mrt::IdaConfig other;
  other.base = std::sqrt(2.0);
  auto odd = mrt::run_ida(random_bitmap(500, 16), other);
  EXPECT_THROW(mrt::aggregate_ida({small, odd}), std::invalid_argument);
  EXPECT_THROW(mrt::aggregate_ida({}), mrt::empty_input_error);
}

TEST(Ida, SqrtTwoBaseDoublesTheClassResolution) {
  auto bitmap = periodic_bitmap(51, 16, 4);
  mrt::IdaConfig cfg;
  cfg.base = std::sqrt(2.0);
  auto r = mrt::run_ida(bitmap, cfg);
  // floor(log_sqrt2(1020)) = floor(2 log2 1020) = 19 -> 20 classes.
  EXPECT_EQ(r.artifact_class, 19);
  ASSERT_EQ(r.classes(), 20u);
  // 16-long runs land in class 8, 4-long gaps in class 4.
  double gap_mass_4 = r.gap_histogram[4];
  EXPECT_GT(gap_mass_4, 0.0);
  for (std::size_t j = 0; j < r.classes(); ++j)
    if (j != 4) EXPECT_DOUBLE_EQ(r.gap_histogram[j], 0.0);
  EXPECT_GT(r.stage_array[8][0], 0.0);
}

TEST(Ida, DegenerateAndInvalidInputs) {
  mrt::SessionBitmap ones;
  ones.bits.assign(100, 1);
  EXPECT_THROW(mrt::run_ida(ones), mrt::degenerate_data_error);
  mrt::SessionBitmap zeros;
  zeros.bits.assign(100, 0);
  EXPECT_THROW(mrt::run_ida(zeros), mrt::degenerate_data_error);
  mrt::SessionBitmap bad;
  bad.bits = {1, 2, 0};
  EXPECT_THROW(mrt::run_ida(bad), std::invalid_argument);
  mrt::SessionBitmap tiny;
  tiny.bits = {1};
  EXPECT_THROW(mrt::run_ida(tiny), mrt::insufficient_data_error);

  mrt::SessionBitmap ok;
  ok.bits = {1, 0, 1, 0};
  mrt::IdaConfig bad_cfg;
  bad_cfg.gamma = 1.5;
  EXPECT_THROW(mrt::run_ida(ok, bad_cfg), std::invalid_argument);
  bad_cfg = {};
  bad_cfg.base = 1.0;
  EXPECT_THROW(mrt::run_ida(ok, bad_cfg), std::invalid_argument);
}

TEST(Ida, GlobalStageNormalizationUsesDominantRow) {
  auto bitmap = periodic_bitmap(51, 16, 4);
  mrt::IdaConfig cfg;
  cfg.global_stage = true;
  auto r = mrt::run_ida(bitmap, cfg);
  // Dominant row is the artifact row (mass 1020 > 816); its pick (stage 3,
  // weight 1020) now normalizes every row, including the gap histogram.
  EXPECT_NEAR(r.stage_array[4][0], 816.0 / 1020.0, 1e-12);
  EXPECT_NEAR(r.gap_histogram[2], 204.0 / 1020.0, 1e-12);
}

}  // namespace
