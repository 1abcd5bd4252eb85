/*
 * Copyright 2026 The nicholson-dde Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "nicholson/rate_term.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "random_specs.hpp"

namespace nicholson {
namespace {

using testing::uniform;

TEST(RateTerm, SaturatingSlopes) {
  const auto q = RateTerm::saturating(PeriodicSignal::constant(3.0));
  EXPECT_EQ(q.slope_zero(0.0), 3.0);
  EXPECT_EQ(q.slope_inf(0.0), 0.0);
}

TEST(RateTerm, SlopeInterpSlopes) {
  const auto s = RateTerm::slope_interp(PeriodicSignal::constant(1.0), PeriodicSignal::constant(4.0));
  EXPECT_EQ(slope_zero(s, 0.3), 1.0);
  EXPECT_EQ(slope_inf(s, 0.3), 4.0);
}

TEST(RateTerm, LinearSlopesFollowSignal) {
  const auto s = RateTerm::linear(PeriodicSignal(2.0, {{1, 1.0, 0.0}}, 1.0));
  EXPECT_DOUBLE_EQ(s.slope_zero(0.0), 3.0);
  EXPECT_DOUBLE_EQ(s.slope_inf(0.0), 3.0);
}

TEST(RateTerm, ClosedFormValues) {
  const auto c = PeriodicSignal::constant;
  EXPECT_DOUBLE_EQ(RateTerm::linear(c(2.0)).value(0.0, 3.0), 6.0);
  EXPECT_DOUBLE_EQ(RateTerm::slope_interp(c(1.0), c(4.0)).value(0.0, 1.0), 1.0 * (1.0 + 3.0 * 0.5));
  EXPECT_DOUBLE_EQ(RateTerm::saturating(c(3.0)).value(0.0, 2.0), 2.0);
  EXPECT_TRUE(RateTerm().is_zero());
  EXPECT_EQ(RateTerm().value(1.0, 5.0), 0.0);
}

TEST(RateTermProperty, ZeroAtOriginAndNonnegative) {
  testing::Rng rng(10);
  for (int trial = 0; trial < 300; ++trial) {
    const auto term = testing::random_term(rng, 0.0, 5.0, 1.0);
    for (int k = 0; k < 20; ++k) {
      const double t = uniform(rng, -3.0, 3.0);
      EXPECT_EQ(term.value(t, 0.0), 0.0);
      EXPECT_GE(term.value(t, std::exp(uniform(rng, -10.0, 10.0))), 0.0);
    }
  }
}

TEST(RateTermProperty, RatioApproachesClosedFormSlopes) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto term = testing::random_term(rng, 0.0, 5.0, 1.0);
    const double t = uniform(rng, 0.0, 1.0);
    const double s0 = term.slope_zero(t);
    const double sinf = term.slope_inf(t);
    EXPECT_LE(std::abs(term.value(t, 1e-6) / 1e-6 - s0), 1e-4 * std::max(1.0, std::abs(s0)));
    EXPECT_LE(std::abs(term.value(t, 1e6) / 1e6 - sinf), 1e-4 * std::max(1.0, std::abs(sinf)));
  }
}

TEST(RateTermProperty, ForwardDifferenceAtZeroMatchesSlope) {
  testing::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto term = testing::random_term(rng, 0.0, 5.0, 1.0);
    const double t = uniform(rng, 0.0, 1.0);
    const double dx = 1e-7;
    const double fd = (term.value(t, dx) - term.value(t, 0.0)) / dx;
    EXPECT_NEAR(fd, term.slope_zero(t), 1e-5 * std::max(1.0, term.slope_zero(t)));
  }
}

TEST(RateTermProperty, RatioWithinInterpolationEndpoints) {
  testing::Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto term = testing::random_term(rng, 0.0, 5.0, 1.0);
    const double t = uniform(rng, 0.0, 1.0);
    const double lo = std::min(term.slope_zero(t), term.slope_inf(t));
    const double hi = std::max(term.slope_zero(t), term.slope_inf(t));
    EXPECT_EQ(term.min_ratio(t), lo);
    EXPECT_EQ(term.max_ratio(t), hi);
    for (int k = 0; k < 20; ++k) {
      const double x = std::exp(uniform(rng, -12.0, 12.0));
      const double r = term.ratio(t, x);
      EXPECT_GE(r, lo - 1e-12 * hi);
      EXPECT_LE(r, hi + 1e-12 * hi);
      EXPECT_LE(r, term.ratio_upper_bound());
    }
  }
}

TEST(RateTermProperty, RatioIsMonotoneInX) {
  testing::Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto term = testing::random_term(rng, 0.0, 5.0, 1.0);
    const double t = uniform(rng, 0.0, 1.0);
    const bool rising = term.slope_inf(t) >= term.slope_zero(t);
    double previous = term.ratio(t, 0.0);
    for (double x = 0.01; x < 1e4; x *= 1.5) {
      const double r = term.ratio(t, x);
      if (rising) {
        EXPECT_GE(r, previous - 1e-12);
      } else {
        EXPECT_LE(r, previous + 1e-12);
      }
      previous = r;
    }
  }
}

TEST(RateTerm, SlopeGapBoundCoversSamples) {
  testing::Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const auto term = testing::random_term(rng, 0.0, 5.0, 1.0);
    for (int k = 0; k < 50; ++k) {
      const double t = uniform(rng, 0.0, 1.0);
      EXPECT_LE(std::abs(term.slope_inf(t) - term.slope_zero(t)), term.slope_gap_bound());
    }
  }
}

}  // namespace
}  // namespace nicholson
