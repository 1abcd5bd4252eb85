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
#pragma once

#include <string_view>
#include <utility>

#include "nicholson/signal.hpp"

namespace nicholson {

enum class RateKind { Linear, SlopeInterp, Saturating };

[[nodiscard]] std::string_view to_string(RateKind kind) noexcept;

/// A nonnegative rate r(t, x) with r(t, 0) = 0 whose per-capita ratio r/x has
/// closed-form limits at x -> 0+ and x -> infinity.
///
///   Linear       r = s(t) x
///   SlopeInterp  r = x [s0(t) + (s_inf(t) - s0(t)) x / (1 + x)]
///   Saturating   r = q(t) x / (1 + x)
///
/// For every family the ratio r/x is monotone in x and therefore lies between
/// slope_zero(t) and slope_inf(t).
class RateTerm {
 public:
  /// Identically zero (a Linear term with zero slope).
  RateTerm() = default;

  static RateTerm linear(PeriodicSignal slope);
  static RateTerm slope_interp(PeriodicSignal slope_zero, PeriodicSignal slope_inf);
  static RateTerm saturating(PeriodicSignal ceiling);

  [[nodiscard]] RateKind kind() const noexcept { return kind_; }

  [[nodiscard]] double value(double t, double x) const noexcept;
  /// value(t, x) / x, continuously extended to x = 0.
  [[nodiscard]] double ratio(double t, double x) const noexcept;

  [[nodiscard]] double slope_zero(double t) const noexcept;
  [[nodiscard]] double slope_inf(double t) const noexcept;

  /// inf and sup over x > 0 of ratio(t, x).
  [[nodiscard]] double min_ratio(double t) const noexcept;
  [[nodiscard]] double max_ratio(double t) const noexcept;

  /// sup over (t, x) of ratio(t, x), from the signal coefficient bounds.
  [[nodiscard]] double ratio_upper_bound() const noexcept;
  /// Coefficient bound on sup_t |slope_inf(t) - slope_zero(t)|.
  [[nodiscard]] double slope_gap_bound() const noexcept;
  /// Lipschitz bound in t shared by slope_zero, slope_inf, min_ratio and max_ratio.
  [[nodiscard]] double slope_lipschitz_bound() const noexcept;

  [[nodiscard]] bool is_zero() const noexcept;

  /// Linear slope, SlopeInterp s0, or Saturating q.
  [[nodiscard]] const PeriodicSignal& primary() const noexcept { return primary_; }
  /// SlopeInterp s_inf; zero signal otherwise.
  [[nodiscard]] const PeriodicSignal& secondary() const noexcept { return secondary_; }

  friend bool operator==(const RateTerm&, const RateTerm&) = default;

 private:
  RateTerm(RateKind kind, PeriodicSignal primary, PeriodicSignal secondary)
      : kind_(kind), primary_(std::move(primary)), secondary_(std::move(secondary)) {}

  RateKind kind_ = RateKind::Linear;
  PeriodicSignal primary_;
  PeriodicSignal secondary_;
};

[[nodiscard]] inline double slope_zero(const RateTerm& term, double t) noexcept {
  return term.slope_zero(t);
}
[[nodiscard]] inline double slope_inf(const RateTerm& term, double t) noexcept {
  return term.slope_inf(t);
}

}  // namespace nicholson
