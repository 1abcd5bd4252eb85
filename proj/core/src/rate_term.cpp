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
#include <utility>

namespace nicholson {

std::string_view to_string(RateKind kind) noexcept {
  switch (kind) {
    case RateKind::Linear:
      return "Linear";
    case RateKind::SlopeInterp:
      return "SlopeInterp";
    case RateKind::Saturating:
      return "Saturating";
  }
  return "Linear";
}

RateTerm RateTerm::linear(PeriodicSignal slope) {
  return RateTerm(RateKind::Linear, std::move(slope), PeriodicSignal{});
}

RateTerm RateTerm::slope_interp(PeriodicSignal slope_zero, PeriodicSignal slope_inf) {
  return RateTerm(RateKind::SlopeInterp, std::move(slope_zero), std::move(slope_inf));
}

RateTerm RateTerm::saturating(PeriodicSignal ceiling) {
  return RateTerm(RateKind::Saturating, std::move(ceiling), PeriodicSignal{});
}

double RateTerm::value(double t, double x) const noexcept {
  switch (kind_) {
    case RateKind::Linear:
      return primary_(t) * x;
    case RateKind::SlopeInterp: {
      const double s0 = primary_(t);
      const double s_inf = secondary_(t);
      return x * (s0 + (s_inf - s0) * (x / (1.0 + x)));
    }
    case RateKind::Saturating:
      return primary_(t) * (x / (1.0 + x));
  }
  return 0.0;
}

double RateTerm::ratio(double t, double x) const noexcept {
  switch (kind_) {
    case RateKind::Linear:
      return primary_(t);
    case RateKind::SlopeInterp: {
      const double s0 = primary_(t);
      const double s_inf = secondary_(t);
      return s0 + (s_inf - s0) * (x / (1.0 + x));
    }
    case RateKind::Saturating:
      return primary_(t) / (1.0 + x);
  }
  return 0.0;
}

double RateTerm::slope_zero(double t) const noexcept { return primary_(t); }

double RateTerm::slope_inf(double t) const noexcept {
  switch (kind_) {
    case RateKind::Linear:
      return primary_(t);
    case RateKind::SlopeInterp:
      return secondary_(t);
    case RateKind::Saturating:
      return 0.0;
  }
  return 0.0;
}

double RateTerm::min_ratio(double t) const noexcept {
  return std::min(slope_zero(t), slope_inf(t));
}

double RateTerm::max_ratio(double t) const noexcept {
  return std::max(slope_zero(t), slope_inf(t));
}

double RateTerm::ratio_upper_bound() const noexcept {
  if (kind_ == RateKind::SlopeInterp) {
    return std::max(primary_.upper_bound(), secondary_.upper_bound());
  }
  return primary_.upper_bound();
}

double RateTerm::slope_gap_bound() const noexcept {
  switch (kind_) {
    case RateKind::Linear:
      return 0.0;
    case RateKind::SlopeInterp:
      return sup_abs_difference(secondary_, primary_);
    case RateKind::Saturating:
      return primary_.upper_bound();
  }
  return 0.0;
}

double RateTerm::slope_lipschitz_bound() const noexcept {
  return std::max(primary_.lipschitz_bound(), secondary_.lipschitz_bound());
}

bool RateTerm::is_zero() const noexcept {
  return primary_.upper_bound() == 0.0 && secondary_.upper_bound() == 0.0;
}

}  // namespace nicholson
