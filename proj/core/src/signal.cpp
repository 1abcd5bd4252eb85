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
#include "nicholson/signal.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "nicholson/errors.hpp"

namespace nicholson {

namespace {

// Merges harmonics of equal order as coefficient differences a - b.
std::map<int, std::pair<double, double>> difference_coefficients(const PeriodicSignal& a,
                                                                 const PeriodicSignal& b) {
  std::map<int, std::pair<double, double>> out;
  for (const auto& h : a.harmonics()) {
    auto& c = out[h.order];
    c.first += h.cos_coeff;
    c.second += h.sin_coeff;
  }
  for (const auto& h : b.harmonics()) {
    auto& c = out[h.order];
    c.first -= h.cos_coeff;
    c.second -= h.sin_coeff;
  }
  return out;
}

}  // namespace

PeriodicSignal::PeriodicSignal(double mean, std::vector<Harmonic> harmonics, double period)
    : mean_(mean), harmonics_(std::move(harmonics)), period_(period) {
  if (!std::isfinite(mean_)) {
    throw ConfigError("periodic signal: mean must be finite");
  }
  if (harmonics_.empty()) {
    period_ = 0.0;
  } else if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw ConfigError("periodic signal: harmonics require a positive finite period");
  }
  for (const auto& h : harmonics_) {
    if (h.order < 1) {
      throw ConfigError("periodic signal: harmonic order must be a positive integer, got " +
                        std::to_string(h.order));
    }
    if (!std::isfinite(h.cos_coeff) || !std::isfinite(h.sin_coeff)) {
      throw ConfigError("periodic signal: harmonic coefficients must be finite");
    }
  }
  if (lower_bound() < 0.0) {
    throw ConfigError("periodic signal: mean " + std::to_string(mean_) +
                      " does not dominate the harmonic amplitudes; the signal may go negative");
  }
}

PeriodicSignal PeriodicSignal::constant(double value) { return PeriodicSignal(value, {}, 0.0); }

double PeriodicSignal::value(double t) const noexcept {
  if (harmonics_.empty()) {
    return mean_;
  }
  // Reduce to one period first so value(t + T) matches value(t).
  const double cycles = t / period_;
  const double phase = 2.0 * std::numbers::pi * (cycles - std::floor(cycles));
  // Same accumulation order as upper_bound()/lower_bound(), which keeps the
  // bounds valid after rounding.
  double v = mean_;
  for (const auto& h : harmonics_) {
    const double angle = h.order * phase;
    v += h.cos_coeff * std::cos(angle);
    v += h.sin_coeff * std::sin(angle);
  }
  return v;
}

double PeriodicSignal::upper_bound() const noexcept {
  double v = mean_;
  for (const auto& h : harmonics_) {
    v += std::abs(h.cos_coeff);
    v += std::abs(h.sin_coeff);
  }
  return v;
}

double PeriodicSignal::lower_bound() const noexcept {
  double v = mean_;
  for (const auto& h : harmonics_) {
    v -= std::abs(h.cos_coeff);
    v -= std::abs(h.sin_coeff);
  }
  return v;
}

double PeriodicSignal::lipschitz_bound() const noexcept {
  if (harmonics_.empty()) {
    return 0.0;
  }
  double l = 0.0;
  for (const auto& h : harmonics_) {
    l += 2.0 * std::numbers::pi * h.order / period_ *
         (std::abs(h.cos_coeff) + std::abs(h.sin_coeff));
  }
  return l;
}

PeriodicSignal PeriodicSignal::with_mean(double mean) const {
  return PeriodicSignal(mean, harmonics_, period_);
}

double sup_abs_difference(const PeriodicSignal& a, const PeriodicSignal& b) {
  double bound = std::abs(a.mean() - b.mean());
  for (const auto& [order, c] : difference_coefficients(a, b)) {
    bound += std::abs(c.first) + std::abs(c.second);
  }
  return bound;
}

double difference_lipschitz_bound(const PeriodicSignal& a, const PeriodicSignal& b) {
  const double period = a.is_constant() ? b.period() : a.period();
  if (period <= 0.0) {
    return 0.0;
  }
  double l = 0.0;
  for (const auto& [order, c] : difference_coefficients(a, b)) {
    l += 2.0 * std::numbers::pi * order / period * (std::abs(c.first) + std::abs(c.second));
  }
  return l;
}

}  // namespace nicholson
