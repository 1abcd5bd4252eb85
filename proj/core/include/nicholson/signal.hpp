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

#include <vector>

namespace nicholson {

/// Nonnegative finite trigonometric series
///
///   value(t) = mean + sum_m [a_m cos(2 pi m t / T) + b_m sin(2 pi m t / T)].
///
/// Nonnegativity is certified at construction by the coefficient bound
/// mean - sum_m (|a_m| + |b_m|) >= 0. A signal without harmonics is constant
/// and carries no period.
class PeriodicSignal {
 public:
  struct Harmonic {
    int order = 1;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;

    friend bool operator==(const Harmonic&, const Harmonic&) = default;
  };

  /// The zero signal.
  PeriodicSignal() = default;

  PeriodicSignal(double mean, std::vector<Harmonic> harmonics, double period);

  static PeriodicSignal constant(double value);

  [[nodiscard]] double operator()(double t) const noexcept { return value(t); }
  [[nodiscard]] double value(double t) const noexcept;

  [[nodiscard]] double mean() const noexcept { return mean_; }
  [[nodiscard]] const std::vector<Harmonic>& harmonics() const noexcept { return harmonics_; }
  /// Zero for constant signals.
  [[nodiscard]] double period() const noexcept { return period_; }
  [[nodiscard]] bool is_constant() const noexcept { return harmonics_.empty(); }

  /// mean + sum(|a_m| + |b_m|); never below value(t).
  [[nodiscard]] double upper_bound() const noexcept;
  /// mean - sum(|a_m| + |b_m|); never above value(t).
  [[nodiscard]] double lower_bound() const noexcept;
  /// Bound on |value'(t)|.
  [[nodiscard]] double lipschitz_bound() const noexcept;

  /// Copy of this signal with a different mean (harmonics kept).
  [[nodiscard]] PeriodicSignal with_mean(double mean) const;

  friend bool operator==(const PeriodicSignal&, const PeriodicSignal&) = default;

 private:
  double mean_ = 0.0;
  std::vector<Harmonic> harmonics_;
  double period_ = 0.0;
};

/// Coefficient bound on sup_t |a(t) - b(t)|.
[[nodiscard]] double sup_abs_difference(const PeriodicSignal& a, const PeriodicSignal& b);

/// Lipschitz bound of t -> a(t) - b(t).
[[nodiscard]] double difference_lipschitz_bound(const PeriodicSignal& a, const PeriodicSignal& b);

}  // namespace nicholson
