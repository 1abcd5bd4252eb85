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

#include <cstddef>
#include <span>
#include <vector>

#include "nicholson/rate_term.hpp"
#include "nicholson/signal.hpp"

namespace nicholson {

/// Nicholson production nonlinearity y e^{-y}; maximal value e^{-1} at y = 1.
[[nodiscard]] double nicholson_birth(double y) noexcept;

struct Species {
  RateTerm mortality;
  RateTerm harvest;
  /// One production rate per delay.
  std::vector<PeriodicSignal> production;

  friend bool operator==(const Species&, const Species&) = default;
};

/// Cooperative input b_{target,source}(t, x_source).
struct Mutualism {
  std::size_t target = 0;
  std::size_t source = 0;
  RateTerm term;

  friend bool operator==(const Mutualism&, const Mutualism&) = default;
};

/// Right-hand side of the N-species Nicholson system
///
///   x_i' = -d_i(t, x_i) + sum_{l != i} b_{i,l}(t, x_l)
///          + sum_j p_{i,j}(t) f(x_i(t - tau_j)) - H_i(t, x_i).
///
/// Immutable after construction.
class ModelSpec {
 public:
  ModelSpec(double period, std::vector<double> delays, std::vector<Species> species,
            std::vector<Mutualism> mutualism = {});

  [[nodiscard]] std::size_t dimension() const noexcept { return species_.size(); }
  [[nodiscard]] std::size_t delay_count() const noexcept { return delays_.size(); }
  [[nodiscard]] double period() const noexcept { return period_; }
  [[nodiscard]] const std::vector<double>& delays() const noexcept { return delays_; }
  [[nodiscard]] double max_delay() const noexcept { return max_delay_; }
  [[nodiscard]] double min_delay() const noexcept { return min_delay_; }
  [[nodiscard]] const std::vector<Species>& species() const noexcept { return species_; }
  [[nodiscard]] const Species& species(std::size_t i) const { return species_.at(i); }
  [[nodiscard]] const std::vector<Mutualism>& mutualism() const noexcept { return mutualism_; }
  /// Mutualism entries whose target is species i.
  [[nodiscard]] std::span<const Mutualism> inputs_to(std::size_t i) const;

  /// G_i = d_i + H_i and its per-capita ratio.
  [[nodiscard]] double loss(std::size_t i, double t, double x) const noexcept;
  [[nodiscard]] double loss_ratio(std::size_t i, double t, double x) const noexcept;
  /// G^0_i(t) and G_{i,inf}(t).
  [[nodiscard]] double loss_slope_zero(std::size_t i, double t) const noexcept;
  [[nodiscard]] double loss_slope_inf(std::size_t i, double t) const noexcept;
  /// sum_j p_{i,j}(t).
  [[nodiscard]] double total_production(std::size_t i, double t) const noexcept;
  /// Coefficient bound on sup_t sum_j p_{i,j}(t).
  [[nodiscard]] double total_production_bound(std::size_t i) const noexcept;

  /// True if no coefficient depends on time.
  [[nodiscard]] bool is_autonomous() const noexcept;

 private:
  double period_;
  std::vector<double> delays_;
  std::vector<Species> species_;
  std::vector<Mutualism> mutualism_;  // sorted by (target, source)
  std::vector<std::size_t> input_offsets_;
  double max_delay_ = 0.0;
  double min_delay_ = 0.0;
};

/// Evaluates the vector field at time t.
///
/// `delayed` holds x(t - tau_j) row by row: delayed[j * N + i]. Throws
/// DomainError if any entry of `state` or `delayed` is negative.
void evaluate_rhs(const ModelSpec& spec, double t, std::span<const double> state,
                  std::span<const double> delayed, std::span<double> out);

[[nodiscard]] std::vector<double> evaluate_rhs(const ModelSpec& spec, double t,
                                               std::span<const double> state,
                                               std::span<const double> delayed);

/// k0 with G_i(t, x) <= k0 x_i for every species, time and state.
[[nodiscard]] double slope_upper_bound(const ModelSpec& spec) noexcept;

}  // namespace nicholson
