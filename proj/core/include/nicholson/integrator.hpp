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
#include <functional>
#include <span>
#include <vector>

#include "nicholson/history.hpp"
#include "nicholson/model.hpp"
#include "nicholson/trajectory.hpp"

namespace nicholson {

/// x'(t) = F(t, x(t), x(t - tau_1), ..., x(t - tau_k)).
///
/// The delayed argument is laid out row by row: delayed[j * N + i].
struct DelaySystem {
  using Field = std::function<void(double t, std::span<const double> state,
                                   std::span<const double> delayed, std::span<double> out)>;

  std::size_t dimension = 0;
  std::vector<double> delays;
  Field field;
  /// Keep the solution in the nonnegative cone (stage checks, step halving,
  /// clamped dense output). Off for raw test fields.
  bool nonnegative = true;
};

struct StepOptions {
  double step = 0.0;
  /// Scales the field: x' = lambda F.
  double lambda = 1.0;
  /// A step may be halved this many times before giving up.
  int max_halvings = 10;
};

/// Throws ConfigError unless 0 < h and every delay is an integer multiple of h
/// (relative tolerance 1e-12). The message names the offending delay.
void check_step_alignment(std::span<const double> delays, double h);

/// Fixed-step classical RK4 by the method of steps on [0, horizon].
///
/// Delayed arguments are read from the dense output of the solution computed
/// so far, which is why h must not exceed the smallest delay. In nonnegative
/// mode a step whose stages or result leave the cone is retried as two half
/// steps, recursively, down to h / 2^max_halvings; past that a PositivityError
/// reports the time and component.
[[nodiscard]] Trajectory integrate(const DelaySystem& system, const HistoryFunction& history,
                                   double horizon, const StepOptions& options);

/// Integrates x' = lambda * evaluate_rhs(spec, ...).
[[nodiscard]] Trajectory integrate(const ModelSpec& spec, const HistoryFunction& history,
                                   double horizon, double h, double lambda = 1.0);

/// The model as a DelaySystem.
[[nodiscard]] DelaySystem make_delay_system(const ModelSpec& spec);

}  // namespace nicholson
