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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nicholson/conditions.hpp"
#include "nicholson/history.hpp"
#include "nicholson/model.hpp"
#include "nicholson/trajectory.hpp"

namespace nicholson {

/// Default history resolution for orbit search: the fewest nodes (at least 16)
/// whose spacing divides h, so that grid interpolation with exact slopes
/// reproduces the dense output of the integrator.
[[nodiscard]] std::size_t default_history_nodes(const ModelSpec& spec, double h);

/// Uniform history grid holding `value` at every node.
[[nodiscard]] HistoryFunction constant_grid(const ModelSpec& spec, std::span<const double> value,
                                            std::size_t nodes);

/// Period-T return map on history grids: integrates x' = lambda Phi(x) over
/// [0, T] from the interpolated grid and samples x on [T - tau*, T] at the
/// grid's relative node positions, carrying the dense-output derivative as the
/// node slope. Needs at least 8 nodes.
[[nodiscard]] HistoryFunction poincare_map(const ModelSpec& spec, const HistoryFunction& grid,
                                           double h, double lambda = 1.0);

enum class OrbitMethod { FixedPoint, Broyden };

[[nodiscard]] std::string_view to_string(OrbitMethod method) noexcept;

struct OrbitOptions {
  double step = 0.0;
  double tol = 1e-10;
  int max_iter = 500;
  double lambda = 1.0;
  /// Fixed-point damping theta in phi <- (1 - theta) phi + theta P(phi).
  double damping = 0.5;
  /// Slope tolerance for the a priori bounds.
  double eta = 0.1;
};

struct PeriodicOrbitResult {
  HistoryFunction history;
  /// Sup distance between the grid and its image, over node values and node
  /// slopes scaled by the node spacing.
  double residual = 0.0;
  /// Period-to-period drift over five re-integrated periods; always below
  /// 10 tol for a returned orbit.
  double drift = 0.0;
  std::vector<double> orbit_min{};
  std::vector<double> orbit_max{};
  int iterations = 0;
  int map_evaluations = 0;
  OrbitMethod method = OrbitMethod::FixedPoint;
  bool nontrivial = false;
  bool within_bounds = false;
  double lambda = 1.0;
  PeriodicBounds bounds{};
  /// Residual after every iteration, both phases.
  std::vector<double> residual_trace{};
};

[[nodiscard]] nlohmann::json to_json(const PeriodicOrbitResult& result);

/// Searches for a T-periodic solution as a fixed point of poincare_map.
///
/// Damped fixed-point iteration runs first; if the residual fails to drop by
/// 1% over 10 iterations (or an integration fails) the search switches to
/// Broyden's method on P(phi) - phi, started from the best grid seen with a
/// finite-difference Jacobian. A grid is accepted when its residual is below
/// tol and five re-integrated periods drift by less than 10 tol; a failed drift
/// check tightens the residual target. Throws PreconditionError unless both reports
/// pass and NonConvergenceError (carrying the best residual) after max_iter
/// iterations. Convergence to an orbit with min <= eps_triv is reported through
/// `nontrivial`, not as an error.
[[nodiscard]] PeriodicOrbitResult find_periodic_orbit(const ModelSpec& spec,
                                                      const ConditionReport& persistence,
                                                      const ConditionReport& dissipativity,
                                                      const HistoryFunction& initial,
                                                      const OrbitOptions& options);

/// Outcome of one start of a multi-start search: a result, or the best
/// residual reached before the iteration budget ran out.
struct OrbitSearchOutcome {
  std::optional<PeriodicOrbitResult> result;
  double best_residual = 0.0;
};

/// Runs find_periodic_orbit from every initial grid on up to `threads`
/// workers. Outcomes are indexed like `initials`; every converged orbit is
/// reported, none is preferred.
[[nodiscard]] std::vector<OrbitSearchOutcome> find_periodic_orbits(
    const ModelSpec& spec, const ConditionReport& persistence,
    const ConditionReport& dissipativity, std::span<const HistoryFunction> initials,
    const OrbitOptions& options, unsigned threads = 1);

/// One or more periods of the solution started from an orbit's history grid.
[[nodiscard]] Trajectory orbit_trajectory(const ModelSpec& spec, const HistoryFunction& history,
                                          double h, double lambda = 1.0, int periods = 1);

/// sup over mesh nodes t in [0, (periods - 1) T] of |x(t + T) - x(t)|.
[[nodiscard]] double periodic_drift(const ModelSpec& spec, const HistoryFunction& history,
                                    double h, double lambda = 1.0, int periods = 5);

/// g(x) = -(1/T) int_0^T Phi(x)(t) dt for a constant state x, by composite
/// Simpson quadrature with `intervals` (even) subintervals.
[[nodiscard]] std::vector<double> averaged_field(const ModelSpec& spec,
                                                 std::span<const double> x,
                                                 int intervals = 128);

struct MirandaResult {
  bool verdict = false;
  /// max of g_i over the face x_i = eps; must be negative.
  std::vector<double> lower_face_worst;
  /// min of g_i over the face x_i = R; must be positive.
  std::vector<double> upper_face_worst;
  std::size_t samples = 0;
};

[[nodiscard]] nlohmann::json to_json(const MirandaResult& result);

/// Checks g_i < 0 on {x_i = eps} and g_i > 0 on {x_i = R} over a lattice of
/// face_grid points per free coordinate in [eps, R].
[[nodiscard]] MirandaResult check_miranda_signs(const ModelSpec& spec, double eps, double R,
                                                int face_grid, int intervals = 128);

enum class BoundsVerdict { Pass, PassWithWarning, Fail };

[[nodiscard]] std::string_view to_string(BoundsVerdict verdict) noexcept;

/// Whether the orbit's range lies in [eps0, R0] for every species. Values
/// within a relative 1e-6 of either bound give PassWithWarning.
[[nodiscard]] BoundsVerdict verify_lemma1_bounds(const PeriodicOrbitResult& result,
                                                 const PeriodicBounds& bounds);

}  // namespace nicholson
