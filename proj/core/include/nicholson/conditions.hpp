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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nicholson/model.hpp"

namespace nicholson {

enum class Status { Pass, Fail, Inconclusive };

[[nodiscard]] std::string_view to_string(Status status) noexcept;

/// Hypothesis identifiers carried in reports.
namespace hypothesis {
inline constexpr std::string_view kPersistenceScalar = "H0-scalar";
inline constexpr std::string_view kPersistenceSystem = "H0-SYS";
inline constexpr std::string_view kDissipativity = "PER";
inline constexpr std::string_view kZeroAttractor = "ATTR";
}  // namespace hypothesis

struct ConditionConstants {
  std::optional<double> delta;
  /// Floor of total production, min_{i,t} sum_j p_{i,j}(t).
  std::optional<double> c;
  std::optional<double> beta;
  std::optional<double> k0;
  std::optional<double> p_star;
  std::optional<double> R0;
  std::optional<double> eps0;
  /// Non-triviality threshold eps0 / 2 used by the analysis and orbit search.
  std::optional<double> eps_triv;
};

/// Outcome of one hypothesis check.
///
/// `margin` is the grid minimum of (right-hand side - left-hand side) of the
/// checked inequality. A positive margin that does not exceed the Lipschitz
/// bound of that difference times the grid spacing is reported Inconclusive.
/// Ties (margin == 0) fail.
struct ConditionReport {
  std::string hypothesis;
  Status status = Status::Fail;
  double margin = 0.0;
  ConditionConstants constants;
  int grid = 0;
  /// Lipschitz bound times grid spacing used for the inconclusive downgrade.
  double grid_slack = 0.0;
  /// Persistence only: status of the production floor c > 0.
  std::optional<Status> production_floor;
  /// Zero-attractor only: random spot checks of the raw inequality.
  int spot_samples = 0;
  int spot_failures = 0;

  [[nodiscard]] bool pass() const noexcept { return status == Status::Pass; }
};

[[nodiscard]] nlohmann::json to_json(const ConditionReport& report);

/// Strong/uniform persistence: for every species i and grid time t,
///   G^0_i(t) < (1 - delta) (sum_{l != i} b0_{i,l}(t) + sum_j p_{i,j}(t)),
/// together with the production floor sum_j p_{i,j}(t) >= c > 0. Also fills
/// p_star, eps0 and eps_triv, which depend only on this inequality's slack and
/// the slope tolerance eta. Throws ParameterError unless 0 < delta < 1 and
/// grid >= 64.
[[nodiscard]] ConditionReport check_persistence(const ModelSpec& spec, double delta, int grid,
                                                double eta = 0.1);

/// Dissipativity: beta = min_{i,t} G_{i,inf}(t) - sum_{l != i} b^inf_{i,l}(t) > 0.
[[nodiscard]] ConditionReport check_dissipativity(const ModelSpec& spec, int grid);

/// Sufficient slope test for global attraction to zero,
///   min_x G_i/x_i - sum_{l != i} max_x b_{i,l}/x_l - sum_j p_{i,j}(t) > 0,
/// plus `spot_samples` random checks of the raw per-capita inequality at
/// (t, x) with x in (1e-4, 1e4)^N. Pass requires both.
[[nodiscard]] ConditionReport check_zero_attractor(const ModelSpec& spec, int grid,
                                                   int spot_samples,
                                                   std::uint64_t seed = 0x5eed);

/// Largest delta in (0, 1) for which the persistence margin is positive, by
/// bisection to `tolerance`; nullopt if none.
[[nodiscard]] std::optional<double> max_feasible_delta(const ModelSpec& spec, int grid,
                                                       double tolerance = 1e-10);

/// A priori bounds for T-periodic solutions of x' = lambda Phi(x).
struct PeriodicBounds {
  double p_star = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double eta = 0.1;
  double R_tilde = 0.0;
  /// +infinity when every term is Linear.
  double eps_tilde = 0.0;
  double R0 = 0.0;
  double eps0 = 0.0;

  [[nodiscard]] double eps_triv() const noexcept { return 0.5 * eps0; }
};

[[nodiscard]] nlohmann::json to_json(const PeriodicBounds& bounds);

/// Largest sup_t |slope_inf - slope_zero| over all rate terms of the model.
[[nodiscard]] double max_slope_gap(const ModelSpec& spec) noexcept;

/// R0 = max(R_tilde, p* / (e beta)) and eps0 = min(eps_tilde, -ln(1 - gamma / p*)),
/// with R_tilde = max(0, gap / eta - 1), eps_tilde = eta / gap and gamma the
/// persistence margin clamped below p*. Throws PreconditionError unless both
/// reports pass.
[[nodiscard]] PeriodicBounds compute_periodic_bounds(const ModelSpec& spec,
                                                     const ConditionReport& persistence,
                                                     const ConditionReport& dissipativity,
                                                     double eta = 0.1);

/// Fills the R0/eps0/eps_triv/beta constants of a report from computed bounds.
void attach_bounds(ConditionReport& report, const PeriodicBounds& bounds);

}  // namespace nicholson
