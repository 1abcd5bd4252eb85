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
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "nicholson/conditions.hpp"
#include "nicholson/history.hpp"
#include "nicholson/model.hpp"
#include "nicholson/trajectory.hpp"

namespace nicholson {

/// v(t) = min_i x_i(t) and u(t) = max_i x_i(t) at the mesh nodes t >= 0.
struct GuidingSeries {
  std::vector<double> times;
  std::vector<double> u;
  std::vector<double> v;
};

[[nodiscard]] GuidingSeries guiding_series(const Trajectory& traj);

/// `count` histories on [-tau*, 0] with node values drawn log-uniformly from
/// [lo, hi].
[[nodiscard]] std::vector<HistoryFunction> random_ensemble(std::size_t dimension,
                                                           double max_delay, std::size_t count,
                                                           double lo, double hi,
                                                           std::uint64_t seed,
                                                           std::size_t nodes = 9);

struct PersistenceOptions {
  double horizon = 0.0;
  double step = 0.0;
  double transient_fraction = 0.5;
  double lambda = 1.0;
  unsigned threads = 1;
};

struct PersistenceEstimate {
  double transient_cutoff = 0.0;
  double horizon = 0.0;
  std::vector<double> tail_infima;
  double ensemble_min = 0.0;
  double threshold = 0.0;
  bool verdict = false;
};

[[nodiscard]] nlohmann::json to_json(const PersistenceEstimate& estimate);

/// Tail infimum of v(t) over mesh times t >= transient_fraction * horizon,
/// per ensemble member; verdict is ensemble_min > threshold (eps_triv).
///
/// Requires horizon >= 50 max(T, tau*) and strictly positive histories.
[[nodiscard]] PersistenceEstimate estimate_persistence(const ModelSpec& spec,
                                                       std::span<const HistoryFunction> ensemble,
                                                       double threshold,
                                                       const PersistenceOptions& options);

struct ZeroAttractionOptions {
  double horizon = 0.0;
  double step = 0.0;
  double tol = 1e-6;
  unsigned threads = 1;
};

struct DecayLog {
  std::vector<double> times;
  std::vector<double> u;
};

struct ZeroAttractionResult {
  /// Every member ends with u(horizon) < tol.
  bool verdict = false;
  std::vector<double> final_u;
  std::vector<DecayLog> logs;
  /// Mesh points past tau* where u does not decrease to the next node; each
  /// must satisfy u <= e^{-1} + 10 h.
  std::size_t landmark_checks = 0;
  std::size_t landmark_violations = 0;
  double worst_landmark = 0.0;
  [[nodiscard]] bool landmarks_hold() const noexcept { return landmark_violations == 0; }
};

[[nodiscard]] nlohmann::json to_json(const ZeroAttractionResult& result);

/// Integrates each member and tests u(horizon) < tol. Throws
/// PreconditionError unless `attractor` is a passing zero-attractor report.
[[nodiscard]] ZeroAttractionResult verify_zero_attraction(
    const ModelSpec& spec, const ConditionReport& attractor,
    std::span<const HistoryFunction> ensemble, const ZeroAttractionOptions& options);

/// Tail infimum of v over mesh nodes with t >= cutoff.
[[nodiscard]] double tail_infimum(const GuidingSeries& series, double cutoff);

}  // namespace nicholson
