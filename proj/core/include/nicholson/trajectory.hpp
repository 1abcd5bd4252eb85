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

#include "nicholson/history.hpp"

namespace nicholson {

class DdeSolver;

/// Dense numerical solution on [-tau*, t_end].
///
/// For t < 0 queries go to the initial history; on the integrated mesh each
/// segment [t_n, t_{n+1}] is a cubic Hermite interpolant of the node values
/// and node derivatives. Queries are exact at nodes and, unless constructed
/// with clamp_nonnegative = false, clamped at zero from below.
class Trajectory {
 public:
  /// `states` and `derivatives` are node-major (node * N + i). The first mesh
  /// time must be 0 and times must increase strictly.
  Trajectory(HistoryFunction history, std::vector<double> times, std::vector<double> states,
             std::vector<double> derivatives, bool clamp_nonnegative = true);

  [[nodiscard]] std::size_t dimension() const noexcept { return history_.dimension(); }
  [[nodiscard]] const HistoryFunction& history() const noexcept { return history_; }
  [[nodiscard]] std::size_t node_count() const noexcept { return times_.size(); }
  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] double time(std::size_t n) const noexcept { return times_[n]; }
  [[nodiscard]] double start_time() const noexcept { return -history_.max_delay(); }
  [[nodiscard]] double end_time() const noexcept { return times_.back(); }
  [[nodiscard]] std::span<const double> state(std::size_t n) const noexcept {
    return std::span<const double>(states_).subspan(n * dimension(), dimension());
  }
  [[nodiscard]] std::span<const double> derivative(std::size_t n) const noexcept {
    return std::span<const double>(derivatives_).subspan(n * dimension(), dimension());
  }
  [[nodiscard]] bool clamps_nonnegative() const noexcept { return clamp_; }

  /// Throws RangeError outside [-tau*, end_time()].
  void query(double t, std::span<double> out) const;
  [[nodiscard]] std::vector<double> query(double t) const;
  [[nodiscard]] double query(double t, std::size_t component) const;

  /// Time derivative of the mesh interpolant at t in [0, end_time()]; the
  /// stored node derivative when t is within rounding of a node.
  void query_derivative(double t, std::span<double> out) const;

  /// Index n of the segment [t_n, t_{n+1}] containing t >= 0.
  [[nodiscard]] std::size_t segment_index(double t) const noexcept;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  friend class DdeSolver;

  Trajectory(HistoryFunction history, bool clamp_nonnegative);

  void interpolate(std::size_t segment, double t, std::span<double> out) const noexcept;

  HistoryFunction history_;
  std::vector<double> times_;
  std::vector<double> states_;
  std::vector<double> derivatives_;
  bool clamp_;
};

[[nodiscard]] std::vector<double> query(const Trajectory& traj, double t);

}  // namespace nicholson
