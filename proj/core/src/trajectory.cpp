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
#include "nicholson/trajectory.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "nicholson/errors.hpp"

namespace nicholson {

Trajectory::Trajectory(HistoryFunction history, bool clamp_nonnegative)
    : history_(std::move(history)), clamp_(clamp_nonnegative) {}

Trajectory::Trajectory(HistoryFunction history, std::vector<double> times,
                       std::vector<double> states, std::vector<double> derivatives,
                       bool clamp_nonnegative)
    : history_(std::move(history)),
      times_(std::move(times)),
      states_(std::move(states)),
      derivatives_(std::move(derivatives)),
      clamp_(clamp_nonnegative) {
  const std::size_t n = history_.dimension();
  if (times_.empty() || times_.front() != 0.0) {
    throw ConfigError("trajectory: mesh must start at t = 0");
  }
  if (!std::is_sorted(times_.begin(), times_.end(), std::less_equal<>())) {
    throw ConfigError("trajectory: mesh times must increase strictly");
  }
  if (states_.size() != times_.size() * n || derivatives_.size() != times_.size() * n) {
    throw ConfigError("trajectory: state/derivative storage does not match the mesh");
  }
}

std::size_t Trajectory::segment_index(double t) const noexcept {
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const auto idx = static_cast<std::size_t>(std::distance(times_.begin(), it));
  if (idx == 0) {
    return 0;
  }
  return std::min(idx - 1, times_.size() >= 2 ? times_.size() - 2 : 0);
}

void Trajectory::interpolate(std::size_t segment, double t, std::span<double> out) const noexcept {
  const std::size_t n = dimension();
  const double t0 = times_[segment];
  const double t1 = times_[segment + 1];
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  const double* y0 = states_.data() + segment * n;
  const double* y1 = y0 + n;
  const double* d0 = derivatives_.data() + segment * n;
  const double* d1 = d0 + n;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = h00 * y0[i] + h10 * h * d0[i] + h01 * y1[i] + h11 * h * d1[i];
  }
}

void Trajectory::query(double t, std::span<double> out) const {
  if (out.size() != dimension()) {
    throw ConfigError("trajectory: output size does not match the dimension");
  }
  if (!(t >= start_time()) || !(t <= end_time())) {
    throw RangeError("trajectory: t = " + std::to_string(t) + " outside covered range [" +
                     std::to_string(start_time()) + ", " + std::to_string(end_time()) + "]");
  }
  if (t < 0.0) {
    history_.evaluate(t, out);
    return;
  }
  const std::size_t seg = segment_index(t);
  if (t == times_[seg]) {
    std::copy_n(state(seg).begin(), dimension(), out.begin());
  } else if (seg + 1 < times_.size() && t == times_[seg + 1]) {
    std::copy_n(state(seg + 1).begin(), dimension(), out.begin());
  } else {
    interpolate(seg, t, out);
  }
  if (clamp_) {
    for (auto& v : out) {
      v = std::max(0.0, v);
    }
  }
}

void Trajectory::query_derivative(double t, std::span<double> out) const {
  if (out.size() != dimension()) {
    throw ConfigError("trajectory: output size does not match the dimension");
  }
  if (!(t >= 0.0) || !(t <= end_time())) {
    throw RangeError("trajectory: derivative at t = " + std::to_string(t) +
                     " outside the integrated range");
  }
  const std::size_t n = dimension();
  const std::size_t seg = segment_index(t);
  if (seg + 1 >= times_.size()) {
    std::copy_n(derivative(seg).begin(), n, out.begin());
    return;
  }
  const double t0 = times_[seg];
  const double t1 = times_[seg + 1];
  const double h = t1 - t0;
  const double near = 1e-9 * h;
  if (std::abs(t - t0) <= near || std::abs(t - t1) <= near) {
    const std::size_t node = std::abs(t - t0) <= near ? seg : seg + 1;
    std::copy_n(derivative(node).begin(), n, out.begin());
    return;
  }
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double g00 = (6.0 * s2 - 6.0 * s) / h;
  const double g10 = 3.0 * s2 - 4.0 * s + 1.0;
  const double g01 = (-6.0 * s2 + 6.0 * s) / h;
  const double g11 = 3.0 * s2 - 2.0 * s;
  const double* y0 = states_.data() + seg * n;
  const double* y1 = y0 + n;
  const double* d0 = derivatives_.data() + seg * n;
  const double* d1 = d0 + n;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = g00 * y0[i] + g10 * d0[i] + g01 * y1[i] + g11 * d1[i];
  }
}

std::vector<double> Trajectory::query(double t) const {
  std::vector<double> out(dimension());
  query(t, out);
  return out;
}

double Trajectory::query(double t, std::size_t component) const {
  return query(t).at(component);
}

std::vector<double> query(const Trajectory& traj, double t) { return traj.query(t); }

}  // namespace nicholson
