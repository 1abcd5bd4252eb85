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

namespace nicholson {

/// Initial data on [-tau*, 0] with values in the nonnegative cone.
///
/// Either a constant vector or a uniform grid of nodes interpolated by
/// piecewise cubic Hermite polynomials, clamped at zero from below. Node
/// slopes are finite differences of the values unless supplied explicitly. Grid storage is node-major: values[k * N + i].
class HistoryFunction {
 public:
  enum class Kind { ConstantVector, SampledGrid };

  static HistoryFunction constant(std::vector<double> value, double max_delay);
  static HistoryFunction sampled(std::vector<double> values, std::size_t dimension,
                                 double max_delay);
  /// Grid with explicit node slopes (same layout as the values).
  static HistoryFunction sampled(std::vector<double> values, std::vector<double> slopes,
                                 std::size_t dimension, double max_delay);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] double max_delay() const noexcept { return max_delay_; }
  /// 1 for constant histories.
  [[nodiscard]] std::size_t node_count() const noexcept { return values_.size() / dimension_; }
  [[nodiscard]] double node_time(std::size_t k) const noexcept;
  [[nodiscard]] std::span<const double> node(std::size_t k) const noexcept {
    return std::span<const double>(values_).subspan(k * dimension_, dimension_);
  }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] bool has_explicit_slopes() const noexcept { return !slopes_.empty(); }
  /// Node slopes in value layout; zeros for constant histories.
  [[nodiscard]] std::vector<double> slopes() const;

  /// Throws RangeError outside [-tau*, 0].
  void evaluate(double t, std::span<double> out) const;
  [[nodiscard]] std::vector<double> operator()(double t) const;

  [[nodiscard]] double min_value() const noexcept;
  [[nodiscard]] double max_value() const noexcept;

  friend bool operator==(const HistoryFunction&, const HistoryFunction&) = default;

 private:
  HistoryFunction(Kind kind, std::vector<double> values, std::size_t dimension, double max_delay);

  [[nodiscard]] double node_slope(std::size_t k, std::size_t i) const noexcept;

  Kind kind_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  std::size_t dimension_;
  double max_delay_;
};

}  // namespace nicholson
