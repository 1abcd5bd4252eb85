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
#include "nicholson/history.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "nicholson/errors.hpp"

namespace nicholson {

HistoryFunction::HistoryFunction(Kind kind, std::vector<double> values, std::size_t dimension,
                                 double max_delay)
    : kind_(kind), values_(std::move(values)), dimension_(dimension), max_delay_(max_delay) {
  if (dimension_ == 0) {
    throw ConfigError("history: dimension must be at least 1");
  }
  if (!(max_delay_ > 0.0) || !std::isfinite(max_delay_)) {
    throw ConfigError("history: max delay must be positive and finite");
  }
  if (values_.empty() || values_.size() % dimension_ != 0) {
    throw ConfigError("history: value count is not a multiple of the dimension");
  }
  if (kind_ == Kind::SampledGrid && values_.size() / dimension_ < 2) {
    throw ConfigError("history: a sampled grid needs at least two nodes");
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("history: values must be finite and nonnegative, got " + std::to_string(v));
    }
  }
}

HistoryFunction HistoryFunction::constant(std::vector<double> value, double max_delay) {
  const std::size_t n = value.size();
  return HistoryFunction(Kind::ConstantVector, std::move(value), n, max_delay);
}

HistoryFunction HistoryFunction::sampled(std::vector<double> values, std::size_t dimension,
                                         double max_delay) {
  return HistoryFunction(Kind::SampledGrid, std::move(values), dimension, max_delay);
}

HistoryFunction HistoryFunction::sampled(std::vector<double> values, std::vector<double> slopes,
                                         std::size_t dimension, double max_delay) {
  HistoryFunction out(Kind::SampledGrid, std::move(values), dimension, max_delay);
  if (slopes.size() != out.values_.size()) {
    throw ConfigError("history: slope count does not match the value count");
  }
  for (double s : slopes) {
    if (!std::isfinite(s)) {
      throw DomainError("history: slopes must be finite");
    }
  }
  out.slopes_ = std::move(slopes);
  return out;
}

std::vector<double> HistoryFunction::slopes() const {
  if (kind_ == Kind::ConstantVector) {
    return std::vector<double>(values_.size(), 0.0);
  }
  if (!slopes_.empty()) {
    return slopes_;
  }
  std::vector<double> out(values_.size());
  for (std::size_t k = 0; k < node_count(); ++k) {
    for (std::size_t i = 0; i < dimension_; ++i) {
      out[k * dimension_ + i] = node_slope(k, i);
    }
  }
  return out;
}

double HistoryFunction::node_time(std::size_t k) const noexcept {
  const std::size_t m = node_count();
  if (m == 1) {
    return 0.0;
  }
  if (k + 1 == m) {
    return 0.0;
  }
  return -max_delay_ + max_delay_ * static_cast<double>(k) / static_cast<double>(m - 1);
}

double HistoryFunction::node_slope(std::size_t k, std::size_t i) const noexcept {
  if (!slopes_.empty()) {
    return slopes_[k * dimension_ + i];
  }
  const std::size_t m = node_count();
  const double spacing = max_delay_ / static_cast<double>(m - 1);
  const auto at = [&](std::size_t node) { return values_[node * dimension_ + i]; };
  if (m == 2) {
    return (at(1) - at(0)) / spacing;
  }
  if (k == 0) {
    return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * spacing);
  }
  if (k + 1 == m) {
    return (3.0 * at(m - 1) - 4.0 * at(m - 2) + at(m - 3)) / (2.0 * spacing);
  }
  return (at(k + 1) - at(k - 1)) / (2.0 * spacing);
}

void HistoryFunction::evaluate(double t, std::span<double> out) const {
  if (out.size() != dimension_) {
    throw ConfigError("history: output size does not match the dimension");
  }
  if (!(t >= -max_delay_ * (1.0 + 1e-12)) || !(t <= 0.0 + max_delay_ * 1e-12)) {
    throw RangeError("history: t = " + std::to_string(t) + " outside [-" +
                     std::to_string(max_delay_) + ", 0]");
  }
  if (kind_ == Kind::ConstantVector) {
    std::copy(values_.begin(), values_.end(), out.begin());
    return;
  }
  const std::size_t m = node_count();
  const double spacing = max_delay_ / static_cast<double>(m - 1);
  const double position = std::clamp((t + max_delay_) / spacing, 0.0, static_cast<double>(m - 1));
  auto k = static_cast<std::size_t>(std::floor(position));
  if (k >= m - 1) {
    k = m - 2;
  }
  const double s = position - static_cast<double>(k);
  if (s == 0.0 || s == 1.0) {
    const std::size_t node = s == 0.0 ? k : k + 1;
    std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(node * dimension_), dimension_,
                out.begin());
    return;
  }
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  for (std::size_t i = 0; i < dimension_; ++i) {
    const double v = h00 * values_[k * dimension_ + i] + h10 * spacing * node_slope(k, i) +
                     h01 * values_[(k + 1) * dimension_ + i] +
                     h11 * spacing * node_slope(k + 1, i);
    out[i] = std::max(0.0, v);
  }
}

std::vector<double> HistoryFunction::operator()(double t) const {
  std::vector<double> out(dimension_);
  evaluate(t, out);
  return out;
}

double HistoryFunction::min_value() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double HistoryFunction::max_value() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

}  // namespace nicholson
