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
#include "nicholson/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "nicholson/errors.hpp"

namespace nicholson {

namespace {

void require_period(const PeriodicSignal& s, double period, const std::string& where) {
  if (s.is_constant()) {
    return;
  }
  if (std::abs(s.period() - period) > 1e-12 * std::max(1.0, period)) {
    throw ConfigError(where + ": signal period " + std::to_string(s.period()) +
                      " differs from model period " + std::to_string(period));
  }
}

void require_period(const RateTerm& term, double period, const std::string& where) {
  require_period(term.primary(), period, where);
  require_period(term.secondary(), period, where);
}

}  // namespace

double nicholson_birth(double y) noexcept { return y * std::exp(-y); }

ModelSpec::ModelSpec(double period, std::vector<double> delays, std::vector<Species> species,
                     std::vector<Mutualism> mutualism)
    : period_(period),
      delays_(std::move(delays)),
      species_(std::move(species)),
      mutualism_(std::move(mutualism)) {
  if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw ConfigError("model: period must be positive and finite");
  }
  if (species_.empty()) {
    throw ConfigError("model: at least one species is required");
  }
  if (delays_.empty()) {
    throw ConfigError("model: at least one delay is required");
  }
  for (std::size_t j = 0; j < delays_.size(); ++j) {
    if (!(delays_[j] > 0.0) || !std::isfinite(delays_[j])) {
      throw ConfigError("model: delay " + std::to_string(j + 1) + " must be positive and finite");
    }
  }
  max_delay_ = *std::max_element(delays_.begin(), delays_.end());
  min_delay_ = *std::min_element(delays_.begin(), delays_.end());

  const std::size_t n = species_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = species_[i];
    const std::string where = "species " + std::to_string(i + 1);
    if (s.production.size() != delays_.size()) {
      throw ConfigError(where + ": expected " + std::to_string(delays_.size()) +
                        " production rates (one per delay), got " +
                        std::to_string(s.production.size()));
    }
    require_period(s.mortality, period_, where + " mortality");
    require_period(s.harvest, period_, where + " harvest");
    for (const auto& p : s.production) {
      require_period(p, period_, where + " production");
    }
  }

  std::sort(mutualism_.begin(), mutualism_.end(), [](const Mutualism& a, const Mutualism& b) {
    return std::pair(a.target, a.source) < std::pair(b.target, b.source);
  });
  for (std::size_t k = 0; k < mutualism_.size(); ++k) {
    const auto& m = mutualism_[k];
    if (m.target >= n || m.source >= n) {
      throw ConfigError("model: mutualism index out of range");
    }
    if (m.target == m.source) {
      throw ConfigError("model: mutualism b_{i,i} is not allowed (species " +
                        std::to_string(m.target + 1) + ")");
    }
    if (k > 0 && mutualism_[k - 1].target == m.target && mutualism_[k - 1].source == m.source) {
      throw ConfigError("model: duplicate mutualism entry");
    }
    require_period(m.term, period_, "mutualism");
  }
  input_offsets_.assign(n + 1, 0);
  for (const auto& m : mutualism_) {
    ++input_offsets_[m.target + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    input_offsets_[i + 1] += input_offsets_[i];
  }
}

std::span<const Mutualism> ModelSpec::inputs_to(std::size_t i) const {
  return std::span<const Mutualism>(mutualism_).subspan(
      input_offsets_.at(i), input_offsets_.at(i + 1) - input_offsets_.at(i));
}

double ModelSpec::loss(std::size_t i, double t, double x) const noexcept {
  const auto& s = species_[i];
  return s.mortality.value(t, x) + s.harvest.value(t, x);
}

double ModelSpec::loss_ratio(std::size_t i, double t, double x) const noexcept {
  const auto& s = species_[i];
  return s.mortality.ratio(t, x) + s.harvest.ratio(t, x);
}

double ModelSpec::loss_slope_zero(std::size_t i, double t) const noexcept {
  const auto& s = species_[i];
  return s.mortality.slope_zero(t) + s.harvest.slope_zero(t);
}

double ModelSpec::loss_slope_inf(std::size_t i, double t) const noexcept {
  const auto& s = species_[i];
  return s.mortality.slope_inf(t) + s.harvest.slope_inf(t);
}

double ModelSpec::total_production(std::size_t i, double t) const noexcept {
  double total = 0.0;
  for (const auto& p : species_[i].production) {
    total += p(t);
  }
  return total;
}

double ModelSpec::total_production_bound(std::size_t i) const noexcept {
  double total = 0.0;
  for (const auto& p : species_[i].production) {
    total += p.upper_bound();
  }
  return total;
}

bool ModelSpec::is_autonomous() const noexcept {
  auto constant_term = [](const RateTerm& r) {
    return r.primary().is_constant() && r.secondary().is_constant();
  };
  for (const auto& s : species_) {
    if (!constant_term(s.mortality) || !constant_term(s.harvest)) {
      return false;
    }
    for (const auto& p : s.production) {
      if (!p.is_constant()) {
        return false;
      }
    }
  }
  return std::all_of(mutualism_.begin(), mutualism_.end(),
                     [&](const Mutualism& m) { return constant_term(m.term); });
}

void evaluate_rhs(const ModelSpec& spec, double t, std::span<const double> state,
                  std::span<const double> delayed, std::span<double> out) {
  const std::size_t n = spec.dimension();
  const std::size_t k = spec.delay_count();
  if (state.size() != n || delayed.size() != n * k || out.size() != n) {
    throw ConfigError("evaluate_rhs: state/delayed/out sizes do not match the model");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(state[i] >= 0.0)) {
      throw DomainError("evaluate_rhs: negative or NaN state component x" + std::to_string(i + 1) +
                        " = " + std::to_string(state[i]) + " at t = " + std::to_string(t));
    }
  }
  for (std::size_t m = 0; m < delayed.size(); ++m) {
    if (!(delayed[m] >= 0.0)) {
      throw DomainError("evaluate_rhs: negative or NaN delayed state for delay " +
                        std::to_string(m / n + 1) + ", x" + std::to_string(m % n + 1));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = spec.species()[i];
    double dx = -s.mortality.value(t, state[i]);
    for (const auto& b : spec.inputs_to(i)) {
      dx += b.term.value(t, state[b.source]);
    }
    for (std::size_t j = 0; j < k; ++j) {
      dx += s.production[j](t) * nicholson_birth(delayed[j * n + i]);
    }
    dx -= s.harvest.value(t, state[i]);
    out[i] = dx;
  }
}

std::vector<double> evaluate_rhs(const ModelSpec& spec, double t, std::span<const double> state,
                                 std::span<const double> delayed) {
  std::vector<double> out(spec.dimension());
  evaluate_rhs(spec, t, state, delayed, out);
  return out;
}

double slope_upper_bound(const ModelSpec& spec) noexcept {
  double k0 = 0.0;
  for (const auto& s : spec.species()) {
    k0 = std::max(k0, s.mortality.ratio_upper_bound() + s.harvest.ratio_upper_bound());
  }
  return k0;
}

}  // namespace nicholson
