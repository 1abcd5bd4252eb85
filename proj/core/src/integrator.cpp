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
#include "nicholson/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "nicholson/errors.hpp"

namespace nicholson {

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void check_step_alignment(std::span<const double> delays, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ParameterError("step h must be positive and finite, got " + format_number(h));
  }
  for (std::size_t j = 0; j < delays.size(); ++j) {
    const double tau = delays[j];
    const double multiple = std::round(tau / h);
    if (multiple < 1.0 || std::abs(tau - multiple * h) > 1e-12 * std::max(1.0, tau)) {
      throw ConfigError("step h = " + format_number(h) + " is not aligned with delay tau_" +
                        std::to_string(j + 1) + " = " + format_number(tau) +
                        " (h must divide every delay and not exceed it)");
    }
  }
}

class DdeSolver {
 public:
  DdeSolver(const DelaySystem& system, const HistoryFunction& history, const StepOptions& options)
      : system_(system),
        options_(options),
        traj_(history, system.nonnegative),
        n_(system.dimension),
        k_(system.delays.size()),
        delayed_(n_ * k_),
        stage_(n_),
        k2_(n_),
        k3_(n_),
        k4_(n_),
        next_(n_) {}

  Trajectory run(double horizon) {
    const double h = options_.step;
    std::vector<double> x0(n_);
    traj_.history_.evaluate(0.0, x0);
    std::vector<double> d0(n_);
    derivative_at(0.0, x0, d0);
    append(0.0, x0, d0);

    const auto major_steps =
        static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / h - 1e-9)));
    for (std::size_t s = 1; s <= major_steps; ++s) {
      const double target = s == major_steps ? horizon : static_cast<double>(s) * h;
      advance(target, 0);
    }
    return std::move(traj_);
  }

 private:
  void append(double t, std::span<const double> x, std::span<const double> dx) {
    traj_.times_.push_back(t);
    traj_.states_.insert(traj_.states_.end(), x.begin(), x.end());
    traj_.derivatives_.insert(traj_.derivatives_.end(), dx.begin(), dx.end());
  }

  // Dense-output lookup. Stage times can overshoot the mesh end by rounding
  // when h equals a delay; such lookups snap to the last node.
  void lookup(double t, std::span<double> out) const {
    if (t < 0.0 || traj_.times_.empty()) {
      traj_.history_.evaluate(std::clamp(t, traj_.start_time(), 0.0), out);
      return;
    }
    const double end = traj_.times_.back();
    if (t > end) {
      if (t - end > 1e-9 * std::max(1.0, std::abs(end))) {
        throw RangeError("integrator: delayed lookup at t = " + format_number(t) +
                         " beyond computed solution (end " + format_number(end) + ")");
      }
      t = end;
    }
    traj_.query(t, out);
  }

  void derivative_at(double t, std::span<const double> x, std::span<double> out) {
    for (std::size_t j = 0; j < k_; ++j) {
      lookup(t - system_.delays[j], std::span<double>(delayed_).subspan(j * n_, n_));
    }
    system_.field(t, x, delayed_, out);
    if (options_.lambda != 1.0) {
      for (auto& v : out) {
        v *= options_.lambda;
      }
    }
  }

  // Index of the first component outside the cone, or n_ if none.
  [[nodiscard]] std::size_t first_negative(std::span<const double> x) const noexcept {
    if (!system_.nonnegative) {
      return n_;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(x[i] >= 0.0)) {
        return i;
      }
    }
    return n_;
  }

  // One RK4 step from the current mesh end to t1. Returns the failing
  // component, or n_ on success (the new node is then appended).
  std::size_t try_step(double t1) {
    const std::size_t last = traj_.times_.size() - 1;
    const double t0 = traj_.times_[last];
    const double h = t1 - t0;
    const double* x = traj_.states_.data() + last * n_;
    const double* k1 = traj_.derivatives_.data() + last * n_;

    for (std::size_t i = 0; i < n_; ++i) stage_[i] = x[i] + 0.5 * h * k1[i];
    if (auto bad = first_negative(stage_); bad < n_) return bad;
    derivative_at(t0 + 0.5 * h, stage_, k2_);

    for (std::size_t i = 0; i < n_; ++i) stage_[i] = x[i] + 0.5 * h * k2_[i];
    if (auto bad = first_negative(stage_); bad < n_) return bad;
    derivative_at(t0 + 0.5 * h, stage_, k3_);

    for (std::size_t i = 0; i < n_; ++i) stage_[i] = x[i] + h * k3_[i];
    if (auto bad = first_negative(stage_); bad < n_) return bad;
    derivative_at(t1, stage_, k4_);

    for (std::size_t i = 0; i < n_; ++i) {
      next_[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
    if (auto bad = first_negative(next_); bad < n_) return bad;

    std::vector<double> dnext(n_);
    derivative_at(t1, next_, dnext);
    append(t1, next_, dnext);
    return n_;
  }

  void advance(double t1, int depth) {
    const std::size_t bad = try_step(t1);
    if (bad == n_) {
      return;
    }
    const double t0 = traj_.times_.back();
    if (depth >= options_.max_halvings) {
      throw PositivityError(t0, bad,
                            "integrator: component x" + std::to_string(bad + 1) +
                                " leaves the nonnegative cone at t = " + format_number(t0) +
                                " even with step " + format_number(t1 - t0));
    }
    const double mid = t0 + 0.5 * (t1 - t0);
    advance(mid, depth + 1);
    advance(t1, depth + 1);
  }

  const DelaySystem& system_;
  StepOptions options_;
  Trajectory traj_;
  std::size_t n_;
  std::size_t k_;
  std::vector<double> delayed_;
  std::vector<double> stage_;
  std::vector<double> k2_;
  std::vector<double> k3_;
  std::vector<double> k4_;
  std::vector<double> next_;
};

Trajectory integrate(const DelaySystem& system, const HistoryFunction& history, double horizon,
                     const StepOptions& options) {
  if (system.dimension == 0 || !system.field) {
    throw ConfigError("integrator: system needs a dimension and a field");
  }
  if (system.delays.empty()) {
    throw ConfigError("integrator: at least one delay is required");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ParameterError("integrator: horizon must be positive and finite");
  }
  if (!std::isfinite(options.lambda) || options.lambda < 0.0 || options.lambda > 1.0) {
    throw ParameterError("integrator: lambda must lie in [0, 1]");
  }
  if (options.max_halvings < 0) {
    throw ParameterError("integrator: max_halvings must be nonnegative");
  }
  check_step_alignment(system.delays, options.step);
  if (history.dimension() != system.dimension) {
    throw ConfigError("integrator: history dimension " + std::to_string(history.dimension()) +
                      " does not match system dimension " + std::to_string(system.dimension));
  }
  const double max_delay = *std::max_element(system.delays.begin(), system.delays.end());
  if (std::abs(history.max_delay() - max_delay) > 1e-12 * std::max(1.0, max_delay)) {
    throw ConfigError("integrator: history must be defined on [-tau*, 0] with tau* = " +
                      format_number(max_delay));
  }
  DdeSolver solver(system, history, options);
  return solver.run(horizon);
}

DelaySystem make_delay_system(const ModelSpec& spec) {
  DelaySystem system;
  system.dimension = spec.dimension();
  system.delays = spec.delays();
  system.field = [&spec](double t, std::span<const double> x, std::span<const double> delayed,
                         std::span<double> out) { evaluate_rhs(spec, t, x, delayed, out); };
  system.nonnegative = true;
  return system;
}

Trajectory integrate(const ModelSpec& spec, const HistoryFunction& history, double horizon,
                     double h, double lambda) {
  StepOptions options;
  options.step = h;
  options.lambda = lambda;
  return integrate(make_delay_system(spec), history, horizon, options);
}

}  // namespace nicholson
