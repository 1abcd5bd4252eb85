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
#include "nicholson/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "nicholson/errors.hpp"

namespace nicholson {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double grid_time(const ModelSpec& spec, int k, int grid) {
  // T * k / grid keeps the points of a grid a subset of the doubled grid.
  return spec.period() * static_cast<double>(k) / static_cast<double>(grid);
}

void require_grid(int grid, int minimum) {
  if (grid < minimum) {
    throw ParameterError("grid must have at least " + std::to_string(minimum) +
                         " points, got " + std::to_string(grid));
  }
}

Status classify(double margin, double slack) {
  if (!(margin > 0.0)) {
    return Status::Fail;
  }
  return margin > slack ? Status::Pass : Status::Inconclusive;
}

Status combine(Status a, Status b) {
  if (a == Status::Fail || b == Status::Fail) {
    return Status::Fail;
  }
  if (a == Status::Inconclusive || b == Status::Inconclusive) {
    return Status::Inconclusive;
  }
  return Status::Pass;
}

double slope_inf_lipschitz(const RateTerm& term) {
  switch (term.kind()) {
    case RateKind::Linear:
      return term.primary().lipschitz_bound();
    case RateKind::SlopeInterp:
      return term.secondary().lipschitz_bound();
    case RateKind::Saturating:
      return 0.0;
  }
  return 0.0;
}

double production_lipschitz(const Species& s) {
  double l = 0.0;
  for (const auto& p : s.production) {
    l += p.lipschitz_bound();
  }
  return l;
}

struct Minimum {
  double margin = kInf;
  double slack_rate = 0.0;  // Lipschitz bound of the minimized function
};

// min over species and grid of (1 - delta)(sum b0 + sum p) - G0.
Minimum persistence_minimum(const ModelSpec& spec, double delta, int grid) {
  Minimum out;
  for (std::size_t i = 0; i < spec.dimension(); ++i) {
    const auto& s = spec.species()[i];
    double lip = s.mortality.primary().lipschitz_bound() + s.harvest.primary().lipschitz_bound();
    double input_lip = production_lipschitz(s);
    for (const auto& b : spec.inputs_to(i)) {
      input_lip += b.term.primary().lipschitz_bound();
    }
    lip += (1.0 - delta) * input_lip;
    out.slack_rate = std::max(out.slack_rate, lip);
    for (int k = 0; k < grid; ++k) {
      const double t = grid_time(spec, k, grid);
      double inputs = 0.0;
      for (const auto& b : spec.inputs_to(i)) {
        inputs += b.term.slope_zero(t);
      }
      inputs += spec.total_production(i, t);
      out.margin = std::min(out.margin, (1.0 - delta) * inputs - spec.loss_slope_zero(i, t));
    }
  }
  return out;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) {
    return nullptr;
  }
  return *v;
}

}  // namespace

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "fail";
}

json to_json(const ConditionReport& report) {
  const auto& c = report.constants;
  json j{{"hypothesis", report.hypothesis},
         {"pass", report.pass()},
         {"margin", report.margin},
         {"constants",
          {{"delta", optional_number(c.delta)},
           {"c", optional_number(c.c)},
           {"beta", optional_number(c.beta)},
           {"k0", optional_number(c.k0)},
           {"p_star", optional_number(c.p_star)},
           {"R0", optional_number(c.R0)},
           {"eps0", optional_number(c.eps0)},
           {"eps_triv", optional_number(c.eps_triv)}}},
         {"grid", report.grid},
         {"status", std::string(to_string(report.status))},
         {"grid_slack", report.grid_slack}};
  if (report.production_floor) {
    j["production_floor"] = std::string(to_string(*report.production_floor));
  }
  if (report.hypothesis == hypothesis::kZeroAttractor) {
    j["spot_samples"] = report.spot_samples;
    j["spot_failures"] = report.spot_failures;
  }
  return j;
}

double max_slope_gap(const ModelSpec& spec) noexcept {
  double gap = 0.0;
  for (const auto& s : spec.species()) {
    gap = std::max({gap, s.mortality.slope_gap_bound(), s.harvest.slope_gap_bound()});
  }
  for (const auto& m : spec.mutualism()) {
    gap = std::max(gap, m.term.slope_gap_bound());
  }
  return gap;
}

ConditionReport check_persistence(const ModelSpec& spec, double delta, int grid, double eta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError("check_persistence: delta must lie in (0, 1), got " +
                         std::to_string(delta));
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ParameterError("check_persistence: eta must be positive");
  }
  require_grid(grid, 64);
  const double spacing = spec.period() / grid;

  ConditionReport report;
  report.hypothesis = std::string(spec.dimension() == 1 ? hypothesis::kPersistenceScalar
                                                        : hypothesis::kPersistenceSystem);
  report.grid = grid;

  const Minimum m = persistence_minimum(spec, delta, grid);
  report.margin = m.margin;
  report.grid_slack = m.slack_rate * spacing;
  const Status inequality = classify(m.margin, report.grid_slack);

  double floor = kInf;
  double floor_lip = 0.0;
  for (std::size_t i = 0; i < spec.dimension(); ++i) {
    floor_lip = std::max(floor_lip, production_lipschitz(spec.species()[i]));
    for (int k = 0; k < grid; ++k) {
      floor = std::min(floor, spec.total_production(i, grid_time(spec, k, grid)));
    }
  }
  report.production_floor = classify(floor, floor_lip * spacing);
  report.status = combine(inequality, *report.production_floor);

  double p_star = 0.0;
  for (std::size_t i = 0; i < spec.dimension(); ++i) {
    p_star = std::max(p_star, spec.total_production_bound(i));
  }
  report.constants.delta = delta;
  report.constants.c = std::max(0.0, floor);
  report.constants.k0 = slope_upper_bound(spec);
  report.constants.p_star = p_star;
  if (m.margin > 0.0 && p_star > 0.0) {
    const double gap = max_slope_gap(spec);
    const double eps_tilde = gap > 0.0 ? eta / gap : kInf;
    const double gamma = std::min(m.margin, p_star * (1.0 - 1e-9));
    const double eps0 = std::min(eps_tilde, -std::log1p(-gamma / p_star));
    report.constants.eps0 = eps0;
    report.constants.eps_triv = 0.5 * eps0;
  }
  return report;
}

ConditionReport check_dissipativity(const ModelSpec& spec, int grid) {
  require_grid(grid, 1);
  ConditionReport report;
  report.hypothesis = std::string(hypothesis::kDissipativity);
  report.grid = grid;

  double margin = kInf;
  double lip = 0.0;
  for (std::size_t i = 0; i < spec.dimension(); ++i) {
    const auto& s = spec.species()[i];
    double li = slope_inf_lipschitz(s.mortality) + slope_inf_lipschitz(s.harvest);
    for (const auto& b : spec.inputs_to(i)) {
      li += slope_inf_lipschitz(b.term);
    }
    lip = std::max(lip, li);
    for (int k = 0; k < grid; ++k) {
      const double t = grid_time(spec, k, grid);
      double value = spec.loss_slope_inf(i, t);
      for (const auto& b : spec.inputs_to(i)) {
        value -= b.term.slope_inf(t);
      }
      margin = std::min(margin, value);
    }
  }
  report.margin = margin;
  report.grid_slack = lip * spec.period() / grid;
  report.status = classify(margin, report.grid_slack);
  report.constants.beta = std::max(0.0, margin);
  report.constants.k0 = slope_upper_bound(spec);
  return report;
}

ConditionReport check_zero_attractor(const ModelSpec& spec, int grid, int spot_samples,
                                     std::uint64_t seed) {
  require_grid(grid, 1);
  if (spot_samples < 0) {
    throw ParameterError("check_zero_attractor: spot_samples must be nonnegative");
  }
  ConditionReport report;
  report.hypothesis = std::string(hypothesis::kZeroAttractor);
  report.grid = grid;

  double margin = kInf;
  double lip = 0.0;
  double floor = kInf;
  for (std::size_t i = 0; i < spec.dimension(); ++i) {
    const auto& s = spec.species()[i];
    double li = s.mortality.slope_lipschitz_bound() + s.harvest.slope_lipschitz_bound() +
                production_lipschitz(s);
    for (const auto& b : spec.inputs_to(i)) {
      li += b.term.slope_lipschitz_bound();
    }
    lip = std::max(lip, li);
    for (int k = 0; k < grid; ++k) {
      const double t = grid_time(spec, k, grid);
      const double production = spec.total_production(i, t);
      double value = s.mortality.min_ratio(t) + s.harvest.min_ratio(t) - production;
      for (const auto& b : spec.inputs_to(i)) {
        value -= b.term.max_ratio(t);
      }
      margin = std::min(margin, value);
      floor = std::min(floor, production);
    }
  }
  report.margin = margin;
  report.grid_slack = lip * spec.period() / grid;
  Status status = classify(margin, report.grid_slack);

  std::mt19937_64 rng(seed);
  const std::size_t n = spec.dimension();
  std::vector<double> x(n);
  int failures = 0;
  for (int s = 0; s < spot_samples; ++s) {
    const double t = spec.period() * uniform01(rng);
    for (auto& xi : x) {
      xi = std::pow(10.0, -4.0 + 8.0 * uniform01(rng));
    }
    for (std::size_t i = 0; i < n; ++i) {
      double rhs = spec.total_production(i, t);
      for (const auto& b : spec.inputs_to(i)) {
        rhs += b.term.value(t, x[b.source]) / x[b.source];
      }
      if (spec.loss(i, t, x[i]) / x[i] < rhs) {
        ++failures;
        break;
      }
    }
  }
  report.spot_samples = spot_samples;
  report.spot_failures = failures;
  if (failures > 0) {
    status = Status::Fail;
  }
  report.status = status;
  report.constants.c = std::max(0.0, floor);
  report.constants.k0 = slope_upper_bound(spec);
  return report;
}

std::optional<double> max_feasible_delta(const ModelSpec& spec, int grid, double tolerance) {
  require_grid(grid, 1);
  if (!(persistence_minimum(spec, 0.0, grid).margin > 0.0)) {
    return std::nullopt;
  }
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (persistence_minimum(spec, mid, grid).margin > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo == 0.0) {
    return std::nullopt;
  }
  return lo;
}

json to_json(const PeriodicBounds& b) {
  auto finite_or_null = [](double v) -> json {
    if (!std::isfinite(v)) {
      return nullptr;
    }
    return v;
  };
  return json{{"p_star", b.p_star},     {"beta", b.beta},
              {"gamma", b.gamma},       {"eta", b.eta},
              {"R_tilde", b.R_tilde},   {"eps_tilde", finite_or_null(b.eps_tilde)},
              {"R0", b.R0},             {"eps0", b.eps0},
              {"eps_triv", b.eps_triv()}};
}

PeriodicBounds compute_periodic_bounds(const ModelSpec& spec, const ConditionReport& persistence,
                                       const ConditionReport& dissipativity, double eta) {
  if (persistence.hypothesis != hypothesis::kPersistenceScalar &&
      persistence.hypothesis != hypothesis::kPersistenceSystem) {
    throw PreconditionError("compute_periodic_bounds: first report is not a persistence report");
  }
  if (dissipativity.hypothesis != hypothesis::kDissipativity) {
    throw PreconditionError("compute_periodic_bounds: second report is not a dissipativity report");
  }
  if (!persistence.pass()) {
    throw PreconditionError("compute_periodic_bounds: persistence condition did not pass (" +
                            std::string(to_string(persistence.status)) + ")");
  }
  if (!dissipativity.pass()) {
    throw PreconditionError("compute_periodic_bounds: dissipativity condition did not pass (" +
                            std::string(to_string(dissipativity.status)) + ")");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ParameterError("compute_periodic_bounds: eta must be positive");
  }

  PeriodicBounds b;
  b.eta = eta;
  for (std::size_t i = 0; i < spec.dimension(); ++i) {
    b.p_star = std::max(b.p_star, spec.total_production_bound(i));
  }
  b.beta = dissipativity.margin;
  b.gamma = std::min(persistence.margin, b.p_star * (1.0 - 1e-9));

  const double gap = max_slope_gap(spec);
  b.R_tilde = std::max(0.0, gap / eta - 1.0);
  b.eps_tilde = gap > 0.0 ? eta / gap : kInf;
  b.R0 = std::max(b.R_tilde, b.p_star / (std::numbers::e * b.beta));
  b.eps0 = std::min(b.eps_tilde, -std::log1p(-b.gamma / b.p_star));
  return b;
}

void attach_bounds(ConditionReport& report, const PeriodicBounds& bounds) {
  report.constants.beta = bounds.beta;
  report.constants.p_star = bounds.p_star;
  report.constants.R0 = bounds.R0;
  report.constants.eps0 = bounds.eps0;
  report.constants.eps_triv = bounds.eps_triv();
}

}  // namespace nicholson
