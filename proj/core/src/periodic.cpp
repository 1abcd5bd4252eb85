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
#include "nicholson/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "nicholson/errors.hpp"
#include "nicholson/integrator.hpp"
#include "nicholson/parallel.hpp"

namespace nicholson {

using nlohmann::json;

namespace {

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    d = std::max(d, std::abs(a[k] - b[k]));
  }
  return d;
}

HistoryFunction as_grid(const ModelSpec& spec, const HistoryFunction& h, std::size_t nodes) {
  if (h.kind() == HistoryFunction::Kind::SampledGrid) {
    return h;
  }
  return constant_grid(spec, h.values(), nodes);
}

// Return map on flattened states with bookkeeping shared by both phases. A
// state is the node values followed by the node slopes scaled by the node
// spacing, so that a fixed point reproduces the dense interpolant and not
// just its samples.
class ReturnMap {
 public:
  ReturnMap(const ModelSpec& spec, std::size_t nodes, double h, double lambda)
      : spec_(spec),
        nodes_(nodes),
        h_(h),
        lambda_(lambda),
        spacing_(spec.max_delay() / static_cast<double>(nodes - 1)) {}

  std::vector<double> operator()(const std::vector<double>& state) {
    ++evaluations_;
    return flatten(poincare_map(spec_, wrap(state), h_, lambda_));
  }

  [[nodiscard]] std::vector<double> flatten(const HistoryFunction& grid) const {
    std::vector<double> state = grid.values();
    for (const double s : grid.slopes()) {
      state.push_back(spacing_ * s);
    }
    return state;
  }

  [[nodiscard]] HistoryFunction wrap(const std::vector<double>& state) const {
    const auto half = static_cast<std::ptrdiff_t>(state.size() / 2);
    std::vector<double> values(state.begin(), state.begin() + half);
    std::vector<double> slopes(state.begin() + half, state.end());
    for (auto& v : values) {
      v = std::max(0.0, v);
    }
    for (auto& s : slopes) {
      s /= spacing_;
    }
    return HistoryFunction::sampled(std::move(values), std::move(slopes), spec_.dimension(),
                                    spec_.max_delay());
  }

  [[nodiscard]] int evaluations() const noexcept { return evaluations_; }

 private:
  const ModelSpec& spec_;
  std::size_t nodes_;
  double h_;
  double lambda_;
  double spacing_;
  int evaluations_ = 0;
};

struct Best {
  std::vector<double> grid;
  double residual = std::numeric_limits<double>::infinity();

  void offer(const std::vector<double>& g, double r) {
    if (r < residual) {
      grid = g;
      residual = r;
    }
  }
};

// Values occupy the first half of a state; slopes may take either sign.
void clamp_nonnegative(Eigen::VectorXd& v) {
  const Eigen::Index half = v.size() / 2;
  v.head(half) = v.head(half).cwiseMax(0.0);
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

constexpr int kSoundnessPeriods = 5;
constexpr double kSoundnessFactor = 10.0;

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::string_view to_string(OrbitMethod method) noexcept {
  return method == OrbitMethod::FixedPoint ? "fixed-point" : "Broyden";
}

std::string_view to_string(BoundsVerdict verdict) noexcept {
  switch (verdict) {
    case BoundsVerdict::Pass:
      return "pass";
    case BoundsVerdict::PassWithWarning:
      return "pass-with-warning";
    case BoundsVerdict::Fail:
      return "fail";
  }
  return "fail";
}

std::size_t default_history_nodes(const ModelSpec& spec, double h) {
  if (!(h > 0.0)) {
    throw ParameterError("default_history_nodes: step must be positive");
  }
  const auto steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::round(spec.max_delay() / h)));
  const std::size_t refine = (15 + steps - 1) / steps;
  return refine * steps + 1;
}

HistoryFunction constant_grid(const ModelSpec& spec, std::span<const double> value,
                              std::size_t nodes) {
  if (value.size() != spec.dimension()) {
    throw ConfigError("constant_grid: value dimension does not match the model");
  }
  std::vector<double> values;
  values.reserve(nodes * value.size());
  for (std::size_t k = 0; k < nodes; ++k) {
    values.insert(values.end(), value.begin(), value.end());
  }
  return HistoryFunction::sampled(std::move(values), spec.dimension(), spec.max_delay());
}

HistoryFunction poincare_map(const ModelSpec& spec, const HistoryFunction& grid, double h,
                             double lambda) {
  if (grid.kind() != HistoryFunction::Kind::SampledGrid || grid.node_count() < 8) {
    throw ParameterError("poincare_map: history grid needs at least 8 nodes");
  }
  const auto traj = integrate(spec, grid, spec.period(), h, lambda);
  const std::size_t n = spec.dimension();
  const std::size_t m = grid.node_count();
  std::vector<double> out(n * m);
  std::vector<double> slopes(n * m);
  const double end = traj.end_time();
  for (std::size_t k = 0; k < m; ++k) {
    const double t = std::min(end, end + grid.node_time(k));
    traj.query(t, std::span<double>(out).subspan(k * n, n));
    traj.query_derivative(t, std::span<double>(slopes).subspan(k * n, n));
  }
  return HistoryFunction::sampled(std::move(out), std::move(slopes), n, spec.max_delay());
}

std::vector<OrbitSearchOutcome> find_periodic_orbits(const ModelSpec& spec,
                                                     const ConditionReport& persistence,
                                                     const ConditionReport& dissipativity,
                                                     std::span<const HistoryFunction> initials,
                                                     const OrbitOptions& options,
                                                     unsigned threads) {
  if (!persistence.pass() || !dissipativity.pass()) {
    throw PreconditionError("periodic orbit search needs passing persistence and dissipativity");
  }
  std::vector<OrbitSearchOutcome> outcomes(initials.size());
  parallel_for(initials.size(), threads, [&](std::size_t k) {
    try {
      outcomes[k].result.emplace(
          find_periodic_orbit(spec, persistence, dissipativity, initials[k], options));
      outcomes[k].best_residual = outcomes[k].result->residual;
    } catch (const NonConvergenceError& e) {
      outcomes[k].best_residual = e.best_residual();
    }
  });
  return outcomes;
}

Trajectory orbit_trajectory(const ModelSpec& spec, const HistoryFunction& history, double h,
                            double lambda, int periods) {
  if (periods < 1) {
    throw ParameterError("orbit_trajectory: periods must be positive");
  }
  return integrate(spec, history, periods * spec.period(), h, lambda);
}

double periodic_drift(const ModelSpec& spec, const HistoryFunction& history, double h,
                      double lambda, int periods) {
  if (periods < 2) {
    throw ParameterError("periodic_drift: need at least two periods");
  }
  const auto traj = orbit_trajectory(spec, history, h, lambda, periods);
  const double period = spec.period();
  const double last = traj.end_time() - period;
  double drift = 0.0;
  for (std::size_t n = 0; n < traj.node_count() && traj.time(n) <= last; ++n) {
    const auto later = traj.query(traj.time(n) + period);
    const auto now = traj.state(n);
    for (std::size_t i = 0; i < now.size(); ++i) {
      drift = std::max(drift, std::abs(later[i] - now[i]));
    }
  }
  return drift;
}

json to_json(const PeriodicOrbitResult& r) {
  return json{{"residual", r.residual},
              {"orbit_min", r.orbit_min},
              {"orbit_max", r.orbit_max},
              {"iterations", r.iterations},
              {"map_evaluations", r.map_evaluations},
              {"method", std::string(to_string(r.method))},
              {"nontrivial", r.nontrivial},
              {"within_bounds", r.within_bounds},
              {"lambda", r.lambda},
              {"drift", r.drift},
              {"history_nodes", r.history.node_count()},
              {"bounds", to_json(r.bounds)},
              {"residual_trace", r.residual_trace}};
}

PeriodicOrbitResult find_periodic_orbit(const ModelSpec& spec, const ConditionReport& persistence,
                                        const ConditionReport& dissipativity,
                                        const HistoryFunction& initial,
                                        const OrbitOptions& options) {
  const PeriodicBounds bounds =
      compute_periodic_bounds(spec, persistence, dissipativity, options.eta);
  if (!(options.tol > 0.0)) {
    throw ParameterError("find_periodic_orbit: tol must be positive");
  }
  if (options.max_iter < 1) {
    throw ParameterError("find_periodic_orbit: max_iter must be positive");
  }
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw ParameterError("find_periodic_orbit: damping must lie in (0, 1]");
  }
  if (initial.dimension() != spec.dimension()) {
    throw ConfigError("find_periodic_orbit: initial grid dimension does not match the model");
  }
  check_step_alignment(spec.delays(), options.step);

  const HistoryFunction start =
      as_grid(spec, initial, default_history_nodes(spec, options.step));
  ReturnMap map(spec, start.node_count(), options.step, options.lambda);

  std::vector<double> trace;
  OrbitMethod method = OrbitMethod::FixedPoint;
  Best best;
  std::optional<std::vector<double>> solution;
  double drift = 0.0;

  // A small residual is necessary but not sufficient: the flow inside a period
  // can amplify it. Accept only once re-integration confirms the drift bound,
  // otherwise tighten the residual target and keep iterating.
  double target = options.tol;
  const auto accept = [&](const std::vector<double>& state, double r) {
    if (!(r < target)) {
      return false;
    }
    drift = periodic_drift(spec, map.wrap(state), options.step, options.lambda,
                           kSoundnessPeriods);
    if (drift < kSoundnessFactor * options.tol) {
      return true;
    }
    target = r * std::min(0.5, 0.5 * kSoundnessFactor * options.tol / drift);
    return false;
  };
  int iter = 0;

  // Damped fixed-point phase.
  {
    std::vector<double> phi = map.flatten(start);
    try {
      while (iter < options.max_iter) {
        const auto image = map(phi);
        const double r = sup_distance(image, phi);
        ++iter;
        trace.push_back(r);
        best.offer(phi, r);
        if (accept(phi, r)) {
          solution = phi;
          break;
        }
        if (trace.size() > 10 && r > 0.99 * trace[trace.size() - 11]) {
          break;
        }
        if (!std::isfinite(r)) {
          break;
        }
        for (std::size_t k = 0; k < phi.size(); ++k) {
          phi[k] = (1.0 - options.damping) * phi[k] + options.damping * image[k];
        }
      }
    } catch (const PositivityError&) {
      // fall through to Broyden from the best grid so far
    }
  }

  // Broyden phase on F(phi) = P(phi) - phi.
  if (!solution && iter < options.max_iter && !best.grid.empty()) {
    method = OrbitMethod::Broyden;
    const auto dim = static_cast<Eigen::Index>(best.grid.size());
    auto residual_of = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
      return to_eigen(map(to_std(x))) - x;
    };
    auto jacobian_at = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& fx) {
      Eigen::MatrixXd jac(dim, dim);
      for (Eigen::Index c = 0; c < dim; ++c) {
        Eigen::VectorXd xp = x;
        const double step = 1e-7 * std::max(1.0, std::abs(x[c]));
        xp[c] += step;
        jac.col(c) = (residual_of(xp) - fx) / step;
      }
      return jac;
    };

    Eigen::VectorXd x = to_eigen(best.grid);
    Eigen::VectorXd fx = residual_of(x);
    Eigen::MatrixXd jac = jacobian_at(x, fx);
    bool fresh_jacobian = true;

    while (iter < options.max_iter) {
      const double r = fx.cwiseAbs().maxCoeff();
      if (accept(to_std(x), r)) {
        solution = to_std(x);
        break;
      }
      const Eigen::VectorXd dx = jac.fullPivLu().solve(-fx);
      double alpha = 1.0;
      bool accepted = false;
      Eigen::VectorXd x_new;
      Eigen::VectorXd f_new;
      for (int attempt = 0; attempt < 8; ++attempt, alpha *= 0.5) {
        x_new = x + alpha * dx;
        clamp_nonnegative(x_new);
        try {
          f_new = residual_of(x_new);
        } catch (const PositivityError&) {
          continue;
        }
        if (f_new.allFinite() && f_new.cwiseAbs().maxCoeff() < r) {
          accepted = true;
          break;
        }
      }
      ++iter;
      if (!accepted) {
        trace.push_back(r);
        if (fresh_jacobian) {
          break;
        }
        jac = jacobian_at(x, fx);
        fresh_jacobian = true;
        continue;
      }
      const Eigen::VectorXd s = x_new - x;
      const Eigen::VectorXd y = f_new - fx;
      const double ss = s.squaredNorm();
      if (ss > 0.0) {
        jac += (y - jac * s) * s.transpose() / ss;
      }
      fresh_jacobian = false;
      x = std::move(x_new);
      fx = std::move(f_new);
      const double r_new = fx.cwiseAbs().maxCoeff();
      trace.push_back(r_new);
      best.offer(to_std(x), r_new);
    }
  }

  if (!solution) {
    throw NonConvergenceError(best.residual,
                              "find_periodic_orbit: no fixed point within " +
                                  std::to_string(options.max_iter) +
                                  " iterations (best residual " + std::to_string(best.residual) +
                                  ")");
  }

  PeriodicOrbitResult result{.history = map.wrap(*solution)};
  result.lambda = options.lambda;
  result.bounds = bounds;
  result.iterations = iter;
  result.method = method;
  result.residual_trace = std::move(trace);
  result.residual = sup_distance(map(*solution), *solution);
  result.drift = drift;
  result.map_evaluations = map.evaluations();

  const auto traj = orbit_trajectory(spec, result.history, options.step, options.lambda, 1);
  const std::size_t n = spec.dimension();
  result.orbit_min.assign(n, std::numeric_limits<double>::infinity());
  result.orbit_max.assign(n, 0.0);
  for (std::size_t k = 0; k < traj.node_count(); ++k) {
    const auto x = traj.state(k);
    for (std::size_t i = 0; i < n; ++i) {
      result.orbit_min[i] = std::min(result.orbit_min[i], x[i]);
      result.orbit_max[i] = std::max(result.orbit_max[i], x[i]);
    }
  }
  result.nontrivial =
      *std::min_element(result.orbit_min.begin(), result.orbit_min.end()) > bounds.eps_triv();
  result.within_bounds = verify_lemma1_bounds(result, bounds) != BoundsVerdict::Fail;
  return result;
}

std::vector<double> averaged_field(const ModelSpec& spec, std::span<const double> x,
                                   int intervals) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw ParameterError("averaged_field: Simpson quadrature needs an even interval count");
  }
  const std::size_t n = spec.dimension();
  if (x.size() != n) {
    throw ConfigError("averaged_field: state dimension does not match the model");
  }
  std::vector<double> delayed;
  delayed.reserve(n * spec.delay_count());
  for (std::size_t j = 0; j < spec.delay_count(); ++j) {
    delayed.insert(delayed.end(), x.begin(), x.end());
  }
  std::vector<double> sum(n, 0.0);
  std::vector<double> phi(n);
  const double period = spec.period();
  for (int k = 0; k <= intervals; ++k) {
    const double t = period * static_cast<double>(k) / static_cast<double>(intervals);
    evaluate_rhs(spec, t, x, delayed, phi);
    const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[i] += w * phi[i];
    }
  }
  // (1/T) * (T / (3 intervals)) * sum
  for (auto& s : sum) {
    s = -s / (3.0 * intervals);
  }
  return sum;
}

json to_json(const MirandaResult& r) {
  return json{{"verdict", r.verdict},
              {"lower_face_worst", r.lower_face_worst},
              {"upper_face_worst", r.upper_face_worst},
              {"samples", r.samples}};
}

MirandaResult check_miranda_signs(const ModelSpec& spec, double eps, double R, int face_grid,
                                  int intervals) {
  if (!(eps > 0.0 && eps < R) || !std::isfinite(R)) {
    throw ParameterError("check_miranda_signs: need 0 < eps < R");
  }
  if (face_grid < 2) {
    throw ParameterError("check_miranda_signs: face grid needs at least 2 points per axis");
  }
  const std::size_t n = spec.dimension();
  std::vector<double> axis(static_cast<std::size_t>(face_grid));
  for (int k = 0; k < face_grid; ++k) {
    axis[static_cast<std::size_t>(k)] =
        k + 1 == face_grid ? R : eps + (R - eps) * k / static_cast<double>(face_grid - 1);
  }

  MirandaResult out;
  out.lower_face_worst.assign(n, -std::numeric_limits<double>::infinity());
  out.upper_face_worst.assign(n, std::numeric_limits<double>::infinity());

  std::size_t lattice = 1;
  for (std::size_t d = 1; d < n; ++d) {
    lattice *= axis.size();
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t index = 0; index < lattice; ++index) {
      std::size_t rest = index;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i) {
          continue;
        }
        x[l] = axis[rest % axis.size()];
        rest /= axis.size();
      }
      x[i] = eps;
      out.lower_face_worst[i] = std::max(out.lower_face_worst[i], averaged_field(spec, x, intervals)[i]);
      x[i] = R;
      out.upper_face_worst[i] = std::min(out.upper_face_worst[i], averaged_field(spec, x, intervals)[i]);
      out.samples += 2;
    }
  }
  out.verdict = true;
  for (std::size_t i = 0; i < n; ++i) {
    out.verdict = out.verdict && out.lower_face_worst[i] < 0.0 && out.upper_face_worst[i] > 0.0;
  }
  return out;
}

BoundsVerdict verify_lemma1_bounds(const PeriodicOrbitResult& result, const PeriodicBounds& bounds) {
  const double upper_band = 1e-6 * std::max(1.0, bounds.R0);
  const double lower_band = 1e-6 * std::max(1e-300, bounds.eps0);
  BoundsVerdict verdict = BoundsVerdict::Pass;
  for (std::size_t i = 0; i < result.orbit_max.size(); ++i) {
    const double hi = result.orbit_max[i];
    const double lo = result.orbit_min[i];
    if (hi > bounds.R0 + upper_band || lo < bounds.eps0 - lower_band) {
      return BoundsVerdict::Fail;
    }
    if (std::abs(hi - bounds.R0) <= upper_band || std::abs(lo - bounds.eps0) <= lower_band) {
      verdict = BoundsVerdict::PassWithWarning;
    }
  }
  return verdict;
}

}  // namespace nicholson
