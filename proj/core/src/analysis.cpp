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
#include "nicholson/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "nicholson/errors.hpp"
#include "nicholson/integrator.hpp"
#include "nicholson/parallel.hpp"

namespace nicholson {

using nlohmann::json;

GuidingSeries guiding_series(const Trajectory& traj) {
  GuidingSeries out;
  const std::size_t count = traj.node_count();
  out.times = traj.times();
  out.u.resize(count);
  out.v.resize(count);
  for (std::size_t n = 0; n < count; ++n) {
    const auto x = traj.state(n);
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    out.v[n] = *lo;
    out.u[n] = *hi;
  }
  return out;
}

double tail_infimum(const GuidingSeries& series, double cutoff) {
  double inf = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < series.times.size(); ++n) {
    if (series.times[n] >= cutoff) {
      inf = std::min(inf, series.v[n]);
    }
  }
  return inf;
}

std::vector<HistoryFunction> random_ensemble(std::size_t dimension, double max_delay,
                                             std::size_t count, double lo, double hi,
                                             std::uint64_t seed, std::size_t nodes) {
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw ParameterError("random_ensemble: need 0 < lo <= hi");
  }
  if (nodes < 2) {
    throw ParameterError("random_ensemble: need at least two history nodes");
  }
  std::mt19937_64 rng(seed);
  const double log_lo = std::log(lo);
  const double log_span = std::log(hi) - log_lo;
  std::vector<HistoryFunction> out;
  out.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    std::vector<double> values(nodes * dimension);
    for (auto& v : values) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      v = std::clamp(std::exp(log_lo + log_span * u), lo, hi);
    }
    out.push_back(HistoryFunction::sampled(std::move(values), dimension, max_delay));
  }
  return out;
}

json to_json(const PersistenceEstimate& e) {
  return json{{"transient_cutoff", e.transient_cutoff},
              {"horizon", e.horizon},
              {"tail_infima", e.tail_infima},
              {"ensemble_min", e.ensemble_min},
              {"threshold", e.threshold},
              {"verdict", e.verdict}};
}

PersistenceEstimate estimate_persistence(const ModelSpec& spec,
                                         std::span<const HistoryFunction> ensemble,
                                         double threshold, const PersistenceOptions& options) {
  const double scale = std::max(spec.period(), spec.max_delay());
  if (!(options.horizon >= 50.0 * scale)) {
    throw ParameterError("estimate_persistence: horizon must be at least 50 max(T, tau*) = " +
                         std::to_string(50.0 * scale));
  }
  if (!(options.transient_fraction > 0.0 && options.transient_fraction < 1.0)) {
    throw ParameterError("estimate_persistence: transient fraction must lie in (0, 1)");
  }
  if (ensemble.empty()) {
    throw ParameterError("estimate_persistence: empty ensemble");
  }
  for (std::size_t m = 0; m < ensemble.size(); ++m) {
    if (!(ensemble[m].min_value() > 0.0)) {
      throw PreconditionError("estimate_persistence: history " + std::to_string(m) +
                              " has a zero component; persistence needs strictly positive data");
    }
  }

  PersistenceEstimate out;
  out.horizon = options.horizon;
  out.transient_cutoff = options.transient_fraction * options.horizon;
  out.threshold = threshold;
  out.tail_infima.assign(ensemble.size(), 0.0);
  parallel_for(ensemble.size(), options.threads, [&](std::size_t m) {
    const auto traj = integrate(spec, ensemble[m], options.horizon, options.step, options.lambda);
    out.tail_infima[m] = tail_infimum(guiding_series(traj), out.transient_cutoff);
  });
  out.ensemble_min = *std::min_element(out.tail_infima.begin(), out.tail_infima.end());
  out.verdict = out.ensemble_min > threshold;
  return out;
}

json to_json(const ZeroAttractionResult& r) {
  json logs = json::array();
  for (const auto& log : r.logs) {
    logs.push_back(json{{"t", log.times}, {"u", log.u}});
  }
  return json{{"verdict", r.verdict},
              {"final_u", r.final_u},
              {"landmark_checks", r.landmark_checks},
              {"landmark_violations", r.landmark_violations},
              {"worst_landmark", r.worst_landmark},
              {"decay_logs", std::move(logs)}};
}

ZeroAttractionResult verify_zero_attraction(const ModelSpec& spec,
                                            const ConditionReport& attractor,
                                            std::span<const HistoryFunction> ensemble,
                                            const ZeroAttractionOptions& options) {
  if (attractor.hypothesis != hypothesis::kZeroAttractor || !attractor.pass()) {
    throw PreconditionError("verify_zero_attraction: requires a passing zero-attractor report");
  }
  if (!(options.tol > 0.0)) {
    throw ParameterError("verify_zero_attraction: tol must be positive");
  }
  if (ensemble.empty()) {
    throw ParameterError("verify_zero_attraction: empty ensemble");
  }

  const double tau = spec.max_delay();
  const double landmark_limit = std::exp(-1.0) + 10.0 * options.step;

  struct Member {
    double final_u = 0.0;
    DecayLog log;
    std::size_t checks = 0;
    std::size_t violations = 0;
    double worst = 0.0;
  };
  std::vector<Member> members(ensemble.size());

  parallel_for(ensemble.size(), options.threads, [&](std::size_t m) {
    const auto traj = integrate(spec, ensemble[m], options.horizon, options.step);
    const auto series = guiding_series(traj);
    auto& out = members[m];
    out.final_u = series.u.back();

    for (double t = tau; t < options.horizon; t *= 2.0) {
      const auto x = traj.query(t);
      out.log.times.push_back(t);
      out.log.u.push_back(*std::max_element(x.begin(), x.end()));
    }
    out.log.times.push_back(series.times.back());
    out.log.u.push_back(series.u.back());

    for (std::size_t n = 0; n + 1 < series.times.size(); ++n) {
      if (series.times[n] <= tau || series.u[n + 1] < series.u[n]) {
        continue;
      }
      ++out.checks;
      out.worst = std::max(out.worst, series.u[n]);
      if (series.u[n] > landmark_limit) {
        ++out.violations;
      }
    }
  });

  ZeroAttractionResult result;
  result.verdict = true;
  for (auto& m : members) {
    result.final_u.push_back(m.final_u);
    result.verdict = result.verdict && m.final_u < options.tol;
    result.landmark_checks += m.checks;
    result.landmark_violations += m.violations;
    result.worst_landmark = std::max(result.worst_landmark, m.worst);
    result.logs.push_back(std::move(m.log));
  }
  return result;
}

}  // namespace nicholson
