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
// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "nicholson/analysis.hpp"
#include "nicholson/conditions.hpp"
#include "nicholson/errors.hpp"
#include "nicholson/integrator.hpp"
#include "nicholson/model_json.hpp"
#include "nicholson/periodic.hpp"
#include "oracles.hpp"
#include "random_specs.hpp"

namespace {

namespace fs = std::filesystem;
namespace nt = nicholson::testing;
using namespace nicholson;
using nlohmann::json;

constexpr std::uint64_t kSuiteSeed = 20261018;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

ModelSpec scalar_spec(double d, double p, double tau, double period = 1.0) {
  Species s{RateTerm::linear(PeriodicSignal::constant(d)), {}, {PeriodicSignal::constant(p)}};
  return ModelSpec(period, {tau}, {s});
}

double common_step(const ModelSpec& spec) {
  // Every suite delay is a multiple of 0.25.
  (void)spec;
  return 0.05;
}

Outcome integrator_order() {
  const ModelSpec spec = scalar_spec(1.0, std::numbers::e, 1.0);
  const auto phi = HistoryFunction::constant({1.1}, 1.0);
  const auto terminal = [&](double h) { return integrate(spec, phi, 10.0, h).query(10.0, 0); };
  const double reference = terminal(1.0 / 320.0);
  const double e10 = std::abs(terminal(0.1) - reference);
  const double e20 = std::abs(terminal(0.05) - reference);
  const double e40 = std::abs(terminal(0.025) - reference);
  const double r1 = e10 / e20;
  const double r2 = e20 / e40;
  const bool pass = r1 >= 12.0 && r1 <= 20.0 && r2 >= 12.0 && r2 <= 20.0;
  return {pass, fmt("errors %.3e %.3e %.3e, ratios %.2f %.2f (need [12, 20])", e10, e20, e40,
                    r1, r2)};
}

Outcome exact_delay_oracle() {
  DelaySystem system{1, {1.0},
                     [](double, std::span<const double> x, std::span<const double> xd,
                        std::span<double> out) {
                       (void)x;
                       out[0] = -xd[0];
                     },
                     false};
  const auto phi = HistoryFunction::constant({1.0}, 1.0);
  double worst = 0.0;
  for (const double h : {0.25, 0.2, 0.125, 0.1, 0.0625, 0.05, 0.025}) {
    const Trajectory traj = integrate(system, phi, 2.0, StepOptions{h});
    worst = std::max(worst, std::abs(traj.query(1.0, 0) - nt::linear_delay_exact(1.0)));
    worst = std::max(worst, std::abs(traj.query(2.0, 0) - nt::linear_delay_exact(2.0)));
  }
  return {worst <= 1e-12, fmt("max |x - exact| at t = 1, 2 over 7 step sizes: %.3e", worst)};
}

Outcome equilibrium_oracle() {
  nt::Rng rng(kSuiteSeed);
  double worst = 0.0;
  std::string methods;
  for (int k = 0; k < 5; ++k) {
    const double d0 = nt::uniform(rng, 0.3, 2.0);
    const double ratio = std::exp(nt::uniform(rng, std::log(1.5), std::log(20.0)));
    const ModelSpec spec = scalar_spec(d0, d0 * ratio, 1.0);
    const auto persistence = check_persistence(spec, 0.01, nt::kSuiteGrid);
    const auto dissipativity = check_dissipativity(spec, nt::kSuiteGrid);
    const double h = 0.05;
    const std::vector<double> start{0.5};
    const auto initial = constant_grid(spec, start, default_history_nodes(spec, h));
    OrbitOptions options;
    options.step = h;
    const auto result = find_periodic_orbit(spec, persistence, dissipativity, initial, options);
    const double target = nt::scalar_equilibrium(d0, d0 * ratio);
    for (const double x : result.history.values()) worst = std::max(worst, std::abs(x - target));
    worst = std::max(worst, std::abs(result.orbit_min[0] - target));
    worst = std::max(worst, std::abs(result.orbit_max[0] - target));
    methods += std::string(k ? "," : "") + std::string(to_string(result.method));
  }
  return {worst <= 1e-7, fmt("5 pairs, max |orbit - ln(p/d)| = %.3e; methods %s", worst,
                             methods.c_str())};
}

Outcome persistence_suite(std::vector<json>& artifacts) {
  nt::Rng rng(kSuiteSeed + 4);
  std::size_t violations = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 20; ++s) {
    const ModelSpec spec = nt::random_persistent_spec(rng);
    const auto report = check_persistence(spec, nt::kSuiteDelta, nt::kSuiteGrid);
    const double threshold = *report.constants.eps_triv;
    const double scale = std::max(spec.period(), spec.max_delay());
    const auto ensemble =
        random_ensemble(spec.dimension(), spec.max_delay(), 10, 0.01, 10.0, rng());
    PersistenceOptions options;
    options.horizon = 200.0 * scale;
    options.step = common_step(spec);
    const auto estimate = estimate_persistence(spec, ensemble, threshold, options);
    for (const double inf : estimate.tail_infima) {
      if (!(inf > threshold)) ++violations;
      worst_gap = std::min(worst_gap, inf - threshold);
    }
    artifacts.push_back(to_json(estimate));
  }
  return {violations == 0,
          fmt("20 specs x 10 histories, %zu tail-infima <= eps_triv; min(tail_inf - eps_triv) = %.4g",
              violations, worst_gap)};
}

Outcome attractor_suite(std::vector<json>& artifacts) {
  nt::Rng rng(kSuiteSeed + 5);
  std::size_t not_decayed = 0;
  std::size_t landmark_checks = 0;
  std::size_t landmark_violations = 0;
  double worst_final = 0.0;
  for (int s = 0; s < 20; ++s) {
    const ModelSpec spec = nt::random_attracting_spec(rng);
    const auto report = check_zero_attractor(spec, nt::kSuiteGrid, 1000);
    const double scale = std::max(spec.period(), spec.max_delay());
    const auto ensemble =
        random_ensemble(spec.dimension(), spec.max_delay(), 10, 0.01, 10.0, rng());
    ZeroAttractionOptions options;
    options.horizon = 200.0 * scale;
    options.step = common_step(spec);
    options.tol = 1e-6;
    const auto result = verify_zero_attraction(spec, report, ensemble, options);
    for (const double u : result.final_u) {
      if (!(u < 1e-6)) ++not_decayed;
      worst_final = std::max(worst_final, u);
    }
    landmark_checks += result.landmark_checks;
    landmark_violations += result.landmark_violations;
    artifacts.push_back(to_json(result));
  }
  return {not_decayed == 0 && landmark_violations == 0,
          fmt("20 specs x 10 histories, max u(horizon) = %.3e, %zu not decayed; landmarks "
              "%zu/%zu violated",
              worst_final, not_decayed, landmark_violations, landmark_checks)};
}

Outcome orbit_bounds(std::vector<json>& artifacts) {
  nt::Rng rng(kSuiteSeed + 6);
  std::vector<ModelSpec> suite{scalar_spec(1.0, std::numbers::e, 1.0)};
  suite.push_back(ModelSpec(
      1.0, {1.0},
      {Species{RateTerm::linear(PeriodicSignal::constant(1.0)),
               {},
               {PeriodicSignal(std::numbers::e, {{1, 0.1 * std::numbers::e, 0.0}}, 1.0)}}}));
  for (int s = 0; s < 12; ++s) suite.push_back(nt::random_periodic_spec(rng));

  std::size_t converged = 0;
  std::size_t failures = 0;
  std::size_t warnings = 0;
  std::size_t unconverged = 0;
  std::size_t trivial = 0;
  for (const auto& spec : suite) {
    const auto persistence = check_persistence(spec, nt::kSuiteDelta, nt::kSuiteGrid);
    const auto dissipativity = check_dissipativity(spec, nt::kSuiteGrid);
    const auto bounds = compute_periodic_bounds(spec, persistence, dissipativity);
    for (const double lambda : {0.25, 0.5, 1.0}) {
      const double h = common_step(spec);
      const std::vector<double> start(spec.dimension(), 1.0);
      const auto initial = constant_grid(spec, start, default_history_nodes(spec, h));
      OrbitOptions options;
      options.step = h;
      options.lambda = lambda;
      try {
        const auto result =
            find_periodic_orbit(spec, persistence, dissipativity, initial, options);
        ++converged;
        if (!result.nontrivial) ++trivial;
        switch (verify_lemma1_bounds(result, bounds)) {
          case BoundsVerdict::Pass:
            break;
          case BoundsVerdict::PassWithWarning:
            ++warnings;
            break;
          case BoundsVerdict::Fail:
            ++failures;
            break;
        }
        artifacts.push_back(to_json(result));
      } catch (const NonConvergenceError&) {
        ++unconverged;
      }
    }
  }
  return {failures == 0 && converged > 0,
          fmt("%zu specs x 3 lambdas: %zu converged (%zu trivial), %zu outside [eps0, R0], %zu "
              "degenerate-equality warnings, %zu not converged",
              suite.size(), converged, trivial, failures, warnings, unconverged)};
}

Outcome miranda_signs() {
  nt::Rng rng(kSuiteSeed + 7);
  std::size_t checked = 0;
  std::size_t failed = 0;
  for (int s = 0; s < 12; ++s) {
    const ModelSpec spec = nt::random_periodic_spec(rng);
    const auto persistence = check_persistence(spec, nt::kSuiteDelta, nt::kSuiteGrid);
    const auto dissipativity = check_dissipativity(spec, nt::kSuiteGrid);
    const auto bounds = compute_periodic_bounds(spec, persistence, dissipativity);
    const auto result = check_miranda_signs(spec, bounds.eps0 / 2.0, 2.0 * bounds.R0, 5);
    ++checked;
    if (!result.verdict) ++failed;
  }
  const ModelSpec example = scalar_spec(1.0, std::numbers::e, 1.0);
  double analytic_error = 0.0;
  for (const double x : {0.1, 9.0}) {
    const std::vector<double> state{x};
    const double g = averaged_field(example, state)[0];
    analytic_error =
        std::max(analytic_error, std::abs(g - nt::scalar_averaged_field(1.0, std::numbers::e, x)));
  }
  const double g01 = averaged_field(example, std::vector<double>{0.1})[0];
  const double g9 = averaged_field(example, std::vector<double>{9.0})[0];
  const bool literal = std::abs(g01 - (-0.1460)) <= 1e-4 && std::abs(g9 - 8.9970) <= 1e-4;
  return {failed == 0 && analytic_error <= 1e-4 && literal,
          fmt("%zu/%zu random specs fail the signs at (eps0/2, 2R0); g(0.1) = %.6f, g(9) = %.6f, "
              "max |g - closed form| = %.2e",
              failed, checked, g01, g9, analytic_error)};
}

int run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"nicholson"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

json scalar_model_json(double d, double p) {
  return {{"n", 1},
          {"period", 1.0},
          {"delays", {1.0}},
          {"species",
           {{{"mortality", {{"kind", "Linear"}, {"slope", {{"mean", d}}}}},
             {"production", {{{"mean", p}}}}}}}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream(path) << j.dump(2) << '\n';
}

std::vector<std::map<std::string, std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  const auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  const auto header = split(line);
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    const auto cells = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t k = 0; k < header.size() && k < cells.size(); ++k) row[header[k]] = cells[k];
    rows.push_back(std::move(row));
  }
  return rows;
}

Outcome sweep_boundary(const fs::path& work) {
  const json config = {
      {"model", scalar_model_json(1.0, 1.0)},
      {"horizon", 60.0},
      {"h", 0.05},
      {"delta", 0.01},
      {"grid", 256},
      {"spot_samples", 200},
      {"seed", kSuiteSeed},
      {"sweep",
       {{"parameters",
         {{{"name", "p_mean"},
           {"path", "/species/0/production/0/mean"},
           {"min", 0.5},
           {"max", 5.0},
           {"count", 46}}}}}}};
  const fs::path config_path = work / "sweep.json";
  write_json(config_path, config);
  const int code = run_cli({"sweep", "--config", config_path.string(), "--out",
                            (work / "sweep").string(), "--force"});
  if (code != 0) return {false, fmt("sweep exited with %d", code)};
  const auto rows = read_csv(work / "sweep" / "atlas.csv");
  double last_attracting = -1.0;
  double first_persistent = -1.0;
  bool ordered = true;
  for (const auto& row : rows) {
    const double p = std::stod(row.at("p_mean"));
    const auto& verdict = row.at("verdict");
    if (verdict == "zero-attracting") {
      if (first_persistent >= 0.0) ordered = false;
      last_attracting = p;
    }
    if (verdict == "persistent" && first_persistent < 0.0) first_persistent = p;
  }
  if (last_attracting < 0.0 || first_persistent < 0.0) {
    return {false, "verdict never flips across the sweep"};
  }
  const double flip = 0.5 * (last_attracting + first_persistent);
  const bool pass = ordered && std::abs(flip - 1.0) <= 0.1 &&
                    first_persistent - last_attracting <= 0.2 + 1e-12;
  return {pass, fmt("%zu cells; last zero-attracting p = %.2f, first persistent p = %.2f, flip "
                    "at %.3f (need |flip - 1| <= 0.1)",
                    rows.size(), last_attracting, first_persistent, flip)};
}

/// Runs every CLI workflow into `dir`.
void run_artifact_suite(const fs::path& work, const fs::path& dir, const std::string& threads) {
  const json periodic_model = {
      {"n", 1},
      {"period", 1.0},
      {"delays", {1.0}},
      {"species",
       {{{"mortality", {{"kind", "Linear"}, {"slope", 1.0}}},
         {"production", {{{"mean", std::numbers::e}, {"harmonics", {{1, 0.1 * std::numbers::e, 0.0}}}}}}}}}};
  const json persistent = {{"model", periodic_model}, {"horizon", 60.0}, {"h", 0.05},
                           {"ensemble", 6},           {"seed", 11},      {"history", {0.7}}};
  json attracting = {{"model", scalar_model_json(2.0, 1.0)},
                     {"horizon", 100.0},
                     {"h", 0.05},
                     {"ensemble", 6},
                     {"checks", {"attractor"}},
                     {"seed", 12}};
  json sweep = persistent;
  sweep["sweep"] = {{"parameters",
                     {{{"name", "p"}, {"path", "/species/0/production/0/mean"}, {"min", 0.5},
                       {"max", 4.0}, {"count", 8}},
                      {{"name", "d"}, {"path", "/species/0/mortality/slope"}, {"min", 0.5},
                       {"max", 2.0}, {"count", 4}}}}};
  write_json(work / "persistent.json", persistent);
  write_json(work / "attracting.json", attracting);
  write_json(work / "sweep2.json", sweep);
  const auto go = [&](const std::string& command, const std::string& config) {
    run_cli({command, "--config", (work / config).string(), "--out", (dir / command).string(),
             "--force", "--threads", threads});
  };
  go("simulate", "persistent.json");
  go("check", "persistent.json");
  go("persistence", "persistent.json");
  go("periodic", "persistent.json");
  go("miranda", "persistent.json");
  go("attractor", "attracting.json");
  go("sweep", "sweep2.json");
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[fs::relative(entry.path(), dir).string()] = ss.str();
  }
  return files;
}

Outcome reproducibility(const fs::path& work, const std::vector<json>& first_library) {
  run_artifact_suite(work, work / "run_a", "1");
  run_artifact_suite(work, work / "run_b", "2");
  const auto a = read_tree(work / "run_a");
  const auto b = read_tree(work / "run_b");
  std::size_t differing = 0;
  for (const auto& [name, content] : a) {
    const auto it = b.find(name);
    if (it == b.end() || it->second != content) ++differing;
  }
  if (a.size() != b.size()) ++differing;

  // Re-run the randomized library suites and compare their JSON dumps.
  std::vector<json> second_library;
  persistence_suite(second_library);
  attractor_suite(second_library);
  orbit_bounds(second_library);
  std::size_t library_diffs = first_library.size() == second_library.size() ? 0 : 1;
  for (std::size_t k = 0; k < std::min(first_library.size(), second_library.size()); ++k) {
    if (first_library[k].dump() != second_library[k].dump()) ++library_diffs;
  }
  return {!a.empty() && differing == 0 && library_diffs == 0,
          fmt("%zu CLI artifacts (1 vs 2 threads), %zu differ; %zu suite JSON documents, %zu differ",
              a.size(), differing, first_library.size(), library_diffs)};
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "nicholson_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  std::vector<json> library_artifacts;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"integrator order", integrator_order},
      {"exact delay oracle", exact_delay_oracle},
      {"equilibrium oracle", equilibrium_oracle},
      {"persistence suite", [&] { return persistence_suite(library_artifacts); }},
      {"zero-attractor suite", [&] { return attractor_suite(library_artifacts); }},
      {"a priori orbit bounds", [&] { return orbit_bounds(library_artifacts); }},
      {"Miranda signs", miranda_signs},
      {"sweep boundary", [&] { return sweep_boundary(work); }},
      {"reproducibility", [&] { return reproducibility(work, library_artifacts); }},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  [" << k + 1 << "] " << criteria[k].first
              << ": " << outcome.detail << fmt(" (%.1fs)", seconds) << std::endl;
  }
  fs::remove_all(work);
  std::cout << (failures == 0 ? "all acceptance criteria passed"
                              : fmt("%d acceptance criteria failed", failures))
            << std::endl;
  return failures == 0 ? 0 : 1;
}
