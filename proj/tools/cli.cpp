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
#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nicholson/analysis.hpp"
#include "nicholson/conditions.hpp"
#include "nicholson/csv.hpp"
#include "nicholson/errors.hpp"
#include "nicholson/integrator.hpp"
#include "nicholson/model_json.hpp"
#include "nicholson/parallel.hpp"
#include "nicholson/periodic.hpp"
#include "run_config.hpp"

#ifndef NICHOLSON_VERSION
#define NICHOLSON_VERSION "0.0.0"
#endif

namespace nicholson::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Flags {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  bool force = false;
  std::optional<unsigned> threads;
};

/// Everything a command needs; files are staged and written only at the end.
struct Context {
  std::string command;
  RunConfig config;
  fs::path out_dir;
  bool force = false;
  unsigned threads = 1;
  std::ostream* out = nullptr;
  std::vector<std::pair<std::string, std::string>> files;

  void stage(std::string name, std::string content) {
    files.emplace_back(std::move(name), std::move(content));
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

unsigned resolve_threads(const std::optional<unsigned>& flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("NICHOLSON_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value >= 1) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
    }
    throw ConfigError("NICHOLSON_THREADS must be a positive integer");
  }
  return 1;
}

/// Refuses to overwrite any of `names` inside the output directory.
void guard_outputs(const Context& ctx, const std::vector<std::string>& names) {
  if (ctx.force) return;
  for (const auto& name : names) {
    if (fs::exists(ctx.out_dir / name)) {
      throw ConfigError("output '" + (ctx.out_dir / name).string() +
                        "' already exists; pass --force to overwrite");
    }
  }
}

void flush(Context& ctx, int exit_code) {
  json outputs = json::array();
  for (const auto& [name, content] : ctx.files) outputs.push_back(name);
  outputs.push_back("manifest.json");
  const json manifest = {
      {"command", ctx.command},
      {"version", NICHOLSON_VERSION},
      {"config_hash", config_hash(ctx.config)},
      {"seed", ctx.config.seed},
      {"exit_code", exit_code},
      {"outputs", outputs},
  };
  ctx.stage("manifest.json", dump(manifest));
  fs::create_directories(ctx.out_dir);
  for (const auto& [name, content] : ctx.files) {
    std::ofstream file(ctx.out_dir / name, std::ios::binary | std::ios::trunc);
    file << content;
    if (!file) throw ConfigError("cannot write '" + (ctx.out_dir / name).string() + "'");
  }
}

json reports_json(const std::vector<ConditionReport>& reports) {
  json array = json::array();
  for (const auto& r : reports) array.push_back(to_json(r));
  return array;
}

struct HypothesisSet {
  ConditionReport persistence;
  ConditionReport dissipativity;
  std::optional<PeriodicBounds> bounds;
};

HypothesisSet periodic_hypotheses(const RunConfig& config) {
  const ModelSpec& spec = config.spec();
  HypothesisSet set{check_persistence(spec, config.delta, config.grid, config.eta),
                    check_dissipativity(spec, config.grid), std::nullopt};
  if (set.persistence.pass() && set.dissipativity.pass()) {
    set.bounds = compute_periodic_bounds(spec, set.persistence, set.dissipativity, config.eta);
    attach_bounds(set.persistence, *set.bounds);
  }
  return set;
}

json bounds_json(const std::optional<PeriodicBounds>& bounds) {
  return bounds ? to_json(*bounds) : json(nullptr);
}

int cmd_simulate(Context& ctx) {
  guard_outputs(ctx, {"trajectory.csv", "manifest.json"});
  const RunConfig& config = ctx.config;
  const ModelSpec& spec = config.spec();
  const auto history = HistoryFunction::constant(config.history, spec.max_delay());
  const Trajectory traj = integrate(spec, history, config.horizon, config.h, config.lambda);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  ctx.stage("trajectory.csv", csv.str());
  flush(ctx, kOk);
  return kOk;
}

int cmd_check(Context& ctx) {
  guard_outputs(ctx, {"report.json", "manifest.json"});
  const RunConfig& config = ctx.config;
  const ModelSpec& spec = config.spec();
  std::vector<ConditionReport> reports;
  std::optional<PeriodicBounds> bounds;
  const ConditionReport* persistence = nullptr;
  const ConditionReport* dissipativity = nullptr;
  for (const auto& name : config.checks) {
    if (name == "persistence") {
      reports.push_back(check_persistence(spec, config.delta, config.grid, config.eta));
    } else if (name == "dissipativity") {
      reports.push_back(check_dissipativity(spec, config.grid));
    } else {
      reports.push_back(check_zero_attractor(spec, config.grid, config.spot_samples, config.seed));
    }
  }
  bool pass = true;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    pass = pass && reports[k].pass();
    if (config.checks[k] == "persistence") persistence = &reports[k];
    if (config.checks[k] == "dissipativity") dissipativity = &reports[k];
  }
  if (persistence && dissipativity && persistence->pass() && dissipativity->pass()) {
    bounds = compute_periodic_bounds(spec, *persistence, *dissipativity, config.eta);
  }
  const json report = {{"pass", pass}, {"reports", reports_json(reports)},
                       {"bounds", bounds_json(bounds)}};
  ctx.stage("report.json", dump(report));
  const int code = pass ? kOk : kHypothesisFailed;
  flush(ctx, code);
  return code;
}

void require_long_horizon(const RunConfig& config) {
  const ModelSpec& spec = config.spec();
  const double scale = std::max(spec.period(), spec.max_delay());
  if (config.horizon < 50.0 * scale) {
    throw ConfigError("'horizon' must be at least 50 max(T, tau*) for long-run analyses");
  }
}

int cmd_persistence(Context& ctx) {
  guard_outputs(ctx, {"persistence.json", "guiding.csv", "manifest.json"});
  const RunConfig& config = ctx.config;
  const ModelSpec& spec = config.spec();
  require_long_horizon(config);
  const ConditionReport report = check_persistence(spec, config.delta, config.grid, config.eta);
  const double threshold = report.constants.eps_triv.value_or(0.0);
  const auto ensemble = random_ensemble(spec.dimension(), spec.max_delay(),
                                        static_cast<std::size_t>(config.ensemble),
                                        config.ensemble_lo, config.ensemble_hi, config.seed);
  PersistenceOptions options;
  options.horizon = config.horizon;
  options.step = config.h;
  options.transient_fraction = config.transient;
  options.lambda = config.lambda;
  options.threads = ctx.threads;
  const PersistenceEstimate estimate = estimate_persistence(spec, ensemble, threshold, options);

  const Trajectory first = integrate(spec, ensemble.front(), config.horizon, config.h, config.lambda);
  std::ostringstream csv;
  write_guiding_csv(csv, guiding_series(first));

  const bool pass = report.pass() && estimate.verdict;
  ctx.stage("persistence.json",
            dump({{"pass", pass}, {"report", to_json(report)}, {"estimate", to_json(estimate)}}));
  ctx.stage("guiding.csv", csv.str());
  const int code = pass ? kOk : kHypothesisFailed;
  flush(ctx, code);
  return code;
}

int cmd_attractor(Context& ctx) {
  guard_outputs(ctx, {"attractor.json", "decay.csv", "manifest.json"});
  const RunConfig& config = ctx.config;
  const ModelSpec& spec = config.spec();
  require_long_horizon(config);
  const ConditionReport report =
      check_zero_attractor(spec, config.grid, config.spot_samples, config.seed);
  json result = nullptr;
  bool pass = false;
  std::ostringstream csv;
  csv << "member,t,u\n";
  if (report.pass()) {
    const auto ensemble = random_ensemble(spec.dimension(), spec.max_delay(),
                                          static_cast<std::size_t>(config.ensemble),
                                          config.ensemble_lo, config.ensemble_hi, config.seed);
    ZeroAttractionOptions options;
    options.horizon = config.horizon;
    options.step = config.h;
    options.tol = config.attractor_tol;
    options.threads = ctx.threads;
    const ZeroAttractionResult decay = verify_zero_attraction(spec, report, ensemble, options);
    pass = decay.verdict && decay.landmarks_hold();
    result = to_json(decay);
    for (std::size_t m = 0; m < decay.logs.size(); ++m) {
      const auto& log = decay.logs[m];
      for (std::size_t k = 0; k < log.times.size(); ++k) {
        csv << m << ',' << format_g17(log.times[k]) << ',' << format_g17(log.u[k]) << '\n';
      }
    }
  }
  ctx.stage("attractor.json", dump({{"pass", pass}, {"report", to_json(report)}, {"result", result}}));
  ctx.stage("decay.csv", csv.str());
  const int code = pass ? kOk : kHypothesisFailed;
  flush(ctx, code);
  return code;
}

int cmd_periodic(Context& ctx) {
  guard_outputs(ctx, {"periodic.json", "orbit.csv", "manifest.json"});
  const RunConfig& config = ctx.config;
  const ModelSpec& spec = config.spec();
  const HypothesisSet hyp = periodic_hypotheses(config);
  json summary = {{"reports", reports_json({hyp.persistence, hyp.dissipativity})},
                  {"bounds", bounds_json(hyp.bounds)}};
  if (!hyp.bounds) {
    summary["pass"] = false;
    summary["result"] = nullptr;
    ctx.stage("periodic.json", dump(summary));
    flush(ctx, kHypothesisFailed);
    return kHypothesisFailed;
  }
  const std::size_t nodes = config.orbit_nodes ? static_cast<std::size_t>(*config.orbit_nodes)
                                               : default_history_nodes(spec, config.h);
  const auto& start = config.orbit_initial ? *config.orbit_initial : config.history;
  const HistoryFunction initial = constant_grid(spec, start, nodes);
  OrbitOptions options;
  options.step = config.h;
  options.tol = config.orbit_tol;
  options.max_iter = config.orbit_max_iter;
  options.lambda = config.lambda;
  options.eta = config.eta;
  try {
    const PeriodicOrbitResult result =
        find_periodic_orbit(spec, hyp.persistence, hyp.dissipativity, initial, options);
    const BoundsVerdict verdict = verify_lemma1_bounds(result, *hyp.bounds);
    const bool pass = result.residual < config.orbit_tol && result.nontrivial &&
                      verdict != BoundsVerdict::Fail;
    summary["pass"] = pass;
    summary["result"] = to_json(result);
    summary["bounds_verdict"] = std::string(to_string(verdict));
    std::ostringstream csv;
    write_trajectory_csv(csv, orbit_trajectory(spec, result.history, config.h, config.lambda));
    ctx.stage("periodic.json", dump(summary));
    ctx.stage("orbit.csv", csv.str());
    const int code = pass ? kOk : kHypothesisFailed;
    flush(ctx, code);
    return code;
  } catch (const NonConvergenceError& e) {
    summary["pass"] = false;
    summary["result"] = nullptr;
    summary["error"] = e.what();
    summary["best_residual"] = e.best_residual();
    ctx.stage("periodic.json", dump(summary));
    flush(ctx, kNonConvergence);
    *ctx.out << "periodic: " << e.what() << '\n';
    return kNonConvergence;
  }
}

int cmd_miranda(Context& ctx) {
  guard_outputs(ctx, {"miranda.json", "manifest.json"});
  const RunConfig& config = ctx.config;
  const ModelSpec& spec = config.spec();
  const HypothesisSet hyp = periodic_hypotheses(config);
  json summary = {{"reports", reports_json({hyp.persistence, hyp.dissipativity})},
                  {"bounds", bounds_json(hyp.bounds)}};
  const bool explicit_box = config.miranda_eps && config.miranda_R;
  if (!hyp.bounds && !explicit_box) {
    summary["pass"] = false;
    summary["result"] = nullptr;
    ctx.stage("miranda.json", dump(summary));
    flush(ctx, kHypothesisFailed);
    return kHypothesisFailed;
  }
  const double eps = config.miranda_eps.value_or(hyp.bounds ? hyp.bounds->eps_triv() : 0.0);
  const double R = config.miranda_R.value_or(hyp.bounds ? 2.0 * hyp.bounds->R0 : 0.0);
  if (!(eps < R)) throw ConfigError("Miranda box needs eps < R");
  const MirandaResult result = check_miranda_signs(spec, eps, R, config.face_grid);
  summary["eps"] = eps;
  summary["R"] = R;
  summary["pass"] = result.verdict;
  summary["result"] = to_json(result);
  ctx.stage("miranda.json", dump(summary));
  const int code = result.verdict ? kOk : kHypothesisFailed;
  flush(ctx, code);
  return code;
}

struct SweepRow {
  std::vector<double> parameters;
  std::optional<ConditionReport> persistence;
  std::optional<ConditionReport> dissipativity;
  std::optional<ConditionReport> attractor;
  std::optional<double> tail_inf;
  std::optional<double> u_final;
  std::string verdict;
};

std::string cell(const std::optional<double>& value) {
  return value ? format_g17(*value) : std::string();
}

int cmd_sweep(Context& ctx) {
  const RunConfig& config = ctx.config;
  if (config.sweep.empty()) throw ConfigError("sweep needs a 'sweep' section");
  guard_outputs(ctx, {"atlas.csv", "manifest.json"});

  std::size_t cells = 1;
  for (const auto& p : config.sweep) cells *= static_cast<std::size_t>(p.count);
  std::vector<SweepRow> rows(cells);

  parallel_for(cells, ctx.threads, [&](std::size_t index) {
    SweepRow& row = rows[index];
    json model = config.model_document;
    std::size_t rest = index;
    // Last parameter varies fastest.
    std::vector<int> k(config.sweep.size());
    for (std::size_t q = config.sweep.size(); q-- > 0;) {
      k[q] = static_cast<int>(rest % static_cast<std::size_t>(config.sweep[q].count));
      rest /= static_cast<std::size_t>(config.sweep[q].count);
    }
    for (std::size_t q = 0; q < config.sweep.size(); ++q) {
      const double value = config.sweep[q].value(k[q]);
      row.parameters.push_back(value);
      model[json::json_pointer(config.sweep[q].path)] = value;
    }
    std::optional<ModelSpec> spec;
    try {
      spec.emplace(model_from_json(model));
    } catch (const ConfigError&) {
      row.verdict = "invalid";
      return;
    }
    row.persistence = check_persistence(*spec, config.delta, config.grid, config.eta);
    row.dissipativity = check_dissipativity(*spec, config.grid);
    row.attractor = check_zero_attractor(*spec, config.grid, config.spot_samples, config.seed);
    try {
      const auto history = HistoryFunction::constant(config.history, spec->max_delay());
      const Trajectory traj = integrate(*spec, history, config.horizon, config.h, config.lambda);
      const GuidingSeries series = guiding_series(traj);
      row.tail_inf = tail_infimum(series, config.transient * config.horizon);
      row.u_final = series.u.back();
    } catch (const PositivityError&) {
    }
    const bool persistent = row.persistence->pass();
    const bool attracting = row.attractor->pass();
    row.verdict = persistent && attracting ? "contradictory"
                  : persistent             ? "persistent"
                  : attracting             ? "zero-attracting"
                                           : "undetermined";
  });

  std::ostringstream csv;
  for (const auto& p : config.sweep) csv << p.name << ',';
  csv << "persistence_margin,persistence_status,dissipativity_margin,beta,dissipativity_status,"
         "attractor_margin,attractor_status,tail_inf,u_final,verdict\n";
  for (const auto& row : rows) {
    for (const double value : row.parameters) csv << format_g17(value) << ',';
    const auto report_cells = [&csv](const std::optional<ConditionReport>& r) {
      if (r) {
        csv << format_g17(r->margin) << ',';
      } else {
        csv << ',';
      }
    };
    report_cells(row.persistence);
    csv << (row.persistence ? to_string(row.persistence->status) : "") << ',';
    report_cells(row.dissipativity);
    csv << (row.dissipativity ? cell(row.dissipativity->constants.beta) : "") << ',';
    csv << (row.dissipativity ? to_string(row.dissipativity->status) : "") << ',';
    report_cells(row.attractor);
    csv << (row.attractor ? to_string(row.attractor->status) : "") << ',';
    csv << cell(row.tail_inf) << ',' << cell(row.u_final) << ',' << row.verdict << '\n';
  }
  ctx.stage("atlas.csv", csv.str());
  flush(ctx, kOk);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nicholson delay system simulator and hypothesis checker", "nicholson"};
  app.require_subcommand(1, 1);
  Flags flags;
  const std::vector<std::pair<std::string, std::function<int(Context&)>>> commands = {
      {"simulate", cmd_simulate},       {"check", cmd_check},     {"persistence", cmd_persistence},
      {"attractor", cmd_attractor},     {"periodic", cmd_periodic}, {"miranda", cmd_miranda},
      {"sweep", cmd_sweep},
  };
  const std::vector<std::string> help = {
      "Integrate one trajectory and write trajectory.csv",
      "Run the configured hypothesis checks and write report.json",
      "Estimate uniform persistence over a random history ensemble",
      "Check and verify global attraction to zero",
      "Search for a periodic orbit by the period map",
      "Check the averaged-field signs on the a priori box",
      "Run checks and a simulation over a parameter grid, writing atlas.csv",
  };
  for (std::size_t k = 0; k < commands.size(); ++k) {
    CLI::App* sub = app.add_subcommand(commands[k].first, help[k]);
    sub->add_option("--config", flags.config, "Run config JSON")->required();
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--seed", flags.seed, "Seed overriding the config");
    sub->add_flag("--force", flags.force, "Overwrite existing outputs");
    sub->add_option("--threads", flags.threads, "Worker threads (default: NICHOLSON_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  const auto selected = std::find_if(commands.begin(), commands.end(), [&](const auto& c) {
    return app.got_subcommand(c.first);
  });
  Context ctx;
  ctx.command = selected->first;
  ctx.out = &out;
  try {
    ctx.config = load_run_config(flags.config);
    if (flags.seed) ctx.config.seed = *flags.seed;
    ctx.out_dir = flags.out;
    ctx.force = flags.force;
    ctx.threads = resolve_threads(flags.threads);
    const int code = selected->second(ctx);
    out << ctx.command << ": exit " << code << '\n';
    return code;
  } catch (const PositivityError& e) {
    err << ctx.command << ": positivity failure at t = " << e.time() << " in x"
        << e.component() + 1 << ": " << e.what() << '\n';
    // Record the failed run; partial results are dropped.
    ctx.files.clear();
    try {
      flush(ctx, kPositivityFailure);
    } catch (const std::exception& write_error) {
      err << ctx.command << ": " << write_error.what() << '\n';
    }
    return kPositivityFailure;
  } catch (const ConfigError& e) {
    err << ctx.command << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << ctx.command << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << ctx.command << ": " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace nicholson::cli
