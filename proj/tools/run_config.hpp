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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nicholson/model.hpp"

namespace nicholson::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kPositivityFailure = 2,
  kHypothesisFailed = 3,
  kNonConvergence = 4,
};

struct SweepParameter {
  std::string name;
  /// JSON pointer into the model document, e.g. "/species/0/production/0/mean".
  std::string path;
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  [[nodiscard]] double value(int k) const;
};

/// One run document: the model plus every command parameter.
struct RunConfig {
  nlohmann::json document;
  nlohmann::json model_document;
  std::optional<ModelSpec> model;

  double horizon = 100.0;
  double h = 0.05;
  double lambda = 1.0;
  std::vector<double> history;

  int grid = 256;
  double delta = 0.1;
  double eta = 0.1;
  int spot_samples = 1000;
  std::vector<std::string> checks{"persistence", "dissipativity"};

  int ensemble = 10;
  double ensemble_lo = 0.01;
  double ensemble_hi = 10.0;
  double transient = 0.5;
  double attractor_tol = 1e-6;

  double orbit_tol = 1e-10;
  int orbit_max_iter = 500;
  std::optional<std::vector<double>> orbit_initial;
  std::optional<int> orbit_nodes;

  std::optional<double> miranda_eps;
  std::optional<double> miranda_R;
  int face_grid = 5;

  std::vector<SweepParameter> sweep;

  std::uint64_t seed = 0;

  [[nodiscard]] const ModelSpec& spec() const { return *model; }
};

/// Parses a run document. `base_dir` resolves a relative "model_path".
/// Throws ConfigError on any malformed or out-of-range field.
[[nodiscard]] RunConfig parse_run_config(const nlohmann::json& document,
                                         const std::filesystem::path& base_dir = {});

[[nodiscard]] RunConfig load_run_config(const std::filesystem::path& path);

/// FNV-1a over the canonical dump of the document and the seed.
[[nodiscard]] std::string config_hash(const RunConfig& config);

}  // namespace nicholson::cli
