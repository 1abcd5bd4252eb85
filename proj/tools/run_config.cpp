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
#include "run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nicholson/errors.hpp"
#include "nicholson/model_json.hpp"

namespace nicholson::cli {
namespace {

using nlohmann::json;

double positive_number(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& node = doc.at(key);
  if (!node.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  const double value = node.get<double>();
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string("'") + key + "' must be positive and finite");
  }
  return value;
}

int positive_int(const json& doc, const char* key, int fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& node = doc.at(key);
  if (!node.is_number_integer() || node.get<long long>() <= 0) {
    throw ConfigError(std::string("'") + key + "' must be a positive integer");
  }
  return node.get<int>();
}

std::vector<double> positive_vector(const json& node, const char* key) {
  if (!node.is_array()) throw ConfigError(std::string("'") + key + "' must be an array");
  std::vector<double> values;
  for (const auto& x : node) {
    if (!x.is_number() || !(x.get<double>() > 0.0)) {
      throw ConfigError(std::string("'") + key + "' entries must be positive numbers");
    }
    values.push_back(x.get<double>());
  }
  return values;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  }
}

void parse_sweep(const json& node, const json& model_document, RunConfig& config) {
  if (!node.is_object() || !node.contains("parameters") || !node["parameters"].is_array()) {
    throw ConfigError("'sweep' must hold a 'parameters' array");
  }
  const auto& params = node["parameters"];
  if (params.empty() || params.size() > 2) {
    throw ConfigError("a sweep takes one or two parameters");
  }
  for (const auto& p : params) {
    SweepParameter param;
    param.path = p.at("path").get<std::string>();
    param.name = p.value("name", param.path);
    param.min = p.at("min").get<double>();
    param.max = p.at("max").get<double>();
    param.count = p.at("count").get<int>();
    if (param.count < 1 || !(param.min <= param.max) || !std::isfinite(param.max) ||
        !std::isfinite(param.min)) {
      throw ConfigError("sweep parameter '" + param.name + "' has an empty range");
    }
    if (param.count == 1 && param.min != param.max) {
      throw ConfigError("sweep parameter '" + param.name + "' has one cell but min != max");
    }
    json::json_pointer pointer;
    try {
      pointer = json::json_pointer(param.path);
    } catch (const json::exception& e) {
      throw ConfigError("sweep path '" + param.path + "': " + e.what());
    }
    if (!model_document.contains(pointer) || !model_document.at(pointer).is_number()) {
      throw ConfigError("sweep path '" + param.path + "' does not name a number in the model");
    }
    config.sweep.push_back(std::move(param));
  }
}

}  // namespace

double SweepParameter::value(int k) const {
  if (count == 1) return min;
  return min + (max - min) * static_cast<double>(k) / static_cast<double>(count - 1);
}

RunConfig parse_run_config(const json& document, const std::filesystem::path& base_dir) {
  if (!document.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig config;
  config.document = document;
  try {
    if (document.contains("model")) {
      const auto& model = document["model"];
      config.model_document =
          model.is_string() ? load_json_file(base_dir / model.get<std::string>()) : model;
    } else if (document.contains("model_path")) {
      config.model_document = load_json_file(base_dir / document["model_path"].get<std::string>());
    } else {
      throw ConfigError("run config needs 'model' or 'model_path'");
    }
    config.model.emplace(model_from_json(config.model_document));
    const ModelSpec& spec = *config.model;

    config.horizon = positive_number(document, "horizon", config.horizon);
    config.h = positive_number(document, "h", config.h);
    config.lambda = positive_number(document, "lambda", config.lambda);
    if (config.lambda > 1.0) throw ConfigError("'lambda' must lie in (0, 1]");
    config.grid = positive_int(document, "grid", config.grid);
    config.delta = positive_number(document, "delta", config.delta);
    if (config.delta >= 1.0) throw ConfigError("'delta' must lie in (0, 1)");
    config.eta = positive_number(document, "eta", config.eta);
    if (document.contains("spot_samples")) {
      const auto& n = document["spot_samples"];
      if (!n.is_number_integer() || n.get<long long>() < 0) {
        throw ConfigError("'spot_samples' must be a nonnegative integer");
      }
      config.spot_samples = n.get<int>();
    }
    if (document.contains("checks")) {
      config.checks = document["checks"].get<std::vector<std::string>>();
      if (config.checks.empty()) throw ConfigError("'checks' must not be empty");
      for (const auto& name : config.checks) {
        if (name != "persistence" && name != "dissipativity" && name != "attractor") {
          throw ConfigError("unknown check '" + name + "'");
        }
      }
    }

    if (document.contains("history")) {
      config.history = positive_vector(document["history"], "history");
    } else {
      config.history.assign(spec.dimension(), 1.0);
    }
    if (config.history.size() != spec.dimension()) {
      throw ConfigError("'history' must have one value per species");
    }

    config.ensemble = positive_int(document, "ensemble", config.ensemble);
    if (document.contains("ensemble_range")) {
      const auto range = positive_vector(document["ensemble_range"], "ensemble_range");
      if (range.size() != 2 || !(range[0] <= range[1])) {
        throw ConfigError("'ensemble_range' must be [lo, hi] with 0 < lo <= hi");
      }
      config.ensemble_lo = range[0];
      config.ensemble_hi = range[1];
    }
    config.transient = positive_number(document, "transient", config.transient);
    if (config.transient >= 1.0) throw ConfigError("'transient' must lie in (0, 1)");
    config.attractor_tol = positive_number(document, "tol", config.attractor_tol);

    if (document.contains("orbit")) {
      const auto& orbit = document["orbit"];
      config.orbit_tol = positive_number(orbit, "tol", config.orbit_tol);
      config.orbit_max_iter = positive_int(orbit, "max_iter", config.orbit_max_iter);
      if (orbit.contains("initial")) {
        config.orbit_initial = positive_vector(orbit["initial"], "orbit.initial");
        if (config.orbit_initial->size() != spec.dimension()) {
          throw ConfigError("'orbit.initial' must have one value per species");
        }
      }
      if (orbit.contains("nodes")) {
        config.orbit_nodes = positive_int(orbit, "nodes", 16);
        if (*config.orbit_nodes < 8) throw ConfigError("'orbit.nodes' must be at least 8");
      }
    }
    if (document.contains("miranda")) {
      const auto& miranda = document["miranda"];
      if (miranda.contains("eps")) config.miranda_eps = positive_number(miranda, "eps", 1.0);
      if (miranda.contains("R")) config.miranda_R = positive_number(miranda, "R", 1.0);
      config.face_grid = positive_int(miranda, "face_grid", config.face_grid);
    }
    if (document.contains("sweep")) parse_sweep(document["sweep"], config.model_document, config);

    if (document.contains("seed")) {
      const auto& seed = document["seed"];
      if (!seed.is_number_unsigned()) throw ConfigError("'seed' must be a nonnegative integer");
      config.seed = seed.get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(load_json_file(path), path.parent_path());
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  const auto mix = [&hash](const std::string& bytes) {
    for (const unsigned char ch : bytes) {
      hash ^= ch;
      hash *= 0x100000001b3ULL;
    }
  };
  mix(config.document.dump());
  mix(config.model_document.dump());
  mix(std::to_string(config.seed));
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace nicholson::cli
