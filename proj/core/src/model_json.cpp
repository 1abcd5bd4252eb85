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
#include "nicholson/model_json.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nicholson/errors.hpp"

namespace nicholson {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ConfigError(where + ": missing field \"" + key + "\"");
  }
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ConfigError(where + ": expected a number");
  }
  return j.get<double>();
}

std::size_t one_based_index(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_number_integer()) {
    throw ConfigError(where + ": expected an integer species index");
  }
  const auto v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > n) {
    throw ConfigError(where + ": species index " + std::to_string(v) + " outside 1.." +
                      std::to_string(n));
  }
  return static_cast<std::size_t>(v - 1);
}

}  // namespace

PeriodicSignal signal_from_json(const json& j, double period) {
  if (j.is_number()) {
    return PeriodicSignal::constant(j.get<double>());
  }
  const double mean = number(field(j, "mean", "signal"), "signal.mean");
  std::vector<PeriodicSignal::Harmonic> harmonics;
  if (const auto it = j.find("harmonics"); it != j.end()) {
    if (!it->is_array()) {
      throw ConfigError("signal.harmonics: expected an array of [m, a, b] triples");
    }
    for (const auto& h : *it) {
      if (!h.is_array() || h.size() != 3 || !h[0].is_number_integer()) {
        throw ConfigError("signal.harmonics: expected an array of [m, a, b] triples");
      }
      harmonics.push_back({h[0].get<int>(), number(h[1], "signal.harmonics"),
                           number(h[2], "signal.harmonics")});
    }
  }
  return PeriodicSignal(mean, std::move(harmonics), period);
}

json signal_to_json(const PeriodicSignal& s) {
  json harmonics = json::array();
  for (const auto& h : s.harmonics()) {
    harmonics.push_back(json::array({h.order, h.cos_coeff, h.sin_coeff}));
  }
  return json{{"mean", s.mean()}, {"harmonics", std::move(harmonics)}};
}

RateTerm rate_term_from_json(const json& j, double period) {
  const auto& kind = field(j, "kind", "rate term");
  if (!kind.is_string()) {
    throw ConfigError("rate term: \"kind\" must be a string");
  }
  const auto name = kind.get<std::string>();
  if (name == "Linear") {
    return RateTerm::linear(signal_from_json(field(j, "slope", "Linear term"), period));
  }
  if (name == "SlopeInterp") {
    return RateTerm::slope_interp(
        signal_from_json(field(j, "slope_zero", "SlopeInterp term"), period),
        signal_from_json(field(j, "slope_inf", "SlopeInterp term"), period));
  }
  if (name == "Saturating") {
    return RateTerm::saturating(signal_from_json(field(j, "q", "Saturating term"), period));
  }
  throw ConfigError("rate term: unknown kind \"" + name +
                    "\" (expected Linear, SlopeInterp or Saturating)");
}

json rate_term_to_json(const RateTerm& term) {
  switch (term.kind()) {
    case RateKind::Linear:
      return json{{"kind", "Linear"}, {"slope", signal_to_json(term.primary())}};
    case RateKind::SlopeInterp:
      return json{{"kind", "SlopeInterp"},
                  {"slope_zero", signal_to_json(term.primary())},
                  {"slope_inf", signal_to_json(term.secondary())}};
    case RateKind::Saturating:
      return json{{"kind", "Saturating"}, {"q", signal_to_json(term.primary())}};
  }
  return json{};
}

ModelSpec model_from_json(const json& j) {
  const double period = number(field(j, "period", "model"), "model.period");

  const auto& delays_json = field(j, "delays", "model");
  if (!delays_json.is_array()) {
    throw ConfigError("model.delays: expected an array");
  }
  std::vector<double> delays;
  for (const auto& d : delays_json) {
    delays.push_back(number(d, "model.delays"));
  }

  const auto& species_json = field(j, "species", "model");
  if (!species_json.is_array()) {
    throw ConfigError("model.species: expected an array");
  }
  std::vector<Species> species;
  for (std::size_t i = 0; i < species_json.size(); ++i) {
    const auto& sj = species_json[i];
    const std::string where = "model.species[" + std::to_string(i) + "]";
    Species s;
    s.mortality = rate_term_from_json(field(sj, "mortality", where), period);
    if (const auto it = sj.find("harvest"); it != sj.end() && !it->is_null()) {
      s.harvest = rate_term_from_json(*it, period);
    }
    const auto& prod = field(sj, "production", where);
    if (!prod.is_array()) {
      throw ConfigError(where + ".production: expected an array");
    }
    for (const auto& p : prod) {
      s.production.push_back(signal_from_json(p, period));
    }
    species.push_back(std::move(s));
  }

  if (const auto it = j.find("n"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() != static_cast<long long>(species.size())) {
      throw ConfigError("model.n does not match the number of species entries");
    }
  }

  std::vector<Mutualism> mutualism;
  if (const auto it = j.find("mutualism"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) {
      throw ConfigError("model.mutualism: expected an array");
    }
    for (const auto& mj : *it) {
      Mutualism m;
      m.target = one_based_index(field(mj, "i", "mutualism"), species.size(), "mutualism.i");
      m.source = one_based_index(field(mj, "l", "mutualism"), species.size(), "mutualism.l");
      m.term = rate_term_from_json(field(mj, "term", "mutualism"), period);
      mutualism.push_back(std::move(m));
    }
  }

  return ModelSpec(period, std::move(delays), std::move(species), std::move(mutualism));
}

json model_to_json(const ModelSpec& spec) {
  json species = json::array();
  for (const auto& s : spec.species()) {
    json production = json::array();
    for (const auto& p : s.production) {
      production.push_back(signal_to_json(p));
    }
    species.push_back(json{{"mortality", rate_term_to_json(s.mortality)},
                           {"harvest", rate_term_to_json(s.harvest)},
                           {"production", std::move(production)}});
  }
  json mutualism = json::array();
  for (const auto& m : spec.mutualism()) {
    mutualism.push_back(
        json{{"i", m.target + 1}, {"l", m.source + 1}, {"term", rate_term_to_json(m.term)}});
  }
  return json{{"n", spec.dimension()},
              {"period", spec.period()},
              {"delays", spec.delays()},
              {"species", std::move(species)},
              {"mutualism", std::move(mutualism)}};
}

ModelSpec parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("model: invalid JSON: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace nicholson
