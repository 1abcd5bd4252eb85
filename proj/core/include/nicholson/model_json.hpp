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

#include <string>

#include <nlohmann/json.hpp>

#include "nicholson/model.hpp"

namespace nicholson {

// Model documents:
//
//   {"n": 2, "period": 1.0, "delays": [1.0],
//    "species": [{"mortality": TERM, "harvest": TERM, "production": [SIGNAL, ...]}, ...],
//    "mutualism": [{"i": 1, "l": 2, "term": TERM}, ...]}
//
//   TERM   := {"kind": "Linear", "slope": SIGNAL}
//           | {"kind": "SlopeInterp", "slope_zero": SIGNAL, "slope_inf": SIGNAL}
//           | {"kind": "Saturating", "q": SIGNAL}
//   SIGNAL := {"mean": a0, "harmonics": [[m, a_m, b_m], ...]}
//
// Species indices i, l are 1-based. "harvest" and "mutualism" may be omitted.
// A bare number is accepted wherever a SIGNAL is expected.

[[nodiscard]] PeriodicSignal signal_from_json(const nlohmann::json& j, double period);
[[nodiscard]] nlohmann::json signal_to_json(const PeriodicSignal& s);

[[nodiscard]] RateTerm rate_term_from_json(const nlohmann::json& j, double period);
[[nodiscard]] nlohmann::json rate_term_to_json(const RateTerm& term);

[[nodiscard]] ModelSpec model_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json model_to_json(const ModelSpec& spec);

[[nodiscard]] ModelSpec parse_model(const std::string& text);

}  // namespace nicholson
