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

#include <ostream>
#include <string>

#include "nicholson/analysis.hpp"
#include "nicholson/trajectory.hpp"

namespace nicholson {

/// "%.17g": 17 significant digits, round-trips every double.
[[nodiscard]] std::string format_g17(double value);

/// Header `t,x1,...,xN`, one row per mesh node t >= 0.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Header `t,u,v`, one row per mesh node.
void write_guiding_csv(std::ostream& os, const GuidingSeries& series);

}  // namespace nicholson
