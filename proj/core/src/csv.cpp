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
#include "nicholson/csv.hpp"

#include <cstdio>

namespace nicholson {

std::string format_g17(double value) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << 't';
  for (std::size_t i = 0; i < traj.dimension(); ++i) {
    os << ",x" << (i + 1);
  }
  os << '\n';
  for (std::size_t n = 0; n < traj.node_count(); ++n) {
    os << format_g17(traj.time(n));
    for (double v : traj.state(n)) {
      os << ',' << format_g17(v);
    }
    os << '\n';
  }
}

void write_guiding_csv(std::ostream& os, const GuidingSeries& series) {
  os << "t,u,v\n";
  for (std::size_t n = 0; n < series.times.size(); ++n) {
    os << format_g17(series.times[n]) << ',' << format_g17(series.u[n]) << ','
       << format_g17(series.v[n]) << '\n';
  }
}

}  // namespace nicholson
