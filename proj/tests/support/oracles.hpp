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

// Reference values computed independently of the library: hand-derived
// closed forms and brute-force searches.

#include <cstddef>
#include <functional>

namespace nicholson::testing {

/// Exact solution of x'(t) = -x(t - 1) with x = 1 on [-1, 0], for t in [-1, 3].
double linear_delay_exact(double t);

/// Minimum of fn over [0, period) on `samples` equispaced points.
double brute_force_min(const std::function<double(double)>& fn, double period,
                       std::size_t samples = 200000);
double brute_force_max(const std::function<double(double)>& fn, double period,
                       std::size_t samples = 200000);

/// Averaged field of the scalar constant-coefficient model with linear
/// mortality d and production p: g(x) = d x - p x e^{-x}.
double scalar_averaged_field(double d, double p, double x);

/// Positive equilibrium of the scalar constant-coefficient model.
double scalar_equilibrium(double d, double p);

}  // namespace nicholson::testing
