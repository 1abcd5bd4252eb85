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
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "nicholson/integrator.hpp"

namespace {

using nicholson::PeriodicSignal;

nicholson::ModelSpec chain(std::size_t n) {
  std::vector<nicholson::Species> species;
  std::vector<nicholson::Mutualism> mutualism;
  for (std::size_t i = 0; i < n; ++i) {
    species.push_back({nicholson::RateTerm::linear(PeriodicSignal::constant(1.0)), {},
                       {PeriodicSignal(std::numbers::e, {{1, 0.2, 0.1}}, 1.0),
                        PeriodicSignal::constant(0.5)}});
    if (n > 1) {
      mutualism.push_back(
          {i, (i + 1) % n, nicholson::RateTerm::linear(PeriodicSignal::constant(0.05))});
    }
  }
  return nicholson::ModelSpec(1.0, {0.5, 1.0}, std::move(species), std::move(mutualism));
}

void BM_Integrate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = chain(n);
  const auto history = nicholson::HistoryFunction::constant(std::vector<double>(n, 0.7), 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nicholson::integrate(spec, history, 50.0, 0.05));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Integrate)->Arg(1)->Arg(4)->Arg(16);

}  // namespace
