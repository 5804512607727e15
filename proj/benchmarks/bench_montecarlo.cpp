// Copyright 2026 The nilelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "nilelab/families.hpp"
#include "nilelab/montecarlo.hpp"
#include "nilelab/rng.hpp"
#include "nilelab/statistics.hpp"

namespace {

void BM_SampleNile(benchmark::State& state) {
  const auto model = nilelab::FamilyModel::nile(2.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  nilelab::RngStream rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(nilelab::sample(model, n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleNile)->Arg(1)->Arg(5)->Arg(100);

void BM_SampleNormalCV(benchmark::State& state) {
  const auto model = nilelab::FamilyModel::normal_cv(2.0, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  nilelab::RngStream rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(nilelab::sample(model, n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleNormalCV)->Arg(1)->Arg(10)->Arg(100);

void BM_SimulateAncillary(benchmark::State& state) {
  nilelab::MCConfig config;
  config.replicates = 20000;
  config.theta_grid = {1.0};
  config.n = 5;
  config.workers = static_cast<std::size_t>(state.range(0));
  const auto model = nilelab::FamilyModel::nile(1.0);
  const nilelab::ReplicateFn fn = [&](nilelab::RngStream& rng, std::span<double> row) {
    const auto s = nilelab::sufficient(nilelab::sample(model, config.n, rng));
    row[0] = s.first() * s.second();
    return true;
  };
  for (auto _ : state) benchmark::DoNotOptimize(nilelab::simulate(config, 1, 1, fn));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(config.replicates));
}
BENCHMARK(BM_SimulateAncillary)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
