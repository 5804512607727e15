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


#include <array>
#include <vector>

#include <benchmark/benchmark.h>

#include "nilelab/estimators.hpp"
#include "nilelab/rng.hpp"
#include "nilelab/statistics.hpp"

namespace {

using nilelab::FamilyKind;
using nilelab::SufficientSummary;

std::vector<SufficientSummary> nile_summaries(std::size_t count, std::size_t n) {
  nilelab::RngStream rng(11);
  std::vector<SufficientSummary> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back(FamilyKind::kNile,
                     std::array<double, 2>{rng.exponential(1.0), rng.exponential(1.0)}, n);
  }
  return out;
}

void BM_HStarDirect(benchmark::State& state) {
  const auto s = nile_summaries(1024, 5);
  std::size_t i = 0;
  for (auto _ : state) {
    const SufficientSummary& x = s[i++ % s.size()];
    benchmark::DoNotOptimize(nilelab::h_star(x.first() * x.second(), 5));
  }
}
BENCHMARK(BM_HStarDirect);

void BM_HStarTable(benchmark::State& state) {
  const auto s = nile_summaries(1024, 5);
  const nilelab::HStarTable& table = nilelab::HStarTable::shared(5);
  for (const auto& x : s) table(x.first() * x.second());  // warm the nodes
  std::size_t i = 0;
  for (auto _ : state) {
    const SufficientSummary& x = s[i++ % s.size()];
    benchmark::DoNotOptimize(table(x.first() * x.second()));
  }
}
BENCHMARK(BM_HStarTable);

void BM_NileMLE(benchmark::State& state) {
  const auto s = nile_summaries(1024, 5);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(nilelab::nile_mle(s[i++ % s.size()]));
}
BENCHMARK(BM_NileMLE);

void BM_NormalCVMLE(benchmark::State& state) {
  const SufficientSummary s(FamilyKind::kNormalCV, {1.3, 0.9}, 10);
  for (auto _ : state) benchmark::DoNotOptimize(nilelab::normalcv_mle(s, 1.0));
}
BENCHMARK(BM_NormalCVMLE);

}  // namespace
