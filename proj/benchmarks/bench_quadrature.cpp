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


#include <cmath>

#include <benchmark/benchmark.h>

#include "nilelab/quadrature.hpp"

namespace {

void BM_LaplaceIntegral(benchmark::State& state) {
  const double nu = -static_cast<double>(state.range(0));
  const double w = static_cast<double>(state.range(1)) / 4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nilelab::laplace_integral({nu, 5.0, 5.0 * w}));
  }
}
BENCHMARK(BM_LaplaceIntegral)->ArgsProduct({{0, 1, 2}, {1, 4, 40, 4000}});

void BM_BesselK(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nilelab::bessel_k(1, x));
}
BENCHMARK(BM_BesselK)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

void BM_StdBesselK(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(std::cyl_bessel_k(1.0, x));
}
BENCHMARK(BM_StdBesselK)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

void BM_CondSecondMomentRatio(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nilelab::cond_second_moment_ratio(2.0, 5));
}
BENCHMARK(BM_CondSecondMomentRatio);

}  // namespace
