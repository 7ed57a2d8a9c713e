// Copyright 2026 The dpcp Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts, plus one full
// PSGM solve under each execution policy.
//
//   ./dpcp_bench --benchmark_filter=SignedColumnSum
//
// Arguments are (D, L): ambient dimension and column count.

#include <benchmark/benchmark.h>

#include "dpcp/init.h"
#include "dpcp/kernels.h"
#include "dpcp/psgm.h"
#include "dpcp/synth.h"

namespace dpcp {
namespace {

Dataset MakeData(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  const Eigen::Index L = state.range(1);
  return SampleSpherical({.D = D, .d = D - 1, .N = L / 2, .M = L - L / 2, .seed = 1}).data;
}

void Sizes(benchmark::internal::Benchmark* b) {
  for (int D : {4, 30}) {
    for (int L : {1 << 12, 1 << 16, 1 << 19}) b->Args({D, L});
  }
}

void SetItems(benchmark::State& state) {
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void BM_L1Serial(benchmark::State& state) {
  const Dataset data = MakeData(state);
  const Vector b = RandomInit(static_cast<int>(data.dim()), 2).vec();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::L1(data.columns(), b));
  SetItems(state);
}
BENCHMARK(BM_L1Serial)->Apply(Sizes);

void BM_L1OmpDeterministic(benchmark::State& state) {
  const Dataset data = MakeData(state);
  const Vector b = RandomInit(static_cast<int>(data.dim()), 2).vec();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::L1(data.columns(), b, ReductionMode::kDeterministic));
  }
  SetItems(state);
}
BENCHMARK(BM_L1OmpDeterministic)->Apply(Sizes);

void BM_L1OmpFast(benchmark::State& state) {
  const Dataset data = MakeData(state);
  const Vector b = RandomInit(static_cast<int>(data.dim()), 2).vec();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::L1(data.columns(), b, ReductionMode::kFast));
  SetItems(state);
}
BENCHMARK(BM_L1OmpFast)->Apply(Sizes);

void BM_SignedColumnSumSerial(benchmark::State& state) {
  const Dataset data = MakeData(state);
  Vector p;
  kernels::serial::Project(data.columns(), RandomInit(static_cast<int>(data.dim()), 2).vec(), p);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::SignedColumnSum(data.columns(), p));
  SetItems(state);
}
BENCHMARK(BM_SignedColumnSumSerial)->Apply(Sizes);

void BM_SignedColumnSumOmp(benchmark::State& state) {
  const Dataset data = MakeData(state);
  Vector p;
  kernels::serial::Project(data.columns(), RandomInit(static_cast<int>(data.dim()), 2).vec(), p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::SignedColumnSum(data.columns(), p, ReductionMode::kDeterministic));
  }
  SetItems(state);
}
BENCHMARK(BM_SignedColumnSumOmp)->Apply(Sizes);

void BM_WeightedGramSerial(benchmark::State& state) {
  const Dataset data = MakeData(state);
  const Vector w = Vector::Ones(data.size());
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::WeightedGram(data.columns(), w));
  SetItems(state);
}
BENCHMARK(BM_WeightedGramSerial)->Apply(Sizes);

void BM_WeightedGramOmp(benchmark::State& state) {
  const Dataset data = MakeData(state);
  const Vector w = Vector::Ones(data.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::WeightedGram(data.columns(), w, ReductionMode::kDeterministic));
  }
  SetItems(state);
}
BENCHMARK(BM_WeightedGramOmp)->Apply(Sizes);

// Full solver: 100 PSGM iterations on a D=30, 70% outlier instance.
void SolveWithPolicy(benchmark::State& state, const ExecutionPolicy& policy) {
  const SyntheticInstance inst = SampleSpherical({.D = 30, .d = 29, .N = 500, .M = 1167, .seed = 1});
  const UnitVector b0 = SpectralInit(inst.data);
  const SolveOptions options{.schedule = StepSchedule::PiecewiseGeometric(1e-3),
                             .max_iters = 100,
                             .record_trace = false,
                             .policy = policy};
  for (auto _ : state) benchmark::DoNotOptimize(Solve(inst.data, b0, options).final_objective);
}

void BM_SolveSerial(benchmark::State& state) { SolveWithPolicy(state, ExecutionPolicy::Serial()); }
BENCHMARK(BM_SolveSerial)->Unit(benchmark::kMillisecond);

void BM_SolveOmp(benchmark::State& state) { SolveWithPolicy(state, ExecutionPolicy{}); }
BENCHMARK(BM_SolveOmp)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dpcp

BENCHMARK_MAIN();
