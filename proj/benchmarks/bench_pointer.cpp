// Copyright 2026 The hardyweak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <benchmark/benchmark.h>

#include "hardyweak/hardy.hpp"
#include "hardyweak/pointer.hpp"
#include "hardyweak/stateprep.hpp"

namespace {

using namespace hardyweak;

SpectralOperator projector_obs(const Operator& p) {
  return SpectralOperator({{1.0, p}, {0.0, Operator::identity(2) - p}});
}

void BM_WeakValueTable(benchmark::State& state) {
  const HardyScenario s = build_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(weak_value_table(s));
}
BENCHMARK(BM_WeakValueTable);

void BM_TwoPointerReadout(benchmark::State& state) {
  const HardyScenario s = build_scenario();
  GaussianBranchState st = couple(GaussianBranchState::prepare(s.pre()), s.single[0][1], {1.0, 0.1});
  st = couple(st, s.single[1][1], {1.0, 0.1});
  for (auto _ : state) benchmark::DoNotOptimize(readout(st, s.post()));
}
BENCHMARK(BM_TwoPointerReadout);

void BM_EstimateJoint(benchmark::State& state) {
  const HardyScenario s = build_scenario();
  const double g_list[] = {0.2, 0.1, 0.05, 0.025};
  const SpectralOperator h = projector_obs(basis::proj_h());
  for (auto _ : state) benchmark::DoNotOptimize(estimate_joint(s.ensemble, h, h, 1.0, g_list));
}
BENCHMARK(BM_EstimateJoint);

void BM_SchmidtRoundTrip(benchmark::State& state) {
  const Ket target = build_scenario().pre();
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_reconstruct(schmidt_decompose(target)));
}
BENCHMARK(BM_SchmidtRoundTrip);

}  // namespace

BENCHMARK_MAIN();
