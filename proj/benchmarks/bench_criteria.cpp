// Copyright 2025 The ssd Authors.
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

#include <benchmark/benchmark.h>

#include "ssd/criteria.hpp"
#include "ssd/embedded.hpp"
#include "ssd/generators.hpp"
#include "ssd/verify.hpp"

namespace {

// Stacked copies of the 24-run design: rows grow, columns stay at 29.
ssd::DesignMatrix stacked(int copies) {
  const ssd::DesignMatrix base = ssd::embedded_design("table5");
  return ssd::DesignMatrix(
      ssd::kronecker_sum(ssd::IntMatrix(copies, 1, 0), base.entries()),
      base.level_vector());
}

void BM_CoincidenceProfile(benchmark::State& state) {
  const ssd::DesignMatrix d = stacked(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssd::coincidence_profile(d));
  }
  state.counters["runs"] = d.runs();
}
BENCHMARK(BM_CoincidenceProfile)->Arg(1)->Arg(4)->Arg(16);

void BM_FnodTotal(benchmark::State& state) {
  const ssd::DesignMatrix d = stacked(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ssd::fnod_total(d));
}
BENCHMARK(BM_FnodTotal)->Arg(1)->Arg(4)->Arg(16);

void BM_FnodViaCoincidence(benchmark::State& state) {
  const ssd::DesignMatrix d = stacked(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssd::fnod_total_via_coincidence(d));
  }
}
BENCHMARK(BM_FnodViaCoincidence)->Arg(1)->Arg(4)->Arg(16);

void BM_AliasedPairs(benchmark::State& state) {
  const ssd::DesignMatrix d = ssd::rao_hamming_oa(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ssd::aliased_pairs(d));
  state.counters["columns"] = d.factors();
}
BENCHMARK(BM_AliasedPairs)->DenseRange(3, 7, 2);

void BM_FullReport(benchmark::State& state) {
  const ssd::DesignMatrix d = ssd::embedded_design("table5");
  for (auto _ : state) benchmark::DoNotOptimize(ssd::full_report(d));
}
BENCHMARK(BM_FullReport);

}  // namespace
