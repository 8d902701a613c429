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

#include "ssd/algebra.hpp"
#include "ssd/generators.hpp"

namespace {

void BM_FieldMultiply(benchmark::State& state) {
  const int u = static_cast<int>(state.range(0));
  const ssd::GaloisField f(2, u);
  int x = 1;
  for (auto _ : state) {
    for (int a = 1; a < 256; ++a) x = f.mul(x, a % f.order()) | 1;
    benchmark::DoNotOptimize(x);
  }
}
// Table lookups up to 256 elements, log/exp beyond.
BENCHMARK(BM_FieldMultiply)->Arg(4)->Arg(8)->Arg(12);

void BM_RaoHamming(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssd::rao_hamming_oa(static_cast<int>(state.range(0)), 3));
  }
}
BENCHMARK(BM_RaoHamming)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_GenerateNd(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ssd::generate_nd(rows, 6, 2));
}
BENCHMARK(BM_GenerateNd)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_Search(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const int q = static_cast<int>(state.range(2));
  const int lambda = *ssd::equidistant_lambda(n, m, q);
  ssd::SearchOptions opt;
  opt.seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssd::search_equidistant(n, m, q, lambda, opt));
  }
}
BENCHMARK(BM_Search)
    ->Args({6, 10, 2})
    ->Args({6, 10, 3})
    ->Args({8, 14, 4})
    ->Args({10, 36, 5})
    ->Unit(benchmark::kMillisecond);

}  // namespace
