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

#include "ssd/catalog.hpp"
#include "ssd/constructors.hpp"
#include "ssd/embedded.hpp"
#include "ssd/generators.hpp"

namespace {

void BM_SymmetricSum(benchmark::State& state) {
  const ssd::EquidistantDesign f(ssd::embedded_design("table1_f"));
  const auto d = ssd::embedded_difference_matrix("table1_d");
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssd::certify(ssd::construct_symmetric(f, d)));
  }
}
BENCHMARK(BM_SymmetricSum);

void BM_TwoLevelSizes(benchmark::State& state) {
  const ssd::EquidistantDesign f1(ssd::embedded_design("table4_f1"));
  const ssd::EquidistantDesign f2(ssd::embedded_design("table4_f2"));
  const auto d = ssd::embedded_difference_matrix("table4_d");
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssd::certify(ssd::construct_two_level_sizes(f1, f2, d)));
  }
}
BENCHMARK(BM_TwoLevelSizes);

void BM_Product(benchmark::State& state) {
  const ssd::EquidistantDesign a(ssd::rao_hamming_oa(2, 2));
  const ssd::EquidistantDesign b(ssd::rao_hamming_oa(3, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssd::certify(ssd::construct_product(a, b)));
  }
}
BENCHMARK(BM_Product);

// One catalog entry end to end, sources resolved once outside the loop.
void BM_CatalogEntry(benchmark::State& state) {
  const auto entries = ssd::materialize(ssd::builtin_catalog());
  const ssd::CatalogEntry* e = ssd::find_entry(entries, "B2-12-k3");
  ssd::SourceOptions opt;
  opt.seed = 7;
  ssd::SourceLibrary lib(opt);
  ssd::catalog_build(*e, lib);
  for (auto _ : state) benchmark::DoNotOptimize(ssd::catalog_build(*e, lib));
}
BENCHMARK(BM_CatalogEntry)->Unit(benchmark::kMillisecond);

}  // namespace
