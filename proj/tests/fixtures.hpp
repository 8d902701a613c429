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

// Shared inputs for the construction tests.

#ifndef SSD_TESTS_FIXTURES_HPP_
#define SSD_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <string>

#include "ssd/design_io.hpp"
#include "ssd/error.hpp"
#include "ssd/generators.hpp"

namespace ssd::testing {

inline std::filesystem::path source_file(const std::string& name) {
  return std::filesystem::path(SSD_TEST_DATA) / "sources" / name;
}

// A difference matrix stored directly in a fixture file.
inline DifferenceMatrix fixture_dm(const std::string& name) {
  IngestedSource s = ingest(source_file(name));
  if (!s.difference_matrix) throw InvalidArgument(name + " holds no matrix");
  return *s.difference_matrix;
}

// Normalized, distinct-row columns taken from a two-level array fixture.
inline DifferenceMatrix fixture_nd_from_array(const std::string& name,
                                              int columns) {
  IngestedSource s = ingest(source_file(name));
  if (!s.design) throw InvalidArgument(name + " holds no design");
  auto nd = select_distinct_columns(dm_from_oa(*s.design), columns);
  if (!nd) throw InvalidArgument(name + ": no distinct-row selection");
  return *nd;
}

inline EquidistantDesign searched(int runs, int factors, int levels,
                                  int lambda) {
  SearchOptions opt;
  opt.seed = 7;
  auto f = search_equidistant(runs, factors, levels, lambda, opt);
  if (!f) throw InvalidArgument("search failed");
  return *f;
}

}  // namespace ssd::testing

#endif  // SSD_TESTS_FIXTURES_HPP_
