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

#ifndef SSD_CATALOG_HPP_
#define SSD_CATALOG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssd/constructors.hpp"
#include "ssd/sources.hpp"
#include "ssd/verify.hpp"

namespace ssd {

// One printed row. Parameters keep their printed form: "5k" means 5 * k.
struct CatalogRow {
  std::string table;      // "B.2" ... "B.5"
  int row = 0;            // 1-based position in its table
  Method method = Method::kTwoLevelSizes;
  std::string criterion;  // "efnod" or "chisq"
  std::vector<std::pair<std::string, std::string>> params;
  std::string shape;      // as printed
  std::string value;      // constant lambda (efnod) or omega (chisq)
  std::vector<int> ks;
  // Corrections for rows whose printed shape or value contradicts the
  // parameters.
  std::optional<std::string> corrected_shape;
  bool skip = false;
  std::string note;

  friend bool operator==(const CatalogRow&, const CatalogRow&) = default;
};

// Known provenance of an equidistant source design.
struct Reference {
  int runs = 0;
  std::string factors;  // may carry k
  int levels = 0;
  std::vector<int> ks;
  std::string citation;

  friend bool operator==(const Reference&, const Reference&) = default;
};

struct Catalog {
  int version = 1;
  std::vector<CatalogRow> rows;
  std::vector<Reference> references;

  friend bool operator==(const Catalog&, const Catalog&) = default;
};

// Throws ParseError on malformed documents.
Catalog parse_catalog(std::string_view json);
std::string serialize_catalog(const Catalog& catalog);
const Catalog& builtin_catalog();

// Evaluates "5k", "k" or "7" at k.
std::int64_t eval_param(std::string_view text, int k);
// Parses "F(24, 2^{24k}3^{5k})" at k into run count and level signature.
std::pair<int, std::map<int, int>> eval_shape(std::string_view text, int k);

std::optional<std::string> literature_reference(const DesignRequest& request);

// A row materialized at one k.
struct CatalogEntry {
  std::string id;  // e.g. "B2-01-k1"
  std::string table;
  int row = 0;
  int k = 1;
  Method method = Method::kTwoLevelSizes;
  std::string criterion;
  std::string printed_shape;
  std::string expected_shape;
  int runs = 0;
  std::map<int, int> signature;
  std::int64_t expected_value = 0;
  // t3: F1, F2 and D. t5: F1..F4, then D3 and D4.
  std::vector<DesignRequest> designs;
  std::vector<MatrixRequest> matrices;
  bool skip = false;
  std::string note;
};

std::vector<CatalogEntry> materialize(const Catalog& catalog);
const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries,
                               std::string_view id);

// Weakest availability over all sources of an entry.
Availability entry_availability(const CatalogEntry& entry,
                                const SourceLibrary& library);

enum class BuildStatus {
  kBuilt,       // matched shape, value and certificate
  kMismatch,    // built but disagreed with the table
  kMissing,     // a source is external and absent
  kUnresolved,  // a searchable source was not found within budget
  kSkipped,     // row marked inconsistent
};

std::string status_name(BuildStatus status);

struct BuildResult {
  BuildStatus status = BuildStatus::kMissing;
  std::string message;
  std::optional<DesignMatrix> design;
  std::optional<OptimalityReport> report;
};

// Builds one entry and, when out_dir is non-empty, writes <id>.design,
// <id>.report.txt and <id>.report.json there.
BuildResult catalog_build(const CatalogEntry& entry, SourceLibrary& library,
                          const std::filesystem::path& out_dir = {});

struct SweepResult {
  std::vector<std::pair<std::string, BuildResult>> results;
  std::map<BuildStatus, int> counts;
};

// Builds every entry whose sources are all available (external sources
// count only when ingested) and records the rest as missing. Writes
// summary.txt when out_dir is non-empty.
SweepResult build_all(const std::vector<CatalogEntry>& entries,
                      SourceLibrary& library,
                      const std::filesystem::path& out_dir = {});

}  // namespace ssd

#endif  // SSD_CATALOG_HPP_
