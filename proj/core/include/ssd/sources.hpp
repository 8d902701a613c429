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

#ifndef SSD_SOURCES_HPP_
#define SSD_SOURCES_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ssd/design_io.hpp"
#include "ssd/generators.hpp"

namespace ssd {

// Where a source design or difference matrix comes from, in the order the
// library tries them.
enum class Availability {
  kGenerated,   // Rao-Hamming arrays, Kronecker powers of multiplication tables
  kEmbedded,    // arrays shipped with the library
  kIngested,    // files in the sources directory
  kSearchable,  // within the alias-class budget of search_equidistant
  kExternal,    // none of the above
};

std::string availability_name(Availability a);

// F(runs, levels^factors) with constant coincidence number.
struct DesignRequest {
  int runs = 0;
  int factors = 0;
  int levels = 0;
  friend auto operator<=>(const DesignRequest&, const DesignRequest&) = default;
};

// Normalized ND(rows, columns, levels) with distinct rows.
struct MatrixRequest {
  int rows = 0;
  int columns = 0;
  int levels = 0;
  friend auto operator<=>(const MatrixRequest&, const MatrixRequest&) = default;
};

std::string describe(const DesignRequest& r);
std::string describe(const MatrixRequest& r);

struct SourceOptions {
  std::filesystem::path directory;        // ingestion directory, may be empty
  std::filesystem::path cache_directory;  // searched designs are stored here
  std::uint64_t seed = 1;
  SearchOptions search;
};

// Resolves source requests and memoizes the results. Not thread-safe.
class SourceLibrary {
 public:
  explicit SourceLibrary(SourceOptions options = {});

  Availability availability(const DesignRequest& request) const;
  Availability availability(const MatrixRequest& request) const;

  // Throw MissingSource when nothing provides the request, with the
  // literature reference when one is known.
  const EquidistantDesign& design(const DesignRequest& request);
  const DifferenceMatrix& difference_matrix(const MatrixRequest& request);

  // How a resolved request was obtained, e.g. "generated" or a file path.
  std::string origin(const DesignRequest& request) const;
  std::string origin(const MatrixRequest& request) const;

  // Files that failed to load, with the reason. Loading never throws.
  const std::vector<std::pair<std::filesystem::path, std::string>>& rejected()
      const noexcept {
    return rejected_;
  }
  const SourceOptions& options() const noexcept { return options_; }

 private:
  struct Resolved {
    EquidistantDesign design;
    std::string origin;
  };
  struct ResolvedMatrix {
    DifferenceMatrix matrix;
    std::string origin;
  };

  void load_directory();
  std::optional<DifferenceMatrix> from_ingested(const MatrixRequest& r,
                                                std::string* origin) const;
  std::optional<EquidistantDesign> search(const DesignRequest& r);
  bool searchable(const DesignRequest& r) const;

  SourceOptions options_;
  std::vector<IngestedSource> ingested_;
  std::vector<std::pair<std::filesystem::path, std::string>> rejected_;
  std::map<DesignRequest, Resolved> designs_;
  std::map<MatrixRequest, ResolvedMatrix> matrices_;
  mutable std::map<MatrixRequest, Availability> matrix_probe_;
};

// Search seed for one request, derived from the global seed so that every
// request is reproducible on its own.
std::uint64_t request_seed(std::uint64_t seed, const DesignRequest& r);

}  // namespace ssd

#endif  // SSD_SOURCES_HPP_
