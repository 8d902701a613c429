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

#ifndef SSD_DESIGN_IO_HPP_
#define SSD_DESIGN_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssd/generators.hpp"
#include "ssd/matrix.hpp"

namespace ssd {

// On-disk design text:
//
//   # key: value          optional metadata, only before the header
//   n m
//   q_1 ... q_m
//   n rows of m integers
//
// Blank lines are ignored. Recognized metadata keys:
//   kind        design | difference-matrix
//   group       Z<q> or GF(<q>) for difference matrices
//   lambda      declared constant coincidence number
//   strength    2 declares an orthogonal array
//   difference  group over which the design is also a difference matrix
// Unknown keys are kept verbatim.
struct DesignFile {
  IntMatrix entries;
  std::vector<int> levels;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::optional<std::string> get(std::string_view key) const;
  void set(std::string key, std::string value);
};

// Throws ParseError with a 1-based line and column.
DesignFile parse_design_file(std::string_view text);
std::string format_design_file(const DesignFile& file);

DesignFile read_design_file(const std::filesystem::path& path);
// Whole-file atomic write: temp file in the same directory, then rename.
void write_text_atomic(const std::filesystem::path& path,
                       std::string_view contents);
void write_design_file(const std::filesystem::path& path,
                       const DesignFile& file);

DesignFile to_file(const DesignMatrix& design);
DesignFile to_file(const DifferenceMatrix& matrix);

// A loaded file after every declared property has been checked.
struct IngestedSource {
  std::filesystem::path path;
  DesignFile file;
  std::optional<DesignMatrix> design;
  std::optional<DifferenceMatrix> difference_matrix;
  std::optional<int> lambda;  // constant coincidence number, if any
  bool orthogonal_array = false;
  std::vector<std::string> verified;  // properties checked on load
};

// Throws ParseError, VerificationError (balance, declared property) or
// InvalidArgument (unknown kind or group).
IngestedSource ingest(const DesignFile& file, std::filesystem::path origin = {});
IngestedSource ingest(const std::filesystem::path& path);

}  // namespace ssd

#endif  // SSD_DESIGN_IO_HPP_
