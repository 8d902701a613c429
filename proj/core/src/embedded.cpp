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

#include "ssd/embedded.hpp"

#include <algorithm>
#include <cctype>
#include <span>

#include "ssd/error.hpp"

namespace ssd {
namespace {

// clang-format off
constexpr int kT1F[] = {
    0, 0, 0, 0,
    0, 1, 1, 2,
    0, 2, 2, 1,
    1, 0, 1, 1,
    1, 1, 2, 0,
    1, 2, 0, 2,
    2, 0, 2, 2,
    2, 1, 0, 1,
    2, 2, 1, 0,
};

constexpr int kT1D[] = {
    0, 0,
    0, 1,
    0, 2,
};

constexpr int kT3Result[] = {
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2,
    0, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2,
    0, 1, 2, 1, 2, 0, 1, 2, 0, 2, 0, 1,
    0, 0, 0, 2, 2, 2, 2, 2, 2, 1, 1, 1,
    0, 1, 2, 2, 0, 1, 2, 0, 1, 1, 2, 0,
    1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1,
    1, 2, 0, 0, 1, 2, 1, 2, 0, 1, 2, 0,
    1, 1, 1, 1, 1, 1, 2, 2, 2, 0, 0, 0,
    1, 2, 0, 1, 2, 0, 2, 0, 1, 0, 1, 2,
    1, 1, 1, 2, 2, 2, 0, 0, 0, 2, 2, 2,
    1, 2, 0, 2, 0, 1, 0, 1, 2, 2, 0, 1,
    2, 2, 2, 0, 0, 0, 2, 2, 2, 2, 2, 2,
    2, 0, 1, 0, 1, 2, 2, 0, 1, 2, 0, 1,
    2, 2, 2, 1, 1, 1, 0, 0, 0, 1, 1, 1,
    2, 0, 1, 1, 2, 0, 0, 1, 2, 1, 2, 0,
    2, 2, 2, 2, 2, 2, 1, 1, 1, 0, 0, 0,
    2, 0, 1, 2, 0, 1, 1, 2, 0, 0, 1, 2,
};

constexpr int kT4F1[] = {
    0, 0, 0,
    0, 1, 1,
    1, 0, 1,
    1, 1, 0,
};

constexpr int kT4F2[] = {
    0, 0, 0, 0, 0,
    0, 1, 1, 1, 1,
    1, 0, 2, 2, 1,
    1, 2, 0, 1, 2,
    2, 1, 2, 0, 2,
    2, 2, 1, 2, 0,
};

constexpr int kT4Dt[] = {
    0, 0, 0, 0, 0, 0,
    0, 0, 1, 1, 0, 1,
    0, 1, 0, 0, 1, 1,
    0, 1, 1, 1, 1, 0,
    0, 1, 1, 0, 0, 0,
    0, 1, 0, 1, 0, 1,
    0, 0, 1, 0, 1, 1,
    0, 0, 0, 1, 1, 0,
};

constexpr int kT5Result[] = {
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1,
    0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 2, 2, 1,
    0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 2, 0, 1, 2,
    0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 2, 1, 2, 0, 2,
    0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 2, 2, 1, 2, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0,
    0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1,
    0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 2, 2, 1,
    0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 2, 0, 1, 2,
    0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 2, 1, 2, 0, 2,
    0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 2, 2, 1, 2, 0,
    1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0,
    1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1,
    1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 2, 2, 1,
    1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 2, 0, 1, 2,
    1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 0, 0, 2, 1, 2, 0, 2,
    1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 2, 2, 1, 2, 0,
    1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1,
    1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 2, 2, 1,
    1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 2, 0, 1, 2,
    1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 2, 1, 2, 0, 2,
    1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 2, 2, 1, 2, 0,
};
// clang-format on

IntMatrix make(std::span<const int> data, int rows, int cols) {
  return IntMatrix(rows, cols, std::vector<Level>(data.begin(), data.end()));
}

std::string canonical(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (s == "TABLE1_F") return "T1_F";
  if (s == "TABLE1_D") return "T1_D";
  if (s == "TABLE3") return "T3_RESULT";
  if (s == "TABLE4_F1") return "T4_F1";
  if (s == "TABLE4_F2") return "T4_F2";
  if (s == "TABLE4_D" || s == "T4_DT") return "T4_DT";
  if (s == "TABLE5") return "T5_RESULT";
  return s;
}

}  // namespace

std::vector<std::string> embedded_names() {
  return {"T1_F", "T1_D", "T3_RESULT", "T4_F1", "T4_F2", "T4_Dt", "T5_RESULT"};
}

bool is_embedded(std::string_view name) {
  const std::string s = canonical(name);
  for (const auto& n : embedded_names()) {
    if (canonical(n) == s) return true;
  }
  return false;
}

EmbeddedItem embedded(std::string_view name) {
  const std::string s = canonical(name);
  if (s == "T1_F") return DesignMatrix::symmetric(make(kT1F, 9, 4), 3);
  if (s == "T1_D") return DifferenceMatrix(make(kT1D, 3, 2), Group::galois(3));
  if (s == "T3_RESULT") return DesignMatrix::symmetric(make(kT3Result, 18, 12), 3);
  if (s == "T4_F1") return DesignMatrix::symmetric(make(kT4F1, 4, 3), 2);
  if (s == "T4_F2") return DesignMatrix::symmetric(make(kT4F2, 6, 5), 3);
  if (s == "T4_DT") return DifferenceMatrix(make(kT4Dt, 8, 6), Group::galois(2));
  if (s == "T5_RESULT") {
    std::vector<int> levels(24, 2);
    levels.resize(29, 3);
    return DesignMatrix(make(kT5Result, 24, 29), std::move(levels));
  }
  throw InvalidArgument("unknown embedded array '" + std::string(name) + "'");
}

DesignMatrix embedded_design(std::string_view name) {
  auto item = embedded(name);
  if (auto* d = std::get_if<DesignMatrix>(&item)) return std::move(*d);
  throw InvalidArgument("'" + std::string(name) + "' is a difference matrix");
}

DifferenceMatrix embedded_difference_matrix(std::string_view name) {
  auto item = embedded(name);
  if (auto* d = std::get_if<DifferenceMatrix>(&item)) return std::move(*d);
  throw InvalidArgument("'" + std::string(name) + "' is a design, not a difference matrix");
}

}  // namespace ssd
