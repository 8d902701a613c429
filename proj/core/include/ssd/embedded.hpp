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

#ifndef SSD_EMBEDDED_HPP_
#define SSD_EMBEDDED_HPP_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ssd/generators.hpp"
#include "ssd/matrix.hpp"

namespace ssd {

// Reference arrays shipped with the library, all stored with runs as rows.
//   T1_F       L9(3^4) source design
//   T1_D       ND(3, 2, 3) over GF(3)
//   T3_RESULT  F(18, 3^12)
//   T4_F1      L4(2^3)
//   T4_F2      F(6, 3^5), constant lambda 1
//   T4_Dt      ND(8, 6, 2) over GF(2)
//   T5_RESULT  F(24, 2^24 3^5)
// Lookup is case-insensitive and also accepts table1_f, table1_d, table3,
// table4_f1, table4_f2, table4_d and table5.
using EmbeddedItem = std::variant<DesignMatrix, DifferenceMatrix>;

std::vector<std::string> embedded_names();
bool is_embedded(std::string_view name);
// Throws InvalidArgument for an unknown name.
EmbeddedItem embedded(std::string_view name);
DesignMatrix embedded_design(std::string_view name);
DifferenceMatrix embedded_difference_matrix(std::string_view name);

}  // namespace ssd

#endif  // SSD_EMBEDDED_HPP_
