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

#ifndef SSD_CONSTRUCTORS_HPP_
#define SSD_CONSTRUCTORS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssd/generators.hpp"
#include "ssd/matrix.hpp"
#include "ssd/verify.hpp"

namespace ssd {

enum class Method {
  kSymmetricSum,     // "t2": F (+) D'
  kSaturatedSum,     // "c1": t2 with a saturated OA and r = 1
  kTwoLevelSizes,    // "t3": (F1 (+) D', 0 (+) F2)
  kProduct,          // "t4": mixed_combine over all column pairs
  kThreeLevelSizes,  // "t5": [F1 x F2, F3 (+) D3', D4' (+) F4]
};

std::string method_tag(Method method);
Method parse_method(const std::string& tag);

struct SourceParams {
  int runs = 0;
  int factors = 0;
  int levels = 0;
  int lambda = 0;
};

struct MatrixParams {
  int rows = 0;
  int columns = 0;
  int levels = 0;
};

// Source designs in method order (t2/c1: F; t3, t4: F1, F2; t5: F1..F4) and
// difference matrices (t2/c1, t3: D; t5: D3, D4).
struct PlanParameters {
  std::vector<SourceParams> designs;
  std::vector<MatrixParams> matrices;
};

// Everything predicted from source parameters before building.
struct ConstructionPlan {
  Method method = Method::kSymmetricSum;
  int runs = 0;
  std::map<int, int> signature;
  std::set<std::int64_t> lambda_values;
  std::set<std::int64_t> omega_values;
  bool efnod_eligible = false;
  std::string efnod_condition;
  bool chisq_eligible = false;
  std::string chisq_condition;

  std::string shape() const { return format_shape(runs, signature); }
};

// Throws InvalidArgument naming the inconsistent parameter.
ConstructionPlan plan(Method method, const PlanParameters& params);

struct Construction {
  DesignMatrix design;
  ConstructionPlan plan;
};

// F (+)_G D' for an alias-free equidistant F over q levels and a normalized
// ND(rq, c, q) with distinct rows over G. Row i*c + s, column j*rq + t holds
// f_ij + d_ts.
Construction construct_symmetric(const EquidistantDesign& f,
                                 const DifferenceMatrix& d);

// (F1 (+)_G D', 0_{n1} (+) F2) with D an ND(r q1, n2, q1).
Construction construct_two_level_sizes(const EquidistantDesign& f1,
                                       const EquidistantDesign& f2,
                                       const DifferenceMatrix& d);

// Every column pair of F1, F2 merged by mixed_combine, F1 column major.
Construction construct_product(const EquidistantDesign& f1,
                               const EquidistantDesign& f2);

// [product(F1, F2), F3 (+) D3', D4' (+) F4] with D3 an ND(r3 q3, n2, q3) and
// D4 an ND(r4 q4, n1, q4). F3 and F4 must start with an all-zero row.
// Cross-block aliasing check of the three-level-size construction: a column
// of F3 against a row of D4 (when F3 and D4 share a level count) and a column
// of F4 against a row of D3. Returns a description of the first clash.
std::optional<std::string> cross_aliasing(const DesignMatrix& f3,
                                          const DesignMatrix& f4,
                                          const DifferenceMatrix& d3,
                                          const DifferenceMatrix& d4);

Construction construct_three_level_sizes(const EquidistantDesign& f1,
                                         const EquidistantDesign& f2,
                                         const EquidistantDesign& f3,
                                         const EquidistantDesign& f4,
                                         const DifferenceMatrix& d3,
                                         const DifferenceMatrix& d4);

struct CertifiedConstruction {
  DesignMatrix design;
  ConstructionPlan plan;
  OptimalityReport report;
  // Granted only when the plan arithmetic and the built design agree.
  Certificate efnod;
  Certificate chisq;
};

// Profiles the built design and reconciles it with the plan. Any
// disagreement that would contradict the construction throws InternalError.
CertifiedConstruction certify(Construction construction);

}  // namespace ssd

#endif  // SSD_CONSTRUCTORS_HPP_
