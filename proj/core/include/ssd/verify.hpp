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

#ifndef SSD_VERIFY_HPP_
#define SSD_VERIFY_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssd/criteria.hpp"
#include "ssd/matrix.hpp"
#include "ssd/rational.hpp"

namespace ssd {

struct Certificate {
  bool granted = false;
  // Why it was granted, or the refusal with witnesses.
  std::string condition;
};

// Granted iff max lambda - min lambda <= 1.
Certificate certify_efnod(const CoincidenceProfile& profile);
Certificate certify_efnod(const DesignMatrix& design);

// Granted iff omega takes one value, or two values with no attainable
// subset sum of the level counts strictly between them.
Certificate certify_chisq(const CoincidenceProfile& profile,
                          std::span<const int> levels);
Certificate certify_chisq(const DesignMatrix& design);

// attainable[s] is true when some sub-multiset of levels sums to s.
std::vector<bool> attainable_sums(std::span<const int> levels);

// How the two compared columns are formed from four source columns.
enum class BoundMode {
  kMixedBoth,       // both mixed_combine: exact equality
  kGroupSumBoth,    // both group Kronecker sums, q1 = q2 and q3 = q4
  kGroupSumMixed,   // group sum against mixed_combine, q1 = q2
};

struct BoundCheck {
  Rational lhs;
  Rational rhs;
  bool holds = false;
  bool equality = false;           // lhs == rhs
  bool equality_expected = false;  // the bound predicts equality
};

// Compares f_NOD of the two combined columns against the expression built
// from f_NOD(f1, f3) and f_NOD(f2, f4). Group sums use Group::for_order.
BoundCheck check_nonorthogonality_bound(std::span<const Level> f1, int q1,
                                        std::span<const Level> f2, int q2,
                                        std::span<const Level> f3, int q3,
                                        std::span<const Level> f4, int q4,
                                        BoundMode mode);

struct ValueSummary {
  std::int64_t value = 0;
  std::int64_t count = 0;
};

struct OptimalityReport {
  std::string shape;
  int runs = 0;
  int factors = 0;
  std::vector<int> levels;
  std::uint64_t hash = 0;
  Rational efnod;
  Rational chisq;
  std::vector<ValueSummary> lambda_values;
  std::vector<ValueSummary> omega_values;
  Certificate efnod_certificate;
  Certificate chisq_certificate;
  std::vector<IndexPair> aliased;
  Rational max_fnod;
  IndexPair max_fnod_pair;
};

// 64-bit FNV-1a over n, m, the level vector and the row-major entries, each
// value fed as 4 little-endian bytes.
std::uint64_t design_hash(const DesignMatrix& design);
std::string hash_hex(std::uint64_t hash);

// Throws InternalError if the direct and coincidence routes to the f_NOD sum
// disagree.
OptimalityReport full_report(const DesignMatrix& design);

// key: value lines; indices are 1-based.
std::string to_text(const OptimalityReport& report);
std::string to_json(const OptimalityReport& report);

}  // namespace ssd

#endif  // SSD_VERIFY_HPP_
