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

#ifndef SSD_CRITERIA_HPP_
#define SSD_CRITERIA_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ssd/matrix.hpp"
#include "ssd/rational.hpp"

namespace ssd {

// Unordered pair of 0-based row or column indices, first < second.
struct IndexPair {
  int first = 0;
  int second = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

struct ValueTally {
  std::int64_t count = 0;
  IndexPair witness;  // first row pair attaining the value
};

// Distribution of the row coincidence numbers over all unordered row pairs:
// lambda counts agreeing columns, omega sums the level counts of agreeing
// columns.
struct CoincidenceProfile {
  int runs = 0;
  std::map<std::int64_t, ValueTally> lambda;
  std::map<std::int64_t, ValueTally> omega;

  std::int64_t pair_count() const;
  std::int64_t lambda_sum() const;
};

CoincidenceProfile coincidence_profile(const DesignMatrix& design);

// n x n matrix of lambda values; the diagonal holds m.
IntMatrix row_coincidence(const DesignMatrix& design);

class ContingencyTable {
 public:
  ContingencyTable(std::span<const Level> a, int qa, std::span<const Level> b,
                   int qb);
  int rows() const noexcept { return qa_; }
  int cols() const noexcept { return qb_; }
  std::int64_t operator()(int x, int y) const { return counts_[x * qb_ + y]; }
  std::int64_t total() const noexcept { return total_; }
  bool uniform() const;

 private:
  int qa_;
  int qb_;
  std::int64_t total_ = 0;
  std::vector<std::int64_t> counts_;
};

struct PairNonorthogonality {
  IndexPair columns;
  ContingencyTable table;
  Rational fnod;
};

PairNonorthogonality pair_nonorthogonality(const DesignMatrix& design, int i,
                                           int j);

// Sum over cells of (n_ab - n/(qa qb))^2.
Rational f_nod_pair(std::span<const Level> a, int qa,
                    std::span<const Level> b, int qb);
// tr(Xa' Xb Xb' Xa) - n^2/(qa qb), counted over row pairs.
Rational f_nod_trace(std::span<const Level> a, int qa,
                     std::span<const Level> b, int qb);

// Sum of f_NOD over all column pairs by contingency counting.
Rational fnod_total(const DesignMatrix& design);
// The same sum from the row coincidence matrix alone.
Rational fnod_total_via_coincidence(const DesignMatrix& design);

Rational e_fnod(const DesignMatrix& design);
Rational chi_square(const DesignMatrix& design);

// Largest pairwise f_NOD and the first column pair attaining it.
std::pair<Rational, IndexPair> max_fnod(const DesignMatrix& design);

// One column is a level permutation of the other. Columns with different
// level counts are never aliased.
bool fully_aliased(std::span<const Level> a, int qa, std::span<const Level> b,
                   int qb);
std::vector<IndexPair> aliased_pairs(const DesignMatrix& design);

}  // namespace ssd

#endif  // SSD_CRITERIA_HPP_
