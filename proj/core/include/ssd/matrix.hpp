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

#ifndef SSD_MATRIX_HPP_
#define SSD_MATRIX_HPP_

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ssd/algebra.hpp"

namespace ssd {

using Level = std::int32_t;

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, Level fill = 0);
  IntMatrix(int rows, int cols, std::vector<Level> data);
  IntMatrix(std::initializer_list<std::initializer_list<Level>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<Level>>& rows);
  static IntMatrix from_column(std::span<const Level> column);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Level operator()(int r, int c) const { return data_[index(r, c)]; }
  Level& operator()(int r, int c) { return data_[index(r, c)]; }
  std::span<const Level> row(int r) const {
    return {data_.data() + static_cast<size_t>(r) * cols_,
            static_cast<size_t>(cols_)};
  }
  std::vector<Level> column(int c) const;
  const std::vector<Level>& data() const noexcept { return data_; }

  IntMatrix transposed() const;
  IntMatrix select_columns(std::span<const int> columns) const;
  IntMatrix select_rows(std::span<const int> rows) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  size_t index(int r, int c) const {
    return static_cast<size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Level> data_;
};

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);

// True when every level 0..q-1 occurs exactly n/q times.
bool is_balanced(std::span<const Level> column, int q);

// Balanced n x m design F(n, q_1 ... q_m). Construction validates balance.
class DesignMatrix {
 public:
  DesignMatrix() = default;
  DesignMatrix(IntMatrix entries, std::vector<int> levels);
  static DesignMatrix symmetric(IntMatrix entries, int q);

  int runs() const noexcept { return entries_.rows(); }
  int factors() const noexcept { return entries_.cols(); }
  int levels(int column) const { return levels_.at(column); }
  const std::vector<int>& level_vector() const noexcept { return levels_; }
  const IntMatrix& entries() const noexcept { return entries_; }

  Level operator()(int r, int c) const { return entries_(r, c); }
  std::span<const Level> row(int r) const { return entries_.row(r); }
  std::vector<Level> column(int c) const { return entries_.column(c); }

  // Level count -> number of columns with that count.
  std::map<int, int> signature() const;
  // "F(24, 2^24 3^5)", level counts ascending.
  std::string shape() const;
  bool is_symmetric() const;
  // The common level count; throws unless symmetric.
  int common_levels() const;

  friend bool operator==(const DesignMatrix&, const DesignMatrix&) = default;

 private:
  IntMatrix entries_;
  std::vector<int> levels_;
};

DesignMatrix hconcat(const DesignMatrix& a, const DesignMatrix& b);
std::string format_shape(int runs, const std::map<int, int>& signature);

// X X' of an induced matrix, stored as first-appearance level labels:
// entry (s, t) is 1 iff labels[s] == labels[t]. Two gram matrices are equal
// iff their label vectors are.
class GramMatrix {
 public:
  explicit GramMatrix(std::span<const Level> column);

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  int operator()(int s, int t) const { return labels_[s] == labels_[t]; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  std::int64_t row_sum(int s) const;
  std::int64_t trace() const noexcept { return size(); }
  IntMatrix materialize() const;

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  std::vector<int> labels_;
};

// n x q indicator expansion of a balanced column, kept implicit.
class InducedMatrix {
 public:
  InducedMatrix(std::vector<Level> column, int q);

  int rows() const noexcept { return static_cast<int>(column_.size()); }
  int cols() const noexcept { return q_; }
  int operator()(int s, int t) const { return column_[s] == t; }
  const std::vector<Level>& column() const noexcept { return column_; }
  IntMatrix materialize() const;
  GramMatrix gram() const { return GramMatrix(column_); }

  friend bool operator==(const InducedMatrix&, const InducedMatrix&) = default;

 private:
  std::vector<Level> column_;
  int q_;
};

InducedMatrix induced_matrix(std::span<const Level> column, int q);

// q x q permutation matrix P with (0, ..., q-1) P' = i + (0, ..., q-1).
IntMatrix permutation_matrix(const Group& group, int element);

// Block (i, j) of the result is a(i, j) added to every entry of b in group.
IntMatrix kronecker_sum(const IntMatrix& a, const IntMatrix& b,
                        const Group& group);
// Same block layout with plain integer addition.
IntMatrix kronecker_sum(const IntMatrix& a, const IntMatrix& b);
IntMatrix kronecker_product(const IntMatrix& a, const IntMatrix& b);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

// q1*q2-level column whose entry for (row a of f1, row b of f2) is
// q2*f1[a] + f2[b], rows ordered a-major.
std::vector<Level> mixed_combine(std::span<const Level> f1, int q1,
                                 std::span<const Level> f2, int q2);

}  // namespace ssd

#endif  // SSD_MATRIX_HPP_
