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

#ifndef SSD_GENERATORS_HPP_
#define SSD_GENERATORS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ssd/algebra.hpp"
#include "ssd/criteria.hpp"
#include "ssd/matrix.hpp"

namespace ssd {

// rq x c array over a group of order q in which every column difference
// d^i - d^j (i != j) contains each group element exactly r times.
// Construction verifies the property.
class DifferenceMatrix {
 public:
  DifferenceMatrix(IntMatrix entries, Group group);

  const IntMatrix& entries() const noexcept { return entries_; }
  const Group& group() const noexcept { return group_; }
  int rows() const noexcept { return entries_.rows(); }
  int columns() const noexcept { return entries_.cols(); }
  int order() const noexcept { return group_.order(); }
  // The multiplicity r = rows / q.
  int index() const noexcept { return rows() / order(); }
  // First column all zeros.
  bool normalized() const;

  friend bool operator==(const DifferenceMatrix& a, const DifferenceMatrix& b) {
    return a.entries_ == b.entries_ && a.group_ == b.group_;
  }

 private:
  IntMatrix entries_;
  Group group_;
};

// First column pair whose difference vector is not uniform over the group,
// or nullopt when the difference property holds.
std::optional<IndexPair> difference_violation(const IntMatrix& entries,
                                              const Group& group);

// First column pair whose contingency table is not uniform.
std::optional<IndexPair> strength_two_violation(const DesignMatrix& design);
bool is_orthogonal_array(const DesignMatrix& design);

// Saturated linear L_{q^t}(q^{(q^t-1)/(q-1)}) over GF(q). Rows are the
// vectors of GF(q)^t in lexicographic order; columns are the directions
// whose first nonzero coordinate is 1, ordered by their base-q encoding with
// the first coordinate least significant.
DesignMatrix rao_hamming_oa(int q, int t);

// Difference matrix from a strength-2 orthogonal array over the given group.
DifferenceMatrix dm_from_oa(const DesignMatrix& oa, const Group& group);
DifferenceMatrix dm_from_oa(const DesignMatrix& oa);

// ND(q, q, q): entry (i, j) is i * j in GF(q).
DifferenceMatrix dm_multiplication_table(int q);

// Subtracts the first column from every column.
DifferenceMatrix normalize_dm(const DifferenceMatrix& d);

// Kronecker sum of two difference matrices over the same group:
// (r1 q)(r2 q) rows, c1 c2 columns.
DifferenceMatrix dm_kronecker(const DifferenceMatrix& a,
                              const DifferenceMatrix& b);

// ND(q^t, q^t, q) with distinct rows from repeated Kronecker sums of the
// multiplication table.
DifferenceMatrix dm_power(int q, int t);

bool distinct_rows(const IntMatrix& entries);
bool distinct_rows(const DifferenceMatrix& d);
// Keeps the first row of every duplicate class. Throws VerificationError if
// the remaining rows lose the difference property.
DifferenceMatrix drop_duplicate_rows(const DifferenceMatrix& d);

// Normalizes d and picks `count` of its columns, always including the zero
// column, so that the selected rows are pairwise distinct. nullopt if no
// such subset is found within the search bound.
std::optional<DifferenceMatrix> select_distinct_columns(
    const DifferenceMatrix& d, int count);

// Generated ND(rows, cols, q) with distinct rows when rows is a power of the
// prime power q; nullopt otherwise.
std::optional<DifferenceMatrix> generate_nd(int rows, int cols, int q);

// A design with a single row coincidence value, verified on construction.
class EquidistantDesign {
 public:
  // Throws VerificationError when lambda is not constant, or when
  // require_alias_free is set and some column pair is fully aliased.
  explicit EquidistantDesign(DesignMatrix design,
                             bool require_alias_free = true);

  const DesignMatrix& design() const noexcept { return design_; }
  int lambda() const noexcept { return lambda_; }
  bool alias_free() const noexcept { return alias_free_; }
  int runs() const noexcept { return design_.runs(); }
  int factors() const noexcept { return design_.factors(); }

 private:
  DesignMatrix design_;
  int lambda_ = 0;
  bool alias_free_ = false;
};

// Equidistant lambda forced by balance, m (n/q - 1) / (n - 1), when integral.
std::optional<int> equidistant_lambda(int runs, int factors, int levels);

// Number of balanced q-level columns of length n up to level permutation,
// saturating at UINT64_MAX.
std::uint64_t alias_class_count(int runs, int levels);
// Canonical representatives (first appearance order of levels), in
// lexicographic order.
std::vector<std::vector<Level>> alias_classes(int runs, int levels);

struct SearchOptions {
  bool forbid_aliasing = true;
  std::uint64_t seed = 1;
  // Refuse to search when there are more alias classes than this.
  std::uint64_t class_budget = 2000;
  // Exhaustive subset search at or below this many classes.
  std::uint64_t exhaustive_limit = 25;
  // Total local-search moves across all restarts.
  std::uint64_t move_budget = 400000;
};

// Equidistant F(n, q^m) with constant coincidence lambda. Results are
// deterministic for a given seed and re-verified before being returned.
std::optional<EquidistantDesign> search_equidistant(
    int runs, int factors, int levels, int lambda,
    const SearchOptions& options = {});

// Per-column level relabeling so that the first row is all zeros.
DesignMatrix zero_first_row(const DesignMatrix& design);

}  // namespace ssd

#endif  // SSD_GENERATORS_HPP_
