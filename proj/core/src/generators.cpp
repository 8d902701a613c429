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

#include "ssd/generators.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "ssd/error.hpp"

namespace ssd {
namespace {

std::string pair_text(const IndexPair& p) {
  return "(" + std::to_string(p.first + 1) + ", " +
         std::to_string(p.second + 1) + ")";
}

int power(int base, int exponent) {
  long long v = 1;
  for (int i = 0; i < exponent; ++i) {
    v *= base;
    if (v > (1 << 24)) throw InvalidArgument("array size too large");
  }
  return static_cast<int>(v);
}

}  // namespace

std::optional<IndexPair> difference_violation(const IntMatrix& entries,
                                              const Group& group) {
  const int q = group.order();
  const int n = entries.rows();
  for (Level v : entries.data()) {
    if (v < 0 || v >= q) {
      throw InvalidArgument("difference matrix entry " + std::to_string(v) +
                            " outside " + group.name());
    }
  }
  if (n % q != 0) return IndexPair{0, 0};
  std::vector<int> counts(q);
  for (int i = 0; i < entries.cols(); ++i) {
    for (int j = i + 1; j < entries.cols(); ++j) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int s = 0; s < n; ++s) {
        ++counts[group.sub(entries(s, i), entries(s, j))];
      }
      for (int c : counts) {
        if (c != n / q) return IndexPair{i, j};
      }
    }
  }
  return std::nullopt;
}

DifferenceMatrix::DifferenceMatrix(IntMatrix entries, Group group)
    : entries_(std::move(entries)), group_(std::move(group)) {
  if (entries_.rows() == 0 || entries_.cols() == 0) {
    throw InvalidArgument("difference matrix must be non-empty");
  }
  if (entries_.rows() % group_.order() != 0) {
    throw VerificationError("difference matrix: " +
                            std::to_string(entries_.rows()) +
                            " rows is not a multiple of the group order " +
                            std::to_string(group_.order()));
  }
  if (auto bad = difference_violation(entries_, group_)) {
    throw VerificationError("difference property fails for columns " +
                            pair_text(*bad) + " over " + group_.name());
  }
}

bool DifferenceMatrix::normalized() const {
  for (int s = 0; s < rows(); ++s) {
    if (entries_(s, 0) != 0) return false;
  }
  return true;
}

std::optional<IndexPair> strength_two_violation(const DesignMatrix& design) {
  for (int i = 0; i < design.factors(); ++i) {
    const auto a = design.column(i);
    for (int j = i + 1; j < design.factors(); ++j) {
      const auto b = design.column(j);
      if (!ContingencyTable(a, design.levels(i), b, design.levels(j))
               .uniform()) {
        return IndexPair{i, j};
      }
    }
  }
  return std::nullopt;
}

bool is_orthogonal_array(const DesignMatrix& design) {
  return !strength_two_violation(design).has_value();
}

DesignMatrix rao_hamming_oa(int q, int t) {
  if (!prime_power(q)) {
    throw InvalidArgument("rao_hamming_oa: " + std::to_string(q) +
                          " is not a prime power");
  }
  if (t < 2) throw InvalidArgument("rao_hamming_oa: t must be >= 2");
  const Group group = Group::galois(q);
  const GaloisField& field = *group.field();
  const int n = power(q, t);

  auto digits = [&](int code, bool first_most_significant) {
    std::vector<int> x(t);
    for (int i = 0; i < t; ++i) {
      const int pos = first_most_significant ? t - 1 - i : i;
      x[pos] = code % q;
      code /= q;
    }
    return x;
  };

  std::vector<std::vector<int>> directions;
  for (int code = 1; code < n; ++code) {
    auto a = digits(code, false);
    auto first = std::find_if(a.begin(), a.end(), [](int v) { return v != 0; });
    if (*first == 1) directions.push_back(std::move(a));
  }

  IntMatrix entries(n, static_cast<int>(directions.size()));
  for (int r = 0; r < n; ++r) {
    const auto x = digits(r, true);
    for (size_t c = 0; c < directions.size(); ++c) {
      int value = 0;
      for (int i = 0; i < t; ++i) {
        value = field.add(value, field.mul(directions[c][i], x[i]));
      }
      entries(r, static_cast<int>(c)) = value;
    }
  }
  return DesignMatrix::symmetric(std::move(entries), q);
}

DifferenceMatrix dm_from_oa(const DesignMatrix& oa, const Group& group) {
  if (!oa.is_symmetric() || oa.common_levels() != group.order()) {
    throw InvalidArgument("dm_from_oa: array levels do not match " +
                          group.name());
  }
  if (auto bad = strength_two_violation(oa)) {
    throw VerificationError("dm_from_oa: columns " + pair_text(*bad) +
                            " are not orthogonal");
  }
  if (auto bad = difference_violation(oa.entries(), group)) {
    throw VerificationError("dm_from_oa: difference property fails for " +
                            std::string("columns ") + pair_text(*bad) +
                            " over " + group.name());
  }
  return DifferenceMatrix(oa.entries(), group);
}

DifferenceMatrix dm_from_oa(const DesignMatrix& oa) {
  return dm_from_oa(oa, Group::for_order(oa.common_levels()));
}

DifferenceMatrix dm_multiplication_table(int q) {
  const Group group = Group::galois(q);
  const GaloisField& field = *group.field();
  IntMatrix entries(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) entries(i, j) = field.mul(i, j);
  }
  return DifferenceMatrix(std::move(entries), group);
}

DifferenceMatrix normalize_dm(const DifferenceMatrix& d) {
  IntMatrix entries = d.entries();
  const Group& g = d.group();
  for (int s = 0; s < entries.rows(); ++s) {
    const Level base = entries(s, 0);
    for (int c = 0; c < entries.cols(); ++c) {
      entries(s, c) = g.sub(entries(s, c), base);
    }
  }
  return DifferenceMatrix(std::move(entries), g);
}

DifferenceMatrix dm_kronecker(const DifferenceMatrix& a,
                              const DifferenceMatrix& b) {
  if (!(a.group() == b.group())) {
    throw InvalidArgument("dm_kronecker: groups differ (" + a.group().name() +
                          " vs " + b.group().name() + ")");
  }
  IntMatrix entries = kronecker_sum(a.entries(), b.entries(), a.group());
  if (difference_violation(entries, a.group())) {
    throw InternalError("Kronecker sum lost the difference property");
  }
  return DifferenceMatrix(std::move(entries), a.group());
}

DifferenceMatrix dm_power(int q, int t) {
  if (t < 1) throw InvalidArgument("dm_power: t must be >= 1");
  const DifferenceMatrix base = dm_multiplication_table(q);
  DifferenceMatrix out = base;
  for (int i = 1; i < t; ++i) out = dm_kronecker(out, base);
  return out;
}

bool distinct_rows(const IntMatrix& entries) {
  std::set<std::vector<Level>> seen;
  for (int s = 0; s < entries.rows(); ++s) {
    auto row = entries.row(s);
    if (!seen.emplace(row.begin(), row.end()).second) return false;
  }
  return true;
}

bool distinct_rows(const DifferenceMatrix& d) {
  return distinct_rows(d.entries());
}

DifferenceMatrix drop_duplicate_rows(const DifferenceMatrix& d) {
  std::set<std::vector<Level>> seen;
  std::vector<int> keep;
  for (int s = 0; s < d.rows(); ++s) {
    auto row = d.entries().row(s);
    if (seen.emplace(row.begin(), row.end()).second) keep.push_back(s);
  }
  IntMatrix entries = d.entries().select_rows(keep);
  if (entries.rows() % d.order() != 0 ||
      difference_violation(entries, d.group())) {
    throw VerificationError(
        "drop_duplicate_rows: removing duplicates breaks the difference "
        "property");
  }
  return DifferenceMatrix(std::move(entries), d.group());
}

namespace {

int class_count(const IntMatrix& entries, const std::vector<int>& columns) {
  std::set<std::vector<Level>> seen;
  std::vector<Level> key(columns.size());
  for (int s = 0; s < entries.rows(); ++s) {
    for (size_t k = 0; k < columns.size(); ++k) key[k] = entries(s, columns[k]);
    seen.insert(key);
  }
  return static_cast<int>(seen.size());
}

bool subset_search(const IntMatrix& entries, int count, int next,
                   std::vector<int>& chosen, long& budget) {
  if (static_cast<int>(chosen.size()) == count) {
    return class_count(entries, chosen) == entries.rows();
  }
  if (--budget < 0) return false;
  const int need = count - static_cast<int>(chosen.size());
  for (int c = next; c + need <= entries.cols(); ++c) {
    chosen.push_back(c);
    if (subset_search(entries, count, c + 1, chosen, budget)) return true;
    chosen.pop_back();
    if (budget < 0) return false;
  }
  return false;
}

}  // namespace

std::optional<DifferenceMatrix> select_distinct_columns(
    const DifferenceMatrix& d, int count) {
  if (count < 1 || count > d.columns()) return std::nullopt;
  // Column 0 is zero after normalizing, so at most q^(count-1) rows differ.
  long long patterns = 1;
  for (int c = 1; c < count && patterns < d.rows(); ++c) patterns *= d.order();
  if (patterns < d.rows()) return std::nullopt;
  const DifferenceMatrix nd = normalize_dm(d);
  const IntMatrix& entries = nd.entries();
  auto finish = [&](std::vector<int> columns) {
    return DifferenceMatrix(entries.select_columns(columns), nd.group());
  };

  std::vector<int> prefix(count);
  for (int c = 0; c < count; ++c) prefix[c] = c;
  if (class_count(entries, prefix) == entries.rows()) return finish(prefix);

  // Greedy refinement of the row partition.
  std::vector<int> chosen{0};
  std::vector<bool> used(d.columns(), false);
  used[0] = true;
  while (static_cast<int>(chosen.size()) < count) {
    int best = -1;
    int best_classes = -1;
    for (int c = 1; c < d.columns(); ++c) {
      if (used[c]) continue;
      chosen.push_back(c);
      const int classes = class_count(entries, chosen);
      chosen.pop_back();
      if (classes > best_classes) {
        best_classes = classes;
        best = c;
      }
    }
    chosen.push_back(best);
    used[best] = true;
  }
  std::vector<int> sorted = chosen;
  std::sort(sorted.begin(), sorted.end());
  if (class_count(entries, sorted) == entries.rows()) return finish(sorted);

  std::vector<int> partial{0};
  long budget = 200000;
  if (subset_search(entries, count, 1, partial, budget)) return finish(partial);
  return std::nullopt;
}

std::optional<DifferenceMatrix> generate_nd(int rows, int cols, int q) {
  if (!prime_power(q) || rows < q) return std::nullopt;
  int t = 0;
  int value = 1;
  while (value < rows) {
    value *= q;
    ++t;
  }
  if (value != rows || cols > rows) return std::nullopt;
  return select_distinct_columns(dm_power(q, t), cols);
}

EquidistantDesign::EquidistantDesign(DesignMatrix design,
                                     bool require_alias_free)
    : design_(std::move(design)) {
  if (design_.runs() < 2) {
    throw VerificationError("equidistant design needs at least two runs");
  }
  const CoincidenceProfile profile = coincidence_profile(design_);
  if (profile.lambda.size() != 1) {
    const auto low = profile.lambda.begin();
    const auto high = std::prev(profile.lambda.end());
    throw VerificationError(
        "design " + design_.shape() + " is not equidistant: rows " +
        pair_text(low->second.witness) + " coincide in " +
        std::to_string(low->first) + " columns, rows " +
        pair_text(high->second.witness) + " in " +
        std::to_string(high->first));
  }
  lambda_ = static_cast<int>(profile.lambda.begin()->first);
  const auto aliased = aliased_pairs(design_);
  alias_free_ = aliased.empty();
  if (require_alias_free && !alias_free_) {
    throw VerificationError("design " + design_.shape() +
                            " has fully aliased columns " +
                            pair_text(aliased.front()));
  }
}

std::optional<int> equidistant_lambda(int runs, int factors, int levels) {
  if (levels < 2 || runs < 2 || runs % levels != 0) return std::nullopt;
  const long long num =
      static_cast<long long>(factors) * (runs / levels - 1);
  if (num % (runs - 1) != 0) return std::nullopt;
  return static_cast<int>(num / (runs - 1));
}

DesignMatrix zero_first_row(const DesignMatrix& design) {
  IntMatrix entries = design.entries();
  for (int j = 0; j < entries.cols(); ++j) {
    const Level top = entries(0, j);
    if (top == 0) continue;
    for (int s = 0; s < entries.rows(); ++s) {
      if (entries(s, j) == top) {
        entries(s, j) = 0;
      } else if (entries(s, j) == 0) {
        entries(s, j) = top;
      }
    }
  }
  return DesignMatrix(std::move(entries), design.level_vector());
}

}  // namespace ssd
