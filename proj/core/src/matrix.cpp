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

#include "ssd/matrix.hpp"

#include <sstream>

#include "ssd/error.hpp"

namespace ssd {

IntMatrix::IntMatrix(int rows, int cols, Level fill)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix dimension");
  data_.assign(static_cast<size_t>(rows) * cols, fill);
}

IntMatrix::IntMatrix(int rows, int cols, std::vector<Level> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix dimension");
  if (data_.size() != static_cast<size_t>(rows) * cols) {
    throw InvalidArgument("matrix data size does not match its shape");
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Level>> rows) {
  std::vector<std::vector<Level>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  *this = from_rows(copy);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Level>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  std::vector<Level> data;
  data.reserve(static_cast<size_t>(r) * c);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) {
      throw InvalidArgument("ragged rows");
    }
    data.insert(data.end(), row.begin(), row.end());
  }
  return IntMatrix(r, c, std::move(data));
}

IntMatrix IntMatrix::from_column(std::span<const Level> column) {
  return IntMatrix(static_cast<int>(column.size()), 1,
                   std::vector<Level>(column.begin(), column.end()));
}

std::vector<Level> IntMatrix::column(int c) const {
  std::vector<Level> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

IntMatrix IntMatrix::select_columns(std::span<const int> columns) const {
  IntMatrix out(rows_, static_cast<int>(columns.size()));
  for (int r = 0; r < rows_; ++r) {
    for (size_t k = 0; k < columns.size(); ++k) {
      out(r, static_cast<int>(k)) = (*this)(r, columns[k]);
    }
  }
  return out;
}

IntMatrix IntMatrix::select_rows(std::span<const int> rows) const {
  IntMatrix out(static_cast<int>(rows.size()), cols_);
  for (size_t k = 0; k < rows.size(); ++k) {
    for (int c = 0; c < cols_; ++c) out(static_cast<int>(k), c) = (*this)(rows[k], c);
  }
  return out;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) {
    throw InvalidArgument("hconcat: row counts differ (" +
                          std::to_string(a.rows()) + " vs " +
                          std::to_string(b.rows()) + ")");
  }
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (int c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

bool is_balanced(std::span<const Level> column, int q) {
  const int n = static_cast<int>(column.size());
  if (q < 1 || n % q != 0) return false;
  std::vector<int> counts(q, 0);
  for (Level v : column) {
    if (v < 0 || v >= q) return false;
    ++counts[v];
  }
  for (int c : counts) {
    if (c != n / q) return false;
  }
  return true;
}

DesignMatrix::DesignMatrix(IntMatrix entries, std::vector<int> levels)
    : entries_(std::move(entries)), levels_(std::move(levels)) {
  if (static_cast<int>(levels_.size()) != entries_.cols()) {
    throw InvalidArgument("level vector has " + std::to_string(levels_.size()) +
                          " entries for " + std::to_string(entries_.cols()) +
                          " columns");
  }
  const int n = entries_.rows();
  for (int j = 0; j < entries_.cols(); ++j) {
    const int q = levels_[j];
    if (q < 2) {
      throw InvalidArgument("column " + std::to_string(j + 1) +
                            " has fewer than two levels");
    }
    if (n % q != 0) {
      throw InvalidArgument("column " + std::to_string(j + 1) + ": " +
                            std::to_string(q) + " levels do not divide " +
                            std::to_string(n) + " runs");
    }
    std::vector<int> counts(q, 0);
    for (int i = 0; i < n; ++i) {
      const Level v = entries_(i, j);
      if (v < 0 || v >= q) {
        throw InvalidArgument("column " + std::to_string(j + 1) + ", row " +
                              std::to_string(i + 1) + ": level " +
                              std::to_string(v) + " outside 0.." +
                              std::to_string(q - 1));
      }
      ++counts[v];
    }
    for (int v = 0; v < q; ++v) {
      if (counts[v] != n / q) {
        throw InvalidArgument("column " + std::to_string(j + 1) +
                              " is unbalanced: level " + std::to_string(v) +
                              " appears " + std::to_string(counts[v]) +
                              " times, expected " + std::to_string(n / q));
      }
    }
  }
}

DesignMatrix DesignMatrix::symmetric(IntMatrix entries, int q) {
  const int m = entries.cols();
  return DesignMatrix(std::move(entries), std::vector<int>(m, q));
}

std::map<int, int> DesignMatrix::signature() const {
  std::map<int, int> sig;
  for (int q : levels_) ++sig[q];
  return sig;
}

std::string format_shape(int runs, const std::map<int, int>& signature) {
  std::ostringstream os;
  os << "F(" << runs << ",";
  for (const auto& [q, count] : signature) os << " " << q << "^" << count;
  os << ")";
  return os.str();
}

std::string DesignMatrix::shape() const {
  return format_shape(runs(), signature());
}

bool DesignMatrix::is_symmetric() const {
  for (int q : levels_) {
    if (q != levels_.front()) return false;
  }
  return !levels_.empty();
}

int DesignMatrix::common_levels() const {
  if (!is_symmetric()) {
    throw InvalidArgument("design " + shape() + " is not symmetric");
  }
  return levels_.front();
}

DesignMatrix hconcat(const DesignMatrix& a, const DesignMatrix& b) {
  std::vector<int> levels = a.level_vector();
  levels.insert(levels.end(), b.level_vector().begin(), b.level_vector().end());
  return DesignMatrix(hconcat(a.entries(), b.entries()), std::move(levels));
}

GramMatrix::GramMatrix(std::span<const Level> column) {
  labels_.resize(column.size());
  std::map<Level, int> seen;
  for (size_t s = 0; s < column.size(); ++s) {
    auto [it, inserted] =
        seen.emplace(column[s], static_cast<int>(seen.size()));
    labels_[s] = it->second;
  }
}

std::int64_t GramMatrix::row_sum(int s) const {
  std::int64_t total = 0;
  for (int label : labels_) total += label == labels_[s];
  return total;
}

IntMatrix GramMatrix::materialize() const {
  const int n = size();
  IntMatrix out(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) out(s, t) = (*this)(s, t);
  }
  return out;
}

InducedMatrix::InducedMatrix(std::vector<Level> column, int q)
    : column_(std::move(column)), q_(q) {
  if (!is_balanced(column_, q_)) {
    throw InvalidArgument("induced_matrix: column is not a balanced " +
                          std::to_string(q_) + "-level column");
  }
}

IntMatrix InducedMatrix::materialize() const {
  IntMatrix out(rows(), q_);
  for (int s = 0; s < rows(); ++s) out(s, column_[s]) = 1;
  return out;
}

InducedMatrix induced_matrix(std::span<const Level> column, int q) {
  return InducedMatrix(std::vector<Level>(column.begin(), column.end()), q);
}

IntMatrix permutation_matrix(const Group& group, int element) {
  const int q = group.order();
  if (element < 0 || element >= q) {
    throw InvalidArgument("element " + std::to_string(element) +
                          " outside " + group.name());
  }
  IntMatrix p(q, q);
  for (int t = 0; t < q; ++t) p(t, group.add(element, t)) = 1;
  return p;
}

namespace {

template <typename Add>
IntMatrix block_sum(const IntMatrix& a, const IntMatrix& b, Add add) {
  const int u = b.rows();
  const int v = b.cols();
  IntMatrix out(a.rows() * u, a.cols() * v);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const Level base = a(i, j);
      for (int k = 0; k < u; ++k) {
        for (int l = 0; l < v; ++l) {
          out(i * u + k, j * v + l) = add(base, b(k, l));
        }
      }
    }
  }
  return out;
}

}  // namespace

IntMatrix kronecker_sum(const IntMatrix& a, const IntMatrix& b,
                        const Group& group) {
  return block_sum(a, b, [&](Level x, Level y) {
    return static_cast<Level>(group.add(x, y));
  });
}

IntMatrix kronecker_sum(const IntMatrix& a, const IntMatrix& b) {
  return block_sum(a, b, [](Level x, Level y) { return x + y; });
}

IntMatrix kronecker_product(const IntMatrix& a, const IntMatrix& b) {
  return block_sum(a, b, [](Level x, Level y) { return x * y; });
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("multiply: shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Level x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += x * b(k, j);
    }
  }
  return out;
}

std::vector<Level> mixed_combine(std::span<const Level> f1, int q1,
                                 std::span<const Level> f2, int q2) {
  if (!is_balanced(f1, q1) || !is_balanced(f2, q2)) {
    throw InvalidArgument("mixed_combine: inputs must be balanced columns");
  }
  std::vector<Level> out;
  out.reserve(f1.size() * f2.size());
  for (Level a : f1) {
    for (Level b : f2) out.push_back(q2 * a + b);
  }
  return out;
}

}  // namespace ssd
