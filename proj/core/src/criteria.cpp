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

#include "ssd/criteria.hpp"

#include <algorithm>
#include <string>

#include "ssd/error.hpp"

namespace ssd {
namespace {

void require_pair(std::span<const Level> a, int qa, std::span<const Level> b,
                  int qb) {
  if (a.size() != b.size()) {
    throw InvalidArgument("column lengths differ (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
  if (!is_balanced(a, qa) || !is_balanced(b, qb)) {
    throw InvalidArgument("columns must be balanced");
  }
}

// Column-major copy so pair loops touch contiguous memory.
std::vector<std::vector<Level>> columns_of(const DesignMatrix& design) {
  std::vector<std::vector<Level>> cols(design.factors());
  for (int j = 0; j < design.factors(); ++j) cols[j] = design.column(j);
  return cols;
}

// For one column pair: sum over cells of (n_ab * d - n)^2 with d = qa*qb,
// i.e. f_NOD scaled by d^2.
std::int64_t scaled_fnod(const std::vector<Level>& a, int qa,
                         const std::vector<Level>& b, int qb,
                         std::vector<std::int64_t>& scratch) {
  const std::int64_t d = static_cast<std::int64_t>(qa) * qb;
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  scratch.assign(static_cast<size_t>(d), 0);
  for (size_t s = 0; s < a.size(); ++s) ++scratch[a[s] * qb + b[s]];
  std::int64_t total = 0;
  for (std::int64_t c : scratch) {
    const std::int64_t dev = c * d - n;
    total += dev * dev;
  }
  return total;
}

// Sum over i<j of 1/(q_i q_j) from the level signature.
Rational inverse_product_sum(const std::map<int, int>& signature) {
  Rational total;
  for (auto it = signature.begin(); it != signature.end(); ++it) {
    const std::int64_t q = it->first;
    const std::int64_t c = it->second;
    total += Rational(c * (c - 1) / 2, q * q);
    for (auto jt = std::next(it); jt != signature.end(); ++jt) {
      total += Rational(c * jt->second, q * jt->first);
    }
  }
  return total;
}

}  // namespace

std::int64_t CoincidenceProfile::pair_count() const {
  std::int64_t total = 0;
  for (const auto& [value, tally] : lambda) total += tally.count;
  return total;
}

std::int64_t CoincidenceProfile::lambda_sum() const {
  std::int64_t total = 0;
  for (const auto& [value, tally] : lambda) total += value * tally.count;
  return total;
}

CoincidenceProfile coincidence_profile(const DesignMatrix& design) {
  CoincidenceProfile profile;
  profile.runs = design.runs();
  const int n = design.runs();
  const int m = design.factors();
  const auto& levels = design.level_vector();
  for (int s = 0; s < n; ++s) {
    const auto rs = design.row(s);
    for (int t = s + 1; t < n; ++t) {
      const auto rt = design.row(t);
      std::int64_t lambda = 0;
      std::int64_t omega = 0;
      for (int k = 0; k < m; ++k) {
        if (rs[k] == rt[k]) {
          ++lambda;
          omega += levels[k];
        }
      }
      auto& l = profile.lambda[lambda];
      if (l.count++ == 0) l.witness = {s, t};
      auto& w = profile.omega[omega];
      if (w.count++ == 0) w.witness = {s, t};
    }
  }
  return profile;
}

IntMatrix row_coincidence(const DesignMatrix& design) {
  const int n = design.runs();
  const int m = design.factors();
  IntMatrix out(n, n);
  for (int s = 0; s < n; ++s) {
    out(s, s) = m;
    const auto rs = design.row(s);
    for (int t = s + 1; t < n; ++t) {
      const auto rt = design.row(t);
      Level count = 0;
      for (int k = 0; k < m; ++k) count += rs[k] == rt[k];
      out(s, t) = count;
      out(t, s) = count;
    }
  }
  return out;
}

ContingencyTable::ContingencyTable(std::span<const Level> a, int qa,
                                   std::span<const Level> b, int qb)
    : qa_(qa), qb_(qb) {
  if (a.size() != b.size()) {
    throw InvalidArgument("contingency table: column lengths differ");
  }
  counts_.assign(static_cast<size_t>(qa) * qb, 0);
  for (size_t s = 0; s < a.size(); ++s) {
    if (a[s] < 0 || a[s] >= qa || b[s] < 0 || b[s] >= qb) {
      throw InvalidArgument("contingency table: level out of range");
    }
    ++counts_[a[s] * qb + b[s]];
  }
  total_ = static_cast<std::int64_t>(a.size());
}

bool ContingencyTable::uniform() const {
  for (std::int64_t c : counts_) {
    if (c * qa_ * qb_ != total_) return false;
  }
  return true;
}

PairNonorthogonality pair_nonorthogonality(const DesignMatrix& design, int i,
                                           int j) {
  const auto a = design.column(i);
  const auto b = design.column(j);
  const int qa = design.levels(i);
  const int qb = design.levels(j);
  return PairNonorthogonality{{i, j}, ContingencyTable(a, qa, b, qb),
                              f_nod_pair(a, qa, b, qb)};
}

Rational f_nod_pair(std::span<const Level> a, int qa,
                    std::span<const Level> b, int qb) {
  require_pair(a, qa, b, qb);
  const ContingencyTable table(a, qa, b, qb);
  const std::int64_t d = static_cast<std::int64_t>(qa) * qb;
  const Rational expected(table.total(), d);
  Rational total;
  for (int x = 0; x < qa; ++x) {
    for (int y = 0; y < qb; ++y) {
      const Rational dev = Rational(table(x, y)) - expected;
      total += dev * dev;
    }
  }
  return total;
}

Rational f_nod_trace(std::span<const Level> a, int qa,
                     std::span<const Level> b, int qb) {
  require_pair(a, qa, b, qb);
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  std::int64_t trace = 0;
  for (std::int64_t s = 0; s < n; ++s) {
    for (std::int64_t t = 0; t < n; ++t) {
      trace += (a[s] == a[t]) && (b[s] == b[t]);
    }
  }
  return Rational(trace) - Rational(n * n, static_cast<std::int64_t>(qa) * qb);
}

Rational fnod_total(const DesignMatrix& design) {
  const auto cols = columns_of(design);
  const auto& levels = design.level_vector();
  std::map<std::int64_t, std::int64_t> by_denominator;
  std::vector<std::int64_t> scratch;
  for (int i = 0; i < design.factors(); ++i) {
    for (int j = i + 1; j < design.factors(); ++j) {
      const std::int64_t d = static_cast<std::int64_t>(levels[i]) * levels[j];
      by_denominator[d] +=
          scaled_fnod(cols[i], levels[i], cols[j], levels[j], scratch);
    }
  }
  Rational total;
  for (const auto& [d, num] : by_denominator) total += Rational(num, d * d);
  return total;
}

Rational fnod_total_via_coincidence(const DesignMatrix& design) {
  const IntMatrix coincidence = row_coincidence(design);
  std::int64_t square_sum = 0;
  for (Level v : coincidence.data()) {
    square_sum += static_cast<std::int64_t>(v) * v;
  }
  const std::int64_t n = design.runs();
  // Diagonal terms tr(G_i G_i) = n^2 / q_i.
  Rational self;
  for (const auto& [q, count] : design.signature()) {
    self += Rational(count * n * n, q);
  }
  const Rational cross = (Rational(square_sum) - self) / Rational(2);
  return cross - Rational(n * n) * inverse_product_sum(design.signature());
}

Rational e_fnod(const DesignMatrix& design) {
  const std::int64_t m = design.factors();
  if (m < 2) throw InvalidArgument("E(f_NOD) needs at least two columns");
  return fnod_total(design) * Rational(2, m * (m - 1));
}

Rational chi_square(const DesignMatrix& design) {
  if (design.factors() < 2) {
    throw InvalidArgument("chi-square needs at least two columns");
  }
  const auto cols = columns_of(design);
  const auto& levels = design.level_vector();
  std::map<std::int64_t, std::int64_t> by_denominator;
  std::vector<std::int64_t> scratch;
  for (int i = 0; i < design.factors(); ++i) {
    for (int j = i + 1; j < design.factors(); ++j) {
      const std::int64_t d = static_cast<std::int64_t>(levels[i]) * levels[j];
      by_denominator[d] +=
          scaled_fnod(cols[i], levels[i], cols[j], levels[j], scratch);
    }
  }
  // q_i q_j f_NOD = scaled / d.
  Rational total;
  for (const auto& [d, num] : by_denominator) total += Rational(num, d);
  return total / Rational(design.runs());
}

std::pair<Rational, IndexPair> max_fnod(const DesignMatrix& design) {
  const auto cols = columns_of(design);
  const auto& levels = design.level_vector();
  std::vector<std::int64_t> scratch;
  std::int64_t best_num = -1;
  std::int64_t best_den = 1;
  IndexPair best{};
  for (int i = 0; i < design.factors(); ++i) {
    for (int j = i + 1; j < design.factors(); ++j) {
      const std::int64_t d = static_cast<std::int64_t>(levels[i]) * levels[j];
      const std::int64_t num =
          scaled_fnod(cols[i], levels[i], cols[j], levels[j], scratch);
      if (static_cast<Int128>(num) * best_den >
          static_cast<Int128>(best_num) * (d * d)) {
        best_num = num;
        best_den = d * d;
        best = {i, j};
      }
    }
  }
  if (best_num < 0) return {Rational(0), best};
  return {Rational(best_num, best_den), best};
}

bool fully_aliased(std::span<const Level> a, int qa, std::span<const Level> b,
                   int qb) {
  if (qa != qb || a.size() != b.size()) return false;
  return GramMatrix(a) == GramMatrix(b);
}

std::vector<IndexPair> aliased_pairs(const DesignMatrix& design) {
  std::map<std::pair<int, std::vector<int>>, std::vector<int>> classes;
  for (int j = 0; j < design.factors(); ++j) {
    const auto column = design.column(j);
    classes[{design.levels(j), GramMatrix(column).labels()}].push_back(j);
  }
  std::vector<IndexPair> pairs;
  for (const auto& [key, members] : classes) {
    for (size_t x = 0; x < members.size(); ++x) {
      for (size_t y = x + 1; y < members.size(); ++y) {
        pairs.push_back({members[x], members[y]});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace ssd
