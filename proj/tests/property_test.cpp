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

// Seeded randomized and exhaustive checks of the algebraic identities the
// library relies on. Oracles here are deliberately naive.

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ssd/constructors.hpp"
#include "ssd/criteria.hpp"
#include "ssd/embedded.hpp"
#include "ssd/generators.hpp"
#include "ssd/verify.hpp"

namespace ssd {
namespace {

using Column = std::vector<Level>;

Column random_balanced(int n, int q, std::mt19937_64& rng) {
  Column c(n);
  for (int s = 0; s < n; ++s) c[s] = s % q;
  std::shuffle(c.begin(), c.end(), rng);
  return c;
}

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// All balanced columns of length n over q levels.
std::vector<Column> all_balanced(int n, int q) {
  Column c(n);
  for (int s = 0; s < n; ++s) c[s] = s * q / n;
  std::vector<Column> out;
  do {
    out.push_back(c);
  } while (std::next_permutation(c.begin(), c.end()));
  return out;
}

bool aliased_by_relabelling(const Column& a, const Column& b, int q) {
  std::vector<int> perm(q);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool same = true;
    for (size_t s = 0; s < a.size() && same; ++s) same = perm[a[s]] == b[s];
    if (same) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

TEST(Property, TraceIdentity) {
  std::mt19937_64 rng(20250101);
  int checked = 0;
  while (checked < 1000) {
    const int qa = pick(rng, 2, 6), qb = pick(rng, 2, 6);
    const int step = std::lcm(qa, qb);
    if (step > 36) continue;
    const int n = step * pick(rng, 1, 36 / step);
    const Column a = random_balanced(n, qa, rng);
    const Column b = random_balanced(n, qb, rng);
    ASSERT_EQ(f_nod_trace(a, qa, b, qb), f_nod_pair(a, qa, b, qb))
        << "n=" << n << " qa=" << qa << " qb=" << qb;
    ++checked;
  }
}

TEST(Property, AliasingEquivalenceExhaustive) {
  std::int64_t pairs = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int q = 2; q <= 3; ++q) {
      if (n % q) continue;
      const auto cols = all_balanced(n, q);
      for (const auto& a : cols) {
        for (const auto& b : cols) {
          ASSERT_EQ(fully_aliased(a, q, b, q), aliased_by_relabelling(a, b, q));
          ++pairs;
        }
      }
    }
  }
  // 2:2, 3:6, 4:6, 6:20 + 90, 8:70 ordered pairs.
  EXPECT_EQ(pairs, 4 + 36 + 36 + 400 + 8100 + 4900);
}

struct Quad {
  Column f1, f2, f3, f4;
  int q1, q2, q3, q4;
};

Quad random_quad(std::mt19937_64& rng, bool q12_equal, bool q34_equal) {
  Quad x;
  x.q1 = pick(rng, 2, 4);
  x.q2 = q12_equal ? x.q1 : pick(rng, 2, 4);
  x.q3 = pick(rng, 2, 4);
  x.q4 = q34_equal ? x.q3 : pick(rng, 2, 4);
  const int base1 = std::lcm(x.q1, x.q3), base2 = std::lcm(x.q2, x.q4);
  const int n1 = base1 * pick(rng, 1, std::max(1, 12 / base1));
  const int n2 = base2 * pick(rng, 1, std::max(1, 12 / base2));
  x.f1 = random_balanced(n1, x.q1, rng);
  x.f3 = random_balanced(n1, x.q3, rng);
  x.f2 = random_balanced(n2, x.q2, rng);
  x.f4 = random_balanced(n2, x.q4, rng);
  // Make some quadruples orthogonal on one side so equality cases occur.
  if (pick(rng, 0, 3) == 0 && n1 >= x.q1 * x.q3 && n1 % (x.q1 * x.q3) == 0) {
    for (int s = 0; s < n1; ++s) {
      x.f1[s] = s % x.q1;
      x.f3[s] = (s / x.q1) % x.q3;
    }
  }
  return x;
}

Rational direct_fnod(const Column& a, int qa, const Column& b, int qb) {
  // Contingency counts by brute force.
  Rational total;
  const Rational expected(static_cast<std::int64_t>(a.size()), qa * qb);
  for (int x = 0; x < qa; ++x) {
    for (int y = 0; y < qb; ++y) {
      std::int64_t c = 0;
      for (size_t s = 0; s < a.size(); ++s) c += a[s] == x && b[s] == y;
      total += (Rational(c) - expected) * (Rational(c) - expected);
    }
  }
  return total;
}

TEST(Property, MixedCombineNonorthogonalityIsExact) {
  std::mt19937_64 rng(6001);
  for (int i = 0; i < 1000; ++i) {
    const Quad x = random_quad(rng, false, false);
    const BoundCheck c = check_nonorthogonality_bound(
        x.f1, x.q1, x.f2, x.q2, x.f3, x.q3, x.f4, x.q4, BoundMode::kMixedBoth);
    ASSERT_TRUE(c.holds);
    const Rational lhs = direct_fnod(mixed_combine(x.f1, x.q1, x.f2, x.q2),
                                     x.q1 * x.q2,
                                     mixed_combine(x.f3, x.q3, x.f4, x.q4),
                                     x.q3 * x.q4);
    ASSERT_EQ(lhs, c.lhs);
  }
}

void check_inequality(BoundMode mode, bool q34_equal, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int equalities = 0;
  for (int i = 0; i < 1000; ++i) {
    const Quad x = random_quad(rng, true, q34_equal);
    const BoundCheck c = check_nonorthogonality_bound(
        x.f1, x.q1, x.f2, x.q2, x.f3, x.q3, x.f4, x.q4, mode);
    ASSERT_TRUE(c.holds) << c.lhs << " > " << c.rhs;
    const bool orthogonal = f_nod_pair(x.f1, x.q1, x.f3, x.q3) == Rational(0) ||
                            f_nod_pair(x.f2, x.q2, x.f4, x.q4) == Rational(0);
    ASSERT_EQ(c.equality, orthogonal)
        << "lhs " << c.lhs << " rhs " << c.rhs << " case " << i;
    equalities += c.equality;
  }
  EXPECT_GT(equalities, 0);
}

TEST(Property, GroupSumBothBound) {
  check_inequality(BoundMode::kGroupSumBoth, true, 6002);
}

TEST(Property, GroupSumMixedBound) {
  check_inequality(BoundMode::kGroupSumMixed, false, 6003);
}

// Equidistant sources with random row order and level relabelling.
DesignMatrix scramble(const DesignMatrix& d, std::mt19937_64& rng) {
  std::vector<int> rows(d.runs());
  std::iota(rows.begin(), rows.end(), 0);
  std::shuffle(rows.begin(), rows.end(), rng);
  IntMatrix e = d.entries().select_rows(rows);
  for (int c = 0; c < e.cols(); ++c) {
    std::vector<int> perm(d.levels(c));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int s = 0; s < e.rows(); ++s) e(s, c) = perm[e(s, c)];
  }
  return DesignMatrix(std::move(e), d.level_vector());
}

std::vector<DesignMatrix> source_pool() {
  std::vector<DesignMatrix> pool{rao_hamming_oa(2, 2), rao_hamming_oa(2, 3),
                                 rao_hamming_oa(3, 2), rao_hamming_oa(4, 2),
                                 rao_hamming_oa(5, 2),
                                 embedded_design("table4_f2")};
  for (auto [n, m, q, l] : {std::array{6, 10, 2, 4}, std::array{6, 10, 3, 2},
                            std::array{8, 14, 4, 2}, std::array{10, 9, 5, 1}}) {
    pool.push_back(search_equidistant(n, m, q, l)->design());
  }
  return pool;
}

// Normalized difference matrix over GF(q) keeping column 0 and a random
// nonempty subset of the others.
DifferenceMatrix random_nd(int q, std::mt19937_64& rng) {
  const DifferenceMatrix base =
      pick(rng, 0, 1) ? dm_multiplication_table(q) : dm_power(q, 2);
  std::vector<int> cols{0};
  for (int c = 1; c < base.columns(); ++c) {
    if (pick(rng, 0, 1)) cols.push_back(c);
  }
  if (cols.size() == 1) cols.push_back(1);
  DifferenceMatrix d(base.entries().select_columns(cols), base.group());
  // Column subsets of the squared table can repeat rows.
  return distinct_rows(d) ? d : dm_multiplication_table(q);
}

bool contained(const std::map<std::int64_t, ValueTally>& seen,
               const std::set<std::int64_t>& predicted) {
  for (const auto& [v, t] : seen) {
    if (!predicted.count(v)) return false;
  }
  return true;
}

TEST(Property, CoincidenceValuesWithinPrediction) {
  std::mt19937_64 rng(6004);
  const auto pool = source_pool();
  for (int i = 0; i < 200; ++i) {
    const DesignMatrix& a = pool[pick(rng, 0, static_cast<int>(pool.size()) - 1)];
    if (i % 2 == 0) {
      const EquidistantDesign f(scramble(a, rng));
      const Construction c =
          construct_symmetric(f, random_nd(a.common_levels(), rng));
      const auto p = coincidence_profile(c.design);
      ASSERT_TRUE(contained(p.lambda, c.plan.lambda_values)) << a.shape();
      ASSERT_TRUE(contained(p.omega, c.plan.omega_values)) << a.shape();
    } else {
      const DesignMatrix& b =
          pool[pick(rng, 0, static_cast<int>(pool.size()) - 1)];
      const Construction c =
          construct_product(EquidistantDesign(scramble(a, rng)),
                            EquidistantDesign(scramble(b, rng)));
      const auto p = coincidence_profile(c.design);
      ASSERT_TRUE(contained(p.lambda, c.plan.lambda_values))
          << a.shape() << " x " << b.shape();
      ASSERT_TRUE(contained(p.omega, c.plan.omega_values));
    }
  }
}

TEST(Property, DifferenceMatrixKroneckerClosure) {
  for (int q = 2; q <= 7; ++q) {
    std::vector<DifferenceMatrix> bases;
    IntMatrix two(q, 2, 0);
    for (int s = 0; s < q; ++s) two(s, 1) = s;
    bases.emplace_back(two, Group::cyclic(q));
    if (prime_power(q)) {
      bases.emplace_back(two, Group::galois(q));
      bases.push_back(dm_multiplication_table(q));
    }
    if (is_prime(q)) {
      IntMatrix mult(q, q);
      for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) mult(i, j) = i * j % q;
      }
      bases.emplace_back(mult, Group::cyclic(q));
    }
    for (const auto& a : bases) {
      for (const auto& b : bases) {
        if (!(a.group() == b.group())) continue;
        const DifferenceMatrix k = dm_kronecker(a, b);
        EXPECT_EQ(k.rows(), a.rows() * b.rows());
        EXPECT_FALSE(difference_violation(k.entries(), k.group()).has_value())
            << "q=" << q;
        const DifferenceMatrix k3 = dm_kronecker(k, a);
        EXPECT_FALSE(difference_violation(k3.entries(), k3.group()).has_value());
      }
    }
  }
}

TEST(Property, MixedCombineLevelsUniform) {
  std::mt19937_64 rng(6005);
  for (int q1 = 2; q1 <= 18; ++q1) {
    for (int q2 = 2; q1 * q2 <= 36; ++q2) {
      const int n1 = q1 * pick(rng, 1, 3), n2 = q2 * pick(rng, 1, 3);
      const Column h = mixed_combine(random_balanced(n1, q1, rng), q1,
                                     random_balanced(n2, q2, rng), q2);
      std::vector<int> count(q1 * q2, 0);
      for (Level v : h) {
        ASSERT_GE(v, 0);
        ASSERT_LT(v, q1 * q2);
        ++count[v];
      }
      for (int c : count) ASSERT_EQ(c, (n1 / q1) * (n2 / q2));
    }
  }
}

}  // namespace
}  // namespace ssd
