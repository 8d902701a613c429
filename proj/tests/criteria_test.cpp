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

#include <gtest/gtest.h>

#include "ssd/embedded.hpp"
#include "ssd/error.hpp"
#include "ssd/generators.hpp"

namespace ssd {
namespace {

std::map<std::int64_t, std::int64_t> counts(
    const std::map<std::int64_t, ValueTally>& values) {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& [v, tally] : values) out[v] = tally.count;
  return out;
}

// Direct row-pair count, independent of the library's bitset path.
std::map<std::int64_t, std::int64_t> lambda_oracle(const DesignMatrix& d) {
  std::map<std::int64_t, std::int64_t> out;
  for (int s = 0; s < d.runs(); ++s) {
    for (int t = s + 1; t < d.runs(); ++t) {
      int same = 0;
      for (int c = 0; c < d.factors(); ++c) same += d(s, c) == d(t, c);
      ++out[same];
    }
  }
  return out;
}

TEST(CoincidenceProfile, SaturatedArray) {
  const auto p = coincidence_profile(rao_hamming_oa(3, 2));
  EXPECT_EQ(counts(p.lambda), (std::map<std::int64_t, std::int64_t>{{1, 36}}));
  EXPECT_EQ(counts(p.omega), (std::map<std::int64_t, std::int64_t>{{3, 36}}));
  EXPECT_EQ(p.pair_count(), 36);
}

TEST(CoincidenceProfile, EighteenRunDesign) {
  const DesignMatrix d = embedded_design("table3");
  const auto p = coincidence_profile(d);
  const std::map<std::int64_t, std::int64_t> expected{{3, 72}, {4, 81}};
  EXPECT_EQ(counts(p.lambda), expected);
  EXPECT_EQ(lambda_oracle(d), expected);
  EXPECT_EQ(counts(p.omega), (std::map<std::int64_t, std::int64_t>{{9, 72}, {12, 81}}));
}

TEST(CoincidenceProfile, TwentyFourRunDesign) {
  const auto p = coincidence_profile(embedded_design("table5"));
  EXPECT_EQ(counts(p.lambda), (std::map<std::int64_t, std::int64_t>{{13, 276}}));
}

TEST(CoincidenceProfile, DuplicateRowsCoincideEverywhere) {
  const IntMatrix oa = rao_hamming_oa(2, 2).entries();
  const IntMatrix twice = kronecker_sum(IntMatrix(2, 1, 0), oa);
  const auto p = coincidence_profile(DesignMatrix::symmetric(twice, 2));
  ASSERT_TRUE(p.lambda.count(3));
  EXPECT_EQ(p.lambda.at(3).count, 4);
  EXPECT_EQ(p.lambda.at(3).witness, (IndexPair{0, 4}));
}

TEST(RowCoincidence, MatchesProfile) {
  const DesignMatrix d = embedded_design("table3");
  const IntMatrix c = row_coincidence(d);
  EXPECT_EQ(c(0, 0), d.factors());
  std::map<std::int64_t, std::int64_t> seen;
  for (int s = 0; s < d.runs(); ++s) {
    for (int t = s + 1; t < d.runs(); ++t) ++seen[c(s, t)];
  }
  EXPECT_EQ(seen, lambda_oracle(d));
}

TEST(FNod, PairValues) {
  const DesignMatrix oa = rao_hamming_oa(3, 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      EXPECT_EQ(f_nod_pair(oa.column(i), 3, oa.column(j), 3), Rational(0));
      EXPECT_TRUE(pair_nonorthogonality(oa, i, j).table.uniform());
    }
  }
  const std::vector<Level> a{0, 1, 2, 0, 1, 2};
  const std::vector<Level> b{2, 0, 1, 2, 0, 1};
  EXPECT_EQ(f_nod_pair(a, 3, a, 3), Rational(8));
  EXPECT_EQ(f_nod_pair(a, 3, b, 3), Rational(8));
  EXPECT_THROW(f_nod_pair(a, 3, std::vector<Level>{0, 1, 2}, 3), InvalidArgument);
  EXPECT_THROW(f_nod_pair(a, 3, std::vector<Level>{0, 0, 0, 1, 1, 2}, 3),
               InvalidArgument);
}

TEST(FNod, TraceFormCases) {
  for (int q = 2; q <= 6; ++q) {
    std::vector<Level> id(q);
    for (int s = 0; s < q; ++s) id[s] = s;
    EXPECT_EQ(f_nod_trace(id, q, id, q), Rational(q - 1));
    EXPECT_EQ(f_nod_pair(id, q, id, q), Rational(q - 1));
  }
  const DesignMatrix oa = rao_hamming_oa(2, 3);
  EXPECT_EQ(f_nod_trace(oa.column(0), 2, oa.column(1), 2), Rational(0));
}

TEST(Criteria, OrthogonalArraysScoreZero) {
  for (const auto& [q, t] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 2}}) {
    const DesignMatrix oa = rao_hamming_oa(q, t);
    EXPECT_EQ(e_fnod(oa), Rational(0));
    EXPECT_EQ(chi_square(oa), Rational(0));
  }
  EXPECT_THROW(e_fnod(DesignMatrix::symmetric(IntMatrix{{0}, {1}}, 2)),
               InvalidArgument);
}

TEST(Criteria, TwoRoutesAgree) {
  for (const char* name : {"table3", "table5"}) {
    const DesignMatrix d = embedded_design(name);
    EXPECT_EQ(fnod_total(d), fnod_total_via_coincidence(d)) << name;
    Rational direct;
    for (int i = 0; i < d.factors(); ++i) {
      for (int j = i + 1; j < d.factors(); ++j) {
        direct += f_nod_pair(d.column(i), d.levels(i), d.column(j), d.levels(j));
      }
    }
    EXPECT_EQ(fnod_total(d), direct) << name;
  }
}

TEST(Criteria, MaxFnodPicksLargestPair) {
  const DesignMatrix d = embedded_design("table3");
  const auto [value, pair] = max_fnod(d);
  EXPECT_EQ(value, f_nod_pair(d.column(pair.first), 3, d.column(pair.second), 3));
  for (int i = 0; i < d.factors(); ++i) {
    for (int j = i + 1; j < d.factors(); ++j) {
      EXPECT_LE(f_nod_pair(d.column(i), 3, d.column(j), 3), value);
    }
  }
}

TEST(Aliasing, Pairs) {
  EXPECT_TRUE(fully_aliased(std::vector<Level>{0, 1, 2, 0, 1, 2}, 3,
                            std::vector<Level>{2, 0, 1, 2, 0, 1}, 3));
  EXPECT_FALSE(fully_aliased(std::vector<Level>{0, 0, 1, 1}, 2,
                             std::vector<Level>{0, 1, 0, 1}, 2));
  EXPECT_FALSE(fully_aliased(std::vector<Level>{0, 0, 1, 1}, 2,
                             std::vector<Level>{0, 0, 1, 1}, 4));
  EXPECT_TRUE(aliased_pairs(embedded_design("table3")).empty());
  EXPECT_TRUE(aliased_pairs(embedded_design("table5")).empty());
}

TEST(Aliasing, DuplicatedAndComplementColumns) {
  const DesignMatrix oa = rao_hamming_oa(2, 2);
  const DesignMatrix dup(hconcat(oa.entries(), IntMatrix::from_column(oa.column(1))),
                         {2, 2, 2, 2});
  EXPECT_EQ(aliased_pairs(dup), (std::vector<IndexPair>{{1, 3}}));
  const std::vector<Level> f{0, 1, 1, 0};
  IntMatrix pair(4, 2);
  for (int s = 0; s < 4; ++s) {
    pair(s, 0) = f[s];
    pair(s, 1) = 1 - f[s];
  }
  EXPECT_EQ(aliased_pairs(DesignMatrix::symmetric(pair, 2)),
            (std::vector<IndexPair>{{0, 1}}));
}

}  // namespace
}  // namespace ssd
