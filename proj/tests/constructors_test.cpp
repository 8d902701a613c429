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

#include "ssd/constructors.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ssd/criteria.hpp"
#include "ssd/embedded.hpp"

namespace ssd {
namespace {

using testing::fixture_dm;
using testing::fixture_nd_from_array;
using testing::searched;

using Counts = std::map<std::int64_t, std::int64_t>;

Counts lambda_counts(const DesignMatrix& d) {
  Counts out;
  for (const auto& [v, t] : coincidence_profile(d).lambda) out[v] = t.count;
  return out;
}

Counts omega_counts(const DesignMatrix& d) {
  Counts out;
  for (const auto& [v, t] : coincidence_profile(d).omega) out[v] = t.count;
  return out;
}

EquidistantDesign l4() { return EquidistantDesign(rao_hamming_oa(2, 2)); }
EquidistantDesign six_run() {
  return EquidistantDesign(embedded_design("table4_f2"));
}

TEST(SymmetricSum, EighteenRuns) {
  const EquidistantDesign f(embedded_design("table1_f"));
  const auto d = embedded_difference_matrix("table1_d");
  const CertifiedConstruction c = certify(construct_symmetric(f, d));
  EXPECT_EQ(c.design.entries(), embedded_design("table3").entries());
  // Pairs in one F block coincide in lambda r q = 3 columns, pairs across
  // blocks with equal F rows in m r = 4: 9 * 9 of the latter.
  EXPECT_EQ(lambda_counts(c.design), (Counts{{3, 72}, {4, 81}}));
  EXPECT_TRUE(c.efnod.granted);
  EXPECT_TRUE(c.chisq.granted);
  EXPECT_TRUE(c.report.aliased.empty());
  EXPECT_EQ(c.plan.lambda_values, (std::set<std::int64_t>{3, 4}));
}

TEST(SymmetricSum, SaturatedTwoLevel) {
  const auto c = certify(construct_symmetric(l4(), dm_multiplication_table(2)));
  EXPECT_EQ(c.design.shape(), "F(8, 2^6)");
  EXPECT_EQ(lambda_counts(c.design), (Counts{{2, 12}, {3, 16}}));
  EXPECT_TRUE(c.efnod.granted);
}

TEST(SymmetricSum, RejectsBadInputs) {
  const EquidistantDesign f(embedded_design("table1_f"));
  EXPECT_THROW(construct_symmetric(f, dm_multiplication_table(2)),
               InvalidArgument);
  const DifferenceMatrix shifted(IntMatrix{{1, 1}, {1, 2}, {1, 0}},
                                 Group::galois(3));
  EXPECT_THROW(construct_symmetric(f, shifted), InvalidArgument);
}

TEST(TwoLevelSizes, TwentyFourRuns) {
  const EquidistantDesign f1(embedded_design("table4_f1"));
  const auto d = embedded_difference_matrix("table4_d");
  const auto c = certify(construct_two_level_sizes(f1, six_run(), d));
  EXPECT_EQ(c.design, embedded_design("table5"));
  EXPECT_EQ(lambda_counts(c.design), (Counts{{13, 276}}));
  EXPECT_TRUE(c.efnod.granted);
}

TEST(TwoLevelSizes, ConstantWeightedCoincidence) {
  const EquidistantDesign f2 = searched(6, 10, 3, 2);
  const auto d = fixture_nd_from_array("L24.design", 6);
  const auto c = certify(construct_two_level_sizes(l4(), f2, d));
  EXPECT_EQ(c.design.shape(), "F(24, 2^72 3^10)");
  EXPECT_EQ(omega_counts(c.design), (Counts{{78, 276}}));
  EXPECT_TRUE(c.chisq.granted);
  EXPECT_FALSE(c.efnod.granted);
}

TEST(TwoLevelSizes, ColumnCountMustMatchRuns) {
  EXPECT_THROW(construct_two_level_sizes(l4(), six_run(),
                                         dm_from_oa(rao_hamming_oa(2, 3))),
               InvalidArgument);
}

TEST(Product, ThirtySixRuns) {
  const EquidistantDesign l9(rao_hamming_oa(3, 2));
  const auto c = certify(construct_product(l4(), l9));
  EXPECT_EQ(c.design.shape(), "F(36, 6^12)");
  Counts seen = lambda_counts(c.design);
  std::set<std::int64_t> values;
  for (const auto& [v, n] : seen) values.insert(v);
  EXPECT_EQ(values, (std::set<std::int64_t>{1, 3, 4}));
  EXPECT_EQ(c.plan.lambda_values, values);
}

TEST(ThreeLevelSizes, ConstantCoincidence) {
  const EquidistantDesign f3(zero_first_row(rao_hamming_oa(2, 2)));
  const EquidistantDesign f4(zero_first_row(embedded_design("table4_f2")));
  const auto c = certify(construct_three_level_sizes(
      l4(), searched(6, 10, 2, 4), f3, f4,
      fixture_nd_from_array("L12.design", 6), fixture_dm("ND12-4-3.design")));
  EXPECT_EQ(c.design.shape(), "F(24, 2^36 3^60 4^30)");
  EXPECT_EQ(lambda_counts(c.design), (Counts{{42, 276}}));
  EXPECT_TRUE(c.efnod.granted);
  EXPECT_TRUE(c.report.aliased.empty());
}

TEST(ThreeLevelSizes, ConstantWeightedCoincidence) {
  const EquidistantDesign f3(zero_first_row(rao_hamming_oa(2, 2)));
  const EquidistantDesign f4(zero_first_row(embedded_design("table4_f2")));
  const auto c = certify(construct_three_level_sizes(
      l4(), six_run(), f3, f4, fixture_nd_from_array("L24.design", 6),
      fixture_dm("ND6-4-3.design")));
  EXPECT_EQ(c.design.shape(), "F(24, 2^72 3^30 6^15)");
  EXPECT_EQ(omega_counts(c.design), (Counts{{108, 276}}));
  EXPECT_TRUE(c.chisq.granted);
  EXPECT_TRUE(c.report.aliased.empty());
}

TEST(ThreeLevelSizes, FirstRowMustBeZero) {
  DesignMatrix shifted = rao_hamming_oa(2, 2);
  IntMatrix e = shifted.entries();
  for (int s = 0; s < e.rows(); ++s) e(s, 0) = 1 - e(s, 0);
  const EquidistantDesign f3(DesignMatrix::symmetric(e, 2));
  try {
    construct_three_level_sizes(l4(), six_run(), f3,
                                EquidistantDesign(zero_first_row(
                                    embedded_design("table4_f2"))),
                                fixture_nd_from_array("L24.design", 6),
                                fixture_dm("ND6-4-3.design"));
    FAIL() << "expected a precondition error";
  } catch (const InvalidArgument& err) {
    EXPECT_NE(std::string(err.what()).find("F3: first row"), std::string::npos)
        << err.what();
  }
}

TEST(ThreeLevelSizes, CrossAliasingIsReported) {
  // Every normalized row (0, x, y, z) appears in D4, so some column of D4'
  // repeats a column of F3 up to relabelling.
  const auto d = generate_nd(8, 4, 2);
  ASSERT_TRUE(d.has_value());
  const DesignMatrix f = rao_hamming_oa(2, 2);
  const auto clash = cross_aliasing(f, f, *d, *d);
  ASSERT_TRUE(clash.has_value());
  EXPECT_NE(clash->find("of F3 is fully aliased with column"), std::string::npos)
      << *clash;
  EXPECT_THROW(construct_three_level_sizes(l4(), l4(), l4(), l4(), *d, *d),
               InvalidArgument);
  // Different level counts never clash.
  EXPECT_FALSE(cross_aliasing(rao_hamming_oa(2, 2),
                              embedded_design("table4_f2"),
                              fixture_nd_from_array("L24.design", 6),
                              fixture_dm("ND6-4-3.design"))
                   .has_value());
}

TEST(Plan, TwoLevelSizesArithmetic) {
  const ConstructionPlan p =
      plan(Method::kTwoLevelSizes, {{{4, 3, 2, 1}, {6, 5, 3, 1}}, {{8, 6, 2}}});
  EXPECT_EQ(p.lambda_values, (std::set<std::int64_t>{13}));
  EXPECT_TRUE(p.efnod_eligible);
  const ConstructionPlan w =
      plan(Method::kTwoLevelSizes, {{{4, 3, 2, 1}, {6, 10, 3, 2}}, {{24, 6, 2}}});
  EXPECT_EQ(w.omega_values, (std::set<std::int64_t>{78}));
  EXPECT_TRUE(w.chisq_eligible);
  for (int k = 1; k <= 3; ++k) {
    const ConstructionPlan b = plan(
        Method::kTwoLevelSizes,
        {{{4, 3, 2, 1}, {6, 5 * k, 3, k}}, {{8 * k, 6, 2}}});
    EXPECT_EQ(b.shape(), "F(24, 2^" + std::to_string(24 * k) + " 3^" +
                             std::to_string(5 * k) + ")");
    EXPECT_EQ(b.lambda_values, (std::set<std::int64_t>{13 * k}));
  }
}

TEST(Plan, RejectsInconsistentParameters) {
  EXPECT_THROW(plan(Method::kTwoLevelSizes,
                    {{{4, 3, 2, 2}, {6, 5, 3, 1}}, {{8, 6, 2}}}),
               InvalidArgument);
  EXPECT_THROW(plan(Method::kTwoLevelSizes, {{{4, 3, 2, 1}}, {}}),
               InvalidArgument);
  EXPECT_EQ(parse_method("t5"), Method::kThreeLevelSizes);
  EXPECT_THROW(parse_method("t9"), InvalidArgument);
}

}  // namespace
}  // namespace ssd
