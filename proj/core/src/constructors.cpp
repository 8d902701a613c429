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

#include <sstream>

#include "ssd/error.hpp"

namespace ssd {
namespace {

using Int = std::int64_t;

std::string join(const std::set<Int>& values) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (Int v : values) {
    os << (first ? "" : ", ") << v;
    first = false;
  }
  os << "}";
  return os.str();
}

void check_source(const SourceParams& s, const std::string& name) {
  if (s.runs < 2 || s.factors < 1 || s.levels < 2 || s.runs % s.levels != 0) {
    throw InvalidArgument(name + ": needs runs >= 2, factors >= 1 and a level "
                          "count dividing the runs");
  }
  const Int block = s.runs / s.levels;
  const Int covered = Int{s.factors} * s.levels * block * (block - 1) / 2;
  const Int pairs = Int{s.runs} * (s.runs - 1) / 2;
  if (covered != Int{s.lambda} * pairs) {
    throw InvalidArgument(name + ": coincidence number " +
                          std::to_string(s.lambda) + " is inconsistent with F(" +
                          std::to_string(s.runs) + ", " +
                          std::to_string(s.levels) + "^" +
                          std::to_string(s.factors) + ")");
  }
}

void check_matrix(const MatrixParams& d, int levels, int columns,
                  const std::string& name) {
  if (d.levels != levels) {
    throw InvalidArgument(name + ": has " + std::to_string(d.levels) +
                          " levels, expected " + std::to_string(levels));
  }
  if (d.rows < levels || d.rows % levels != 0) {
    throw InvalidArgument(name + ": row count " + std::to_string(d.rows) +
                          " is not a positive multiple of " +
                          std::to_string(levels));
  }
  if (d.columns != columns) {
    throw InvalidArgument(name + ": has " + std::to_string(d.columns) +
                          " columns, expected " + std::to_string(columns));
  }
}

void expect_counts(const PlanParameters& p, size_t designs, size_t matrices,
                   Method method) {
  if (p.designs.size() != designs || p.matrices.size() != matrices) {
    throw InvalidArgument("method " + method_tag(method) + " takes " +
                          std::to_string(designs) + " designs and " +
                          std::to_string(matrices) + " difference matrices");
  }
}

void spread_condition(const std::set<Int>& values, bool& eligible,
                      std::string& text) {
  const Int spread = *values.rbegin() - *values.begin();
  eligible = spread <= 1;
  text = "predicted coincidence numbers " + join(values) + " span " +
         std::to_string(spread) + (eligible ? " <= 1" : " > 1");
}

void equal_condition(const std::set<Int>& values, bool& eligible,
                     std::string& text) {
  eligible = values.size() == 1;
  text = "predicted weighted coincidence numbers " + join(values) +
         (eligible ? " are all equal" : " differ");
}

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

SourceParams params_of(const EquidistantDesign& f) {
  return {f.runs(), f.factors(), f.design().common_levels(), f.lambda()};
}

MatrixParams params_of(const DifferenceMatrix& d) {
  return {d.rows(), d.columns(), d.order()};
}

void require_source(const EquidistantDesign& f, const std::string& name,
                    bool alias_free) {
  require(f.design().is_symmetric(), name + " must be symmetric");
  if (alias_free) {
    require(f.alias_free(), name + " has fully aliased columns");
  }
}

void require_nd(const DifferenceMatrix& d, const std::string& name) {
  require(d.normalized(), name + " is not normalized (first column not zero)");
  require(distinct_rows(d), name + " has identical rows");
}

}  // namespace

std::string method_tag(Method method) {
  switch (method) {
    case Method::kSymmetricSum:
      return "t2";
    case Method::kSaturatedSum:
      return "c1";
    case Method::kTwoLevelSizes:
      return "t3";
    case Method::kProduct:
      return "t4";
    case Method::kThreeLevelSizes:
      return "t5";
  }
  return "?";
}

Method parse_method(const std::string& tag) {
  for (Method m : {Method::kSymmetricSum, Method::kSaturatedSum,
                   Method::kTwoLevelSizes, Method::kProduct,
                   Method::kThreeLevelSizes}) {
    if (method_tag(m) == tag) return m;
  }
  throw InvalidArgument("unknown construction method '" + tag + "'");
}

ConstructionPlan plan(Method method, const PlanParameters& params) {
  ConstructionPlan out;
  out.method = method;
  switch (method) {
    case Method::kSymmetricSum:
    case Method::kSaturatedSum: {
      expect_counts(params, 1, 1, method);
      const SourceParams& f = params.designs[0];
      const MatrixParams& d = params.matrices[0];
      check_source(f, "F");
      if (d.levels != f.levels) {
        throw InvalidArgument("D: has " + std::to_string(d.levels) +
                              " levels, expected " + std::to_string(f.levels));
      }
      require(d.rows >= d.levels && d.rows % d.levels == 0,
              "D: row count is not a multiple of its level count");
      const Int r = d.rows / d.levels;
      const Int q = f.levels;
      if (method == Method::kSaturatedSum) {
        require(r == 1, "c1: D must have r = 1");
        require(Int{f.lambda} * q == f.factors - 1,
                "c1: F must be a saturated orthogonal array");
      }
      out.runs = f.runs * d.columns;
      out.signature[f.levels] = static_cast<int>(f.factors * r * q);
      out.lambda_values = {f.factors * r, f.lambda * r * q};
      for (Int v : out.lambda_values) out.omega_values.insert(q * v);
      spread_condition(out.lambda_values, out.efnod_eligible,
                       out.efnod_condition);
      // Symmetric: omega = q lambda, adjacent exactly when lambda is.
      out.chisq_eligible = out.efnod_eligible;
      out.chisq_condition = "predicted weighted coincidence numbers " +
                            join(out.omega_values) +
                            (out.chisq_eligible ? " are adjacent multiples of "
                                                : " are not adjacent multiples of ") +
                            std::to_string(q);
      break;
    }
    case Method::kTwoLevelSizes: {
      expect_counts(params, 2, 1, method);
      const SourceParams& f1 = params.designs[0];
      const SourceParams& f2 = params.designs[1];
      check_source(f1, "F1");
      check_source(f2, "F2");
      check_matrix(params.matrices[0], f1.levels, f2.runs, "D");
      const Int r = params.matrices[0].rows / f1.levels;
      const Int q1 = f1.levels, q2 = f2.levels;
      const Int m1 = f1.factors, m2 = f2.factors;
      const Int l1 = f1.lambda, l2 = f2.lambda;
      out.runs = f1.runs * f2.runs;
      out.signature[f1.levels] += static_cast<int>(r * m1 * q1);
      out.signature[f2.levels] += static_cast<int>(m2);
      out.lambda_values = {l2 + r * m1, m2 + l1 * r * q1};
      out.omega_values = {q2 * l2 + q1 * r * m1, q2 * m2 + l1 * r * q1 * q1};
      spread_condition(out.lambda_values, out.efnod_eligible,
                       out.efnod_condition);
      equal_condition(out.omega_values, out.chisq_eligible,
                      out.chisq_condition);
      break;
    }
    case Method::kProduct: {
      expect_counts(params, 2, 0, method);
      const SourceParams& f1 = params.designs[0];
      const SourceParams& f2 = params.designs[1];
      check_source(f1, "F1");
      check_source(f2, "F2");
      const Int q = Int{f1.levels} * f2.levels;
      out.runs = f1.runs * f2.runs;
      out.signature[static_cast<int>(q)] = f1.factors * f2.factors;
      out.lambda_values = {Int{f1.lambda} * f2.factors,
                           Int{f2.lambda} * f1.factors,
                           Int{f1.lambda} * f2.lambda};
      for (Int v : out.lambda_values) out.omega_values.insert(q * v);
      spread_condition(out.lambda_values, out.efnod_eligible,
                       out.efnod_condition);
      out.chisq_eligible = out.efnod_eligible;
      out.chisq_condition = "predicted weighted coincidence numbers " +
                            join(out.omega_values) +
                            (out.chisq_eligible ? " are adjacent multiples of "
                                                : " are not adjacent multiples of ") +
                            std::to_string(q);
      break;
    }
    case Method::kThreeLevelSizes: {
      expect_counts(params, 4, 2, method);
      const auto& f = params.designs;
      for (int i = 0; i < 4; ++i) check_source(f[i], "F" + std::to_string(i + 1));
      require(f[0].runs == f[2].runs, "F1 and F3 must have equal run counts");
      require(f[1].runs == f[3].runs, "F2 and F4 must have equal run counts");
      check_matrix(params.matrices[0], f[2].levels, f[1].runs, "D3");
      check_matrix(params.matrices[1], f[3].levels, f[0].runs, "D4");
      const Int q1 = f[0].levels, q2 = f[1].levels, q3 = f[2].levels,
                q4 = f[3].levels;
      const Int m1 = f[0].factors, m2 = f[1].factors, m3 = f[2].factors,
                m4 = f[3].factors;
      const Int l1 = f[0].lambda, l2 = f[1].lambda, l3 = f[2].lambda,
                l4 = f[3].lambda;
      const Int r3 = params.matrices[0].rows / q3;
      const Int r4 = params.matrices[1].rows / q4;
      out.runs = f[0].runs * f[1].runs;
      out.signature[static_cast<int>(q1 * q2)] += static_cast<int>(m1 * m2);
      out.signature[static_cast<int>(q3)] += static_cast<int>(m3 * r3 * q3);
      out.signature[static_cast<int>(q4)] += static_cast<int>(m4 * r4 * q4);
      out.lambda_values = {l2 * m1 + r3 * m3 + l4 * r4 * q4,
                           l1 * l2 + r3 * m3 + r4 * m4,
                           l1 * m2 + l3 * r3 * q3 + r4 * m4};
      out.omega_values = {q1 * q2 * l2 * m1 + q3 * r3 * m3 + l4 * r4 * q4 * q4,
                          q1 * q2 * l1 * l2 + q3 * r3 * m3 + q4 * r4 * m4,
                          q1 * q2 * l1 * m2 + l3 * r3 * q3 * q3 + q4 * r4 * m4};
      spread_condition(out.lambda_values, out.efnod_eligible,
                       out.efnod_condition);
      equal_condition(out.omega_values, out.chisq_eligible,
                      out.chisq_condition);
      break;
    }
  }
  return out;
}

Construction construct_symmetric(const EquidistantDesign& f,
                                 const DifferenceMatrix& d) {
  require_source(f, "F", true);
  require_nd(d, "D");
  const int q = f.design().common_levels();
  require(d.order() == q, "D is over " + d.group().name() + " but F has " +
                              std::to_string(q) + " levels");
  ConstructionPlan p = plan(Method::kSymmetricSum, {{params_of(f)}, {params_of(d)}});
  DesignMatrix design = DesignMatrix::symmetric(
      kronecker_sum(f.design().entries(), d.entries().transposed(), d.group()),
      q);
  return {std::move(design), std::move(p)};
}

Construction construct_two_level_sizes(const EquidistantDesign& f1,
                                       const EquidistantDesign& f2,
                                       const DifferenceMatrix& d) {
  require_source(f1, "F1", true);
  require_source(f2, "F2", true);
  require_nd(d, "D");
  const int q1 = f1.design().common_levels();
  const int q2 = f2.design().common_levels();
  require(d.order() == q1, "D is over " + d.group().name() + " but F1 has " +
                               std::to_string(q1) + " levels");
  require(d.columns() == f2.runs(),
          "D has " + std::to_string(d.columns()) + " columns but F2 has " +
              std::to_string(f2.runs()) + " runs");
  ConstructionPlan p = plan(Method::kTwoLevelSizes,
                            {{params_of(f1), params_of(f2)}, {params_of(d)}});
  const DesignMatrix left = DesignMatrix::symmetric(
      kronecker_sum(f1.design().entries(), d.entries().transposed(), d.group()),
      q1);
  const DesignMatrix right = DesignMatrix::symmetric(
      kronecker_sum(IntMatrix(f1.runs(), 1, 0), f2.design().entries()), q2);
  return {hconcat(left, right), std::move(p)};
}

namespace {

DesignMatrix product_block(const DesignMatrix& a, const DesignMatrix& b) {
  const int qa = a.common_levels();
  const int qb = b.common_levels();
  const int n = a.runs() * b.runs();
  IntMatrix entries(n, a.factors() * b.factors());
  for (int i = 0; i < a.factors(); ++i) {
    const auto ca = a.column(i);
    for (int j = 0; j < b.factors(); ++j) {
      const auto combined = mixed_combine(ca, qa, b.column(j), qb);
      const int col = i * b.factors() + j;
      for (int s = 0; s < n; ++s) entries(s, col) = combined[s];
    }
  }
  return DesignMatrix::symmetric(std::move(entries), qa * qb);
}

}  // namespace

Construction construct_product(const EquidistantDesign& f1,
                               const EquidistantDesign& f2) {
  require_source(f1, "F1", false);
  require_source(f2, "F2", false);
  ConstructionPlan p =
      plan(Method::kProduct, {{params_of(f1), params_of(f2)}, {}});
  return {product_block(f1.design(), f2.design()), std::move(p)};
}

std::optional<std::string> cross_aliasing(const DesignMatrix& f3,
                                          const DesignMatrix& f4,
                                          const DifferenceMatrix& d3,
                                          const DifferenceMatrix& d4) {
  auto scan = [](const DesignMatrix& f, const DifferenceMatrix& d,
                 const std::string& fname,
                 const std::string& dname) -> std::optional<std::string> {
    if (f.common_levels() != d.order()) return std::nullopt;
    const IntMatrix dt = d.entries().transposed();
    std::vector<GramMatrix> grams;
    grams.reserve(dt.cols());
    for (int k = 0; k < dt.cols(); ++k) grams.emplace_back(dt.column(k));
    for (int j = 0; j < f.factors(); ++j) {
      const GramMatrix g(f.column(j));
      for (int k = 0; k < dt.cols(); ++k) {
        if (g == grams[k]) {
          return "column " + std::to_string(j + 1) + " of " + fname +
                 " is fully aliased with column " + std::to_string(k + 1) +
                 " of " + dname + "'";
        }
      }
    }
    return std::nullopt;
  };
  if (auto clash = scan(f3, d4, "F3", "D4")) return clash;
  return scan(f4, d3, "F4", "D3");
}

Construction construct_three_level_sizes(const EquidistantDesign& f1,
                                         const EquidistantDesign& f2,
                                         const EquidistantDesign& f3,
                                         const EquidistantDesign& f4,
                                         const DifferenceMatrix& d3,
                                         const DifferenceMatrix& d4) {
  require_source(f1, "F1", true);
  require_source(f2, "F2", true);
  require_source(f3, "F3", true);
  require_source(f4, "F4", true);
  require_nd(d3, "D3");
  require_nd(d4, "D4");
  require(f1.runs() == f3.runs(), "F1 and F3 must have equal run counts");
  require(f2.runs() == f4.runs(), "F2 and F4 must have equal run counts");
  const int q3 = f3.design().common_levels();
  const int q4 = f4.design().common_levels();
  require(d3.order() == q3, "D3 is over " + d3.group().name() +
                                " but F3 has " + std::to_string(q3) + " levels");
  require(d4.order() == q4, "D4 is over " + d4.group().name() +
                                " but F4 has " + std::to_string(q4) + " levels");
  require(d3.columns() == f2.runs(), "D3 must have as many columns as F2 has runs");
  require(d4.columns() == f1.runs(), "D4 must have as many columns as F1 has runs");
  for (const auto* f : {&f3, &f4}) {
    const auto row = f->design().row(0);
    for (Level v : row) {
      require(v == 0, std::string(f == &f3 ? "F3" : "F4") +
                          ": first row is not all zeros");
    }
  }

  if (auto clash = cross_aliasing(f3.design(), f4.design(), d3, d4)) {
    throw InvalidArgument(*clash);
  }
  const IntMatrix d3t = d3.entries().transposed();
  const IntMatrix d4t = d4.entries().transposed();

  ConstructionPlan p = plan(
      Method::kThreeLevelSizes,
      {{params_of(f1), params_of(f2), params_of(f3), params_of(f4)},
       {params_of(d3), params_of(d4)}});
  DesignMatrix design = product_block(f1.design(), f2.design());
  design = hconcat(design, DesignMatrix::symmetric(
                               kronecker_sum(f3.design().entries(), d3t,
                                             d3.group()),
                               q3));
  design = hconcat(design, DesignMatrix::symmetric(
                               kronecker_sum(d4t, f4.design().entries(),
                                             d4.group()),
                               q4));
  return {std::move(design), std::move(p)};
}

CertifiedConstruction certify(Construction construction) {
  CertifiedConstruction out{std::move(construction.design),
                            std::move(construction.plan), {}, {}, {}};
  out.report = full_report(out.design);
  const std::string tag = method_tag(out.plan.method);
  if (out.design.shape() != out.plan.shape()) {
    throw InternalError(tag + ": built " + out.design.shape() +
                        " but the plan predicts " + out.plan.shape());
  }
  for (const auto& v : out.report.lambda_values) {
    if (!out.plan.lambda_values.count(v.value)) {
      throw InternalError(tag + ": coincidence number " +
                          std::to_string(v.value) + " outside the prediction " +
                          join(out.plan.lambda_values));
    }
  }
  for (const auto& v : out.report.omega_values) {
    if (!out.plan.omega_values.count(v.value)) {
      throw InternalError(tag + ": weighted coincidence number " +
                          std::to_string(v.value) +
                          " outside the prediction " +
                          join(out.plan.omega_values));
    }
  }
  if (out.plan.method != Method::kProduct && !out.report.aliased.empty()) {
    const auto& p = out.report.aliased.front();
    throw InternalError(tag + ": built design has fully aliased columns (" +
                        std::to_string(p.first + 1) + ", " +
                        std::to_string(p.second + 1) + ")");
  }
  auto reconcile = [&](bool eligible, const std::string& plan_text,
                       const Certificate& built, const char* name) {
    if (eligible && !built.granted) {
      throw InternalError(tag + ": plan grants the " + std::string(name) +
                          " certificate but the design refuses it: " +
                          built.condition);
    }
    Certificate c;
    c.granted = eligible && built.granted;
    c.condition = "plan: " + plan_text + "; design: " + built.condition;
    return c;
  };
  out.efnod = reconcile(out.plan.efnod_eligible, out.plan.efnod_condition,
                        out.report.efnod_certificate, "E(f_NOD)");
  out.chisq = reconcile(out.plan.chisq_eligible, out.plan.chisq_condition,
                        out.report.chisq_certificate, "chi-square");
  return out;
}

}  // namespace ssd
