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

#include "ssd/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "ssd/algebra.hpp"
#include "ssd/error.hpp"

namespace ssd {
namespace {

std::string rows_text(const IndexPair& p) {
  return "(" + std::to_string(p.first + 1) + ", " +
         std::to_string(p.second + 1) + ")";
}

std::string value_list(const std::map<std::int64_t, ValueTally>& values) {
  std::string out = "{";
  bool first = true;
  for (const auto& [value, tally] : values) {
    if (!first) out += ", ";
    out += std::to_string(value);
    first = false;
  }
  return out + "}";
}

std::vector<ValueSummary> summarize(
    const std::map<std::int64_t, ValueTally>& values) {
  std::vector<ValueSummary> out;
  for (const auto& [value, tally] : values) out.push_back({value, tally.count});
  return out;
}

std::vector<Level> group_sum(std::span<const Level> a,
                             std::span<const Level> b, int q) {
  const Group group = Group::for_order(q);
  std::vector<Level> out;
  out.reserve(a.size() * b.size());
  for (Level x : a) {
    for (Level y : b) out.push_back(group.add(x, y));
  }
  return out;
}

}  // namespace

Certificate certify_efnod(const CoincidenceProfile& profile) {
  if (profile.lambda.empty()) return {true, "fewer than two runs"};
  const auto& [low, low_tally] = *profile.lambda.begin();
  const auto& [high, high_tally] = *profile.lambda.rbegin();
  const std::int64_t spread = high - low;
  if (spread <= 1) {
    return {true, "coincidence numbers " + value_list(profile.lambda) +
                      " span " + std::to_string(spread) + " <= 1"};
  }
  return {false, "coincidence numbers span " + std::to_string(high) + " - " +
                     std::to_string(low) + " = " + std::to_string(spread) +
                     " > 1; rows " + rows_text(low_tally.witness) +
                     " coincide in " + std::to_string(low) + " columns, rows " +
                     rows_text(high_tally.witness) + " in " +
                     std::to_string(high)};
}

Certificate certify_efnod(const DesignMatrix& design) {
  return certify_efnod(coincidence_profile(design));
}

std::vector<bool> attainable_sums(std::span<const int> levels) {
  std::int64_t total = 0;
  for (int q : levels) total += q;
  std::vector<bool> reach(static_cast<size_t>(total) + 1, false);
  reach[0] = true;
  std::int64_t upto = 0;
  for (int q : levels) {
    for (std::int64_t s = upto; s >= 0; --s) {
      if (reach[s]) reach[s + q] = true;
    }
    upto += q;
  }
  return reach;
}

Certificate certify_chisq(const CoincidenceProfile& profile,
                          std::span<const int> levels) {
  const std::string rule =
      " (two nearest values read as adjacent attainable subset sums of the "
      "level counts)";
  if (profile.omega.empty()) return {true, "fewer than two runs"};
  if (profile.omega.size() == 1) {
    return {true, "weighted coincidence number is constant at " +
                      std::to_string(profile.omega.begin()->first)};
  }
  const auto& [low, low_tally] = *profile.omega.begin();
  const auto& [high, high_tally] = *profile.omega.rbegin();
  if (profile.omega.size() > 2) {
    return {false, "weighted coincidence numbers take " +
                       std::to_string(profile.omega.size()) + " values " +
                       value_list(profile.omega) + "; rows " +
                       rows_text(low_tally.witness) + " have " +
                       std::to_string(low) + ", rows " +
                       rows_text(high_tally.witness) + " have " +
                       std::to_string(high) + rule};
  }
  const auto reach = attainable_sums(levels);
  for (std::int64_t s = low + 1; s < high; ++s) {
    if (s < static_cast<std::int64_t>(reach.size()) && reach[s]) {
      return {false, "weighted coincidence numbers " + std::to_string(low) +
                         " and " + std::to_string(high) + " are not adjacent: " +
                         std::to_string(s) + " is attainable between them; rows " +
                         rows_text(low_tally.witness) + " and " +
                         rows_text(high_tally.witness) + rule};
    }
  }
  return {true, "weighted coincidence numbers " + std::to_string(low) +
                    " and " + std::to_string(high) +
                    " are adjacent attainable values" + rule};
}

Certificate certify_chisq(const DesignMatrix& design) {
  return certify_chisq(coincidence_profile(design), design.level_vector());
}

BoundCheck check_nonorthogonality_bound(std::span<const Level> f1, int q1,
                                        std::span<const Level> f2, int q2,
                                        std::span<const Level> f3, int q3,
                                        std::span<const Level> f4, int q4,
                                        BoundMode mode) {
  if (f1.size() != f3.size() || f2.size() != f4.size()) {
    throw InvalidArgument(
        "bound check: first and third, second and fourth columns must have "
        "equal lengths");
  }
  const std::int64_t n1 = static_cast<std::int64_t>(f1.size());
  const std::int64_t n2 = static_cast<std::int64_t>(f2.size());
  const Rational f13 = f_nod_pair(f1, q1, f3, q3);
  const Rational f24 = f_nod_pair(f2, q2, f4, q4);
  BoundCheck check;
  switch (mode) {
    case BoundMode::kMixedBoth: {
      const auto h1 = mixed_combine(f1, q1, f2, q2);
      const auto h2 = mixed_combine(f3, q3, f4, q4);
      check.lhs = f_nod_pair(h1, q1 * q2, h2, q3 * q4);
      check.rhs = f13 * f24 + Rational(n2 * n2, q2 * q4) * f13 +
                  Rational(n1 * n1, q1 * q3) * f24;
      check.holds = check.lhs == check.rhs;
      check.equality_expected = true;
      break;
    }
    case BoundMode::kGroupSumBoth: {
      if (q1 != q2 || q3 != q4) {
        throw InvalidArgument("bound check: group sums need q1 = q2, q3 = q4");
      }
      const auto h1 = group_sum(f1, f2, q1);
      const auto h2 = group_sum(f3, f4, q3);
      check.lhs = f_nod_pair(h1, q1, h2, q3);
      check.rhs = Rational(q1 * q3) * f13 * f24 +
                  std::min(Rational(n2 * n2) * f13, Rational(n1 * n1) * f24);
      check.holds = check.lhs <= check.rhs;
      check.equality_expected = f13 == Rational(0) || f24 == Rational(0);
      break;
    }
    case BoundMode::kGroupSumMixed: {
      if (q1 != q2) throw InvalidArgument("bound check: group sum needs q1 = q2");
      const auto h1 = group_sum(f1, f2, q1);
      const auto h2 = mixed_combine(f3, q3, f4, q4);
      check.lhs = f_nod_pair(h1, q1, h2, q3 * q4);
      check.rhs = Rational(q1) * f13 * f24 +
                  std::min(Rational(n2 * n2, q4) * f13,
                           Rational(n1 * n1, q3) * f24);
      check.holds = check.lhs <= check.rhs;
      check.equality_expected = f13 == Rational(0) || f24 == Rational(0);
      break;
    }
  }
  check.equality = check.lhs == check.rhs;
  return check;
}

std::uint64_t design_hash(const DesignMatrix& design) {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&](std::int64_t value) {
    const auto v = static_cast<std::uint32_t>(value);
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ULL;
    }
  };
  feed(design.runs());
  feed(design.factors());
  for (int q : design.level_vector()) feed(q);
  for (Level v : design.entries().data()) feed(v);
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

OptimalityReport full_report(const DesignMatrix& design) {
  OptimalityReport report;
  report.shape = design.shape();
  report.runs = design.runs();
  report.factors = design.factors();
  report.levels = design.level_vector();
  report.hash = design_hash(design);
  const CoincidenceProfile profile = coincidence_profile(design);
  report.lambda_values = summarize(profile.lambda);
  report.omega_values = summarize(profile.omega);
  report.efnod_certificate = certify_efnod(profile);
  report.chisq_certificate = certify_chisq(profile, design.level_vector());
  report.aliased = aliased_pairs(design);
  if (design.factors() >= 2) {
    const Rational direct = fnod_total(design);
    if (direct != fnod_total_via_coincidence(design)) {
      throw InternalError("f_NOD sum differs between counting routes");
    }
    const std::int64_t m = design.factors();
    report.efnod = direct * Rational(2, m * (m - 1));
    report.chisq = chi_square(design);
    const auto [value, pair] = max_fnod(design);
    report.max_fnod = value;
    report.max_fnod_pair = pair;
  }
  return report;
}

std::string to_text(const OptimalityReport& report) {
  std::ostringstream os;
  auto values = [&](const std::vector<ValueSummary>& v) {
    for (size_t i = 0; i < v.size(); ++i) {
      os << (i ? " " : "") << v[i].value << "x" << v[i].count;
    }
    os << "\n";
  };
  os << "shape: " << report.shape << "\n";
  os << "runs: " << report.runs << "\n";
  os << "factors: " << report.factors << "\n";
  os << "levels:";
  for (int q : report.levels) os << " " << q;
  os << "\n";
  os << "hash: " << hash_hex(report.hash) << "\n";
  os << "efnod: " << report.efnod << "\n";
  os << "chisq: " << report.chisq << "\n";
  os << "lambda_values: ";
  values(report.lambda_values);
  os << "omega_values: ";
  values(report.omega_values);
  os << "efnod_certificate: "
     << (report.efnod_certificate.granted ? "granted" : "refused") << "; "
     << report.efnod_certificate.condition << "\n";
  os << "chisq_certificate: "
     << (report.chisq_certificate.granted ? "granted" : "refused") << "; "
     << report.chisq_certificate.condition << "\n";
  os << "aliased_pairs:";
  if (report.aliased.empty()) os << " none";
  for (const auto& p : report.aliased) os << " " << rows_text(p);
  os << "\n";
  os << "max_fnod: " << report.max_fnod << " at columns "
     << rows_text(report.max_fnod_pair) << "\n";
  return os.str();
}

std::string to_json(const OptimalityReport& report) {
  using nlohmann::ordered_json;
  auto values = [](const std::vector<ValueSummary>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : v) {
      arr.push_back({{"value", s.value}, {"count", s.count}});
    }
    return arr;
  };
  auto cert = [](const Certificate& c) {
    return ordered_json{{"granted", c.granted}, {"condition", c.condition}};
  };
  ordered_json pairs = ordered_json::array();
  for (const auto& p : report.aliased) {
    pairs.push_back({p.first + 1, p.second + 1});
  }
  ordered_json doc = {
      {"shape", report.shape},
      {"levels", report.levels},
      {"efnod", report.efnod.to_string()},
      {"chisq", report.chisq.to_string()},
      {"lambda_values", values(report.lambda_values)},
      {"omega_values", values(report.omega_values)},
      {"certificates",
       {{"efnod", cert(report.efnod_certificate)},
        {"chisq", cert(report.chisq_certificate)}}},
      {"aliased_pairs", pairs},
      {"hash", hash_hex(report.hash)},
  };
  return doc.dump(2) + "\n";
}

}  // namespace ssd
