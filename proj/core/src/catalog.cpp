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

#include "ssd/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "ssd/error.hpp"

namespace ssd {
namespace detail {
extern const std::string_view kCatalogJson;
}  // namespace detail

namespace {

using Json = nlohmann::ordered_json;

std::string table_tag(const std::string& table) {
  std::string out;
  for (char c : table) {
    if (c != '.') out += c;
  }
  return out;
}

std::string two_digits(int v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", v);
  return buf;
}

std::int64_t param(const std::vector<std::pair<std::string, std::string>>& p,
                   const std::string& key, int k) {
  for (const auto& [name, value] : p) {
    if (name == key) return eval_param(value, k);
  }
  throw InvalidArgument("catalog row lacks parameter '" + key + "'");
}

// Stable per-entry seed for the cross-aliasing retries.
std::uint64_t id_seed(std::string_view id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

EquidistantDesign permuted_zeroed(const DesignMatrix& d, std::mt19937_64& rng) {
  std::vector<int> order(d.runs());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin() + 1, order.end(), rng);
  DesignMatrix shuffled(d.entries().select_rows(order), d.level_vector());
  return EquidistantDesign(zero_first_row(shuffled));
}

std::string value_line(const std::vector<ValueSummary>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v.value) + "x" + std::to_string(v.count);
  }
  return out;
}

}  // namespace

std::int64_t eval_param(std::string_view text, int k) {
  if (text.empty()) throw InvalidArgument("empty catalog parameter");
  const bool scaled = text.back() == 'k';
  const std::string_view digits = scaled ? text.substr(0, text.size() - 1) : text;
  std::int64_t base = 1;
  if (!digits.empty()) {
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), base);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw InvalidArgument("bad catalog parameter '" + std::string(text) + "'");
    }
  } else if (!scaled) {
    throw InvalidArgument("bad catalog parameter '" + std::string(text) + "'");
  }
  return scaled ? base * k : base;
}

std::pair<int, std::map<int, int>> eval_shape(std::string_view text, int k) {
  static const std::regex whole(R"(F\((\d+),\s*(.*)\))");
  static const std::regex block(R"((\d+)\^\{?(\d*k?)\}?)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, whole)) {
    throw InvalidArgument("bad shape '" + s + "'");
  }
  const int runs = std::stoi(m[1].str());
  std::map<int, int> signature;
  const std::string rest = m[2].str();
  for (auto it = std::sregex_iterator(rest.begin(), rest.end(), block);
       it != std::sregex_iterator(); ++it) {
    const int q = std::stoi((*it)[1].str());
    signature[q] += static_cast<int>(eval_param((*it)[2].str(), k));
  }
  if (signature.empty()) throw InvalidArgument("bad shape '" + s + "'");
  return {runs, signature};
}

Catalog parse_catalog(std::string_view text) {
  Catalog out;
  try {
    const Json doc = Json::parse(text);
    if (doc.at("format").get<std::string>() != "ssd-catalog") {
      throw ParseError("not an ssd catalog", 0, 0);
    }
    out.version = doc.at("version").get<int>();
    for (const auto& e : doc.at("entries")) {
      CatalogRow row;
      row.table = e.at("table").get<std::string>();
      row.row = e.at("row").get<int>();
      row.method = parse_method(e.at("method").get<std::string>());
      row.criterion = e.at("criterion").get<std::string>();
      if (row.criterion != "efnod" && row.criterion != "chisq") {
        throw ParseError("unknown criterion '" + row.criterion + "'", 0, 0);
      }
      for (const auto& [key, value] : e.at("params").items()) {
        row.params.emplace_back(key, value.get<std::string>());
      }
      row.shape = e.at("shape").get<std::string>();
      row.value = e.at("value").get<std::string>();
      row.ks = e.at("k").get<std::vector<int>>();
      if (e.contains("erratum")) {
        const auto& er = e.at("erratum");
        if (er.contains("shape")) row.corrected_shape = er.at("shape").get<std::string>();
        row.skip = er.value("skip", false);
        row.note = er.value("note", "");
      }
      out.rows.push_back(std::move(row));
    }
    for (const auto& r : doc.at("references")) {
      out.references.push_back({r.at("runs").get<int>(),
                                r.at("factors").get<std::string>(),
                                r.at("levels").get<int>(),
                                r.at("k").get<std::vector<int>>(),
                                r.at("citation").get<std::string>()});
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("catalog: ") + e.what(), 0, 0);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("catalog: ") + e.what(), 0, 0);
  }
  return out;
}

std::string serialize_catalog(const Catalog& catalog) {
  Json doc;
  doc["format"] = "ssd-catalog";
  doc["version"] = catalog.version;
  Json tables = Json::array();
  Json entries = Json::array();
  for (const auto& row : catalog.rows) {
    const bool known = std::any_of(tables.begin(), tables.end(), [&](const Json& t) {
      return t["id"] == row.table;
    });
    if (!known) {
      tables.push_back({{"id", row.table},
                        {"method", method_tag(row.method)},
                        {"criterion", row.criterion},
                        {"value", row.criterion == "efnod" ? "lambda" : "omega"}});
    }
    Json e;
    e["table"] = row.table;
    e["row"] = row.row;
    e["method"] = method_tag(row.method);
    e["criterion"] = row.criterion;
    Json params = Json::object();
    for (const auto& [k, v] : row.params) params[k] = v;
    e["params"] = params;
    e["shape"] = row.shape;
    e["value"] = row.value;
    e["k"] = row.ks;
    if (row.corrected_shape || row.skip) {
      Json er = Json::object();
      if (row.corrected_shape) er["shape"] = *row.corrected_shape;
      if (row.skip) er["skip"] = true;
      er["note"] = row.note;
      e["erratum"] = er;
    }
    entries.push_back(std::move(e));
  }
  doc["tables"] = tables;
  doc["entries"] = entries;
  Json refs = Json::array();
  for (const auto& r : catalog.references) {
    refs.push_back({{"runs", r.runs},
                    {"factors", r.factors},
                    {"levels", r.levels},
                    {"k", r.ks},
                    {"citation", r.citation}});
  }
  doc["references"] = refs;
  return doc.dump(1) + "\n";
}

const Catalog& builtin_catalog() {
  static const Catalog catalog = parse_catalog(detail::kCatalogJson);
  return catalog;
}

std::optional<std::string> literature_reference(const DesignRequest& request) {
  for (const auto& ref : builtin_catalog().references) {
    if (ref.runs != request.runs || ref.levels != request.levels) continue;
    for (int k : ref.ks) {
      if (eval_param(ref.factors, k) == request.factors) return ref.citation;
    }
  }
  return std::nullopt;
}

std::vector<CatalogEntry> materialize(const Catalog& catalog) {
  std::vector<CatalogEntry> out;
  for (const auto& row : catalog.rows) {
    for (int k : row.ks) {
      CatalogEntry e;
      e.id = table_tag(row.table) + "-" + two_digits(row.row) + "-k" +
             std::to_string(k);
      e.table = row.table;
      e.row = row.row;
      e.k = k;
      e.method = row.method;
      e.criterion = row.criterion;
      e.printed_shape = row.shape;
      e.expected_shape = row.corrected_shape.value_or(row.shape);
      std::tie(e.runs, e.signature) = eval_shape(e.expected_shape, k);
      e.expected_value = eval_param(row.value, k);
      e.skip = row.skip;
      e.note = row.note;
      auto p = [&](const char* key) {
        return static_cast<int>(param(row.params, key, k));
      };
      const int n1 = p("n1"), q1 = p("q1"), n2 = p("n2"), q2 = p("q2");
      e.designs.push_back({n1, p("m1"), q1});
      e.designs.push_back({n2, p("m2"), q2});
      if (row.method == Method::kTwoLevelSizes) {
        e.matrices.push_back({p("r") * q1, n2, q1});
      } else if (row.method == Method::kThreeLevelSizes) {
        const int q3 = p("q3"), q4 = p("q4");
        e.designs.push_back({n1, p("m3"), q3});
        e.designs.push_back({n2, p("m4"), q4});
        e.matrices.push_back({p("r3") * q3, n2, q3});
        e.matrices.push_back({p("r4") * q4, n1, q4});
      } else {
        throw InvalidArgument("catalog rows use t3 or t5, not " +
                              method_tag(row.method));
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries,
                               std::string_view id) {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

Availability entry_availability(const CatalogEntry& entry,
                                const SourceLibrary& library) {
  Availability worst = Availability::kGenerated;
  for (const auto& d : entry.designs) worst = std::max(worst, library.availability(d));
  for (const auto& m : entry.matrices) worst = std::max(worst, library.availability(m));
  return worst;
}

std::string status_name(BuildStatus status) {
  switch (status) {
    case BuildStatus::kBuilt: return "built";
    case BuildStatus::kMismatch: return "mismatch";
    case BuildStatus::kMissing: return "missing";
    case BuildStatus::kUnresolved: return "unresolved";
    case BuildStatus::kSkipped: return "skipped";
  }
  return "missing";
}

BuildResult catalog_build(const CatalogEntry& entry, SourceLibrary& library,
                          const std::filesystem::path& out_dir) {
  BuildResult result;
  if (entry.skip) {
    result.status = BuildStatus::kSkipped;
    result.message = entry.note;
    return result;
  }

  std::vector<const EquidistantDesign*> f;
  std::vector<const DifferenceMatrix*> d;
  try {
    for (const auto& r : entry.designs) f.push_back(&library.design(r));
    for (const auto& r : entry.matrices) d.push_back(&library.difference_matrix(r));
  } catch (const MissingSource& e) {
    const bool searched = std::any_of(
        entry.designs.begin(), entry.designs.end(), [&](const DesignRequest& r) {
          return library.availability(r) == Availability::kSearchable &&
                 library.origin(r) == "unresolved";
        });
    result.status = searched ? BuildStatus::kUnresolved : BuildStatus::kMissing;
    result.message = e.what();
    return result;
  }

  CertifiedConstruction built;
  try {
    if (entry.method == Method::kTwoLevelSizes) {
      built = certify(construct_two_level_sizes(*f[0], *f[1], *d[0]));
    } else {
      EquidistantDesign f3(zero_first_row(f[2]->design()));
      EquidistantDesign f4(zero_first_row(f[3]->design()));
      std::mt19937_64 rng(id_seed(entry.id));
      for (int attempt = 0;
           cross_aliasing(f3.design(), f4.design(), *d[0], *d[1]); ++attempt) {
        if (attempt == 400) {
          result.status = BuildStatus::kUnresolved;
          result.message = "every tried row order of F3 and F4 leaves a "
                           "cross-block aliased pair: " +
                           *cross_aliasing(f3.design(), f4.design(), *d[0], *d[1]);
          return result;
        }
        if (attempt % 2 == 0) {
          f3 = permuted_zeroed(f[2]->design(), rng);
        } else {
          f4 = permuted_zeroed(f[3]->design(), rng);
        }
      }
      built = certify(construct_three_level_sizes(*f[0], *f[1], f3, f4, *d[0], *d[1]));
    }
  } catch (const InternalError& e) {
    result.status = BuildStatus::kMismatch;
    result.message = e.what();
    return result;
  }

  result.design = built.design;
  result.report = built.report;
  const OptimalityReport& report = built.report;
  const bool efnod = entry.criterion == "efnod";
  const auto& values = efnod ? report.lambda_values : report.omega_values;
  const Certificate& cert = efnod ? built.efnod : built.chisq;
  const std::string what = efnod ? "lambda" : "omega";

  std::vector<std::string> problems;
  if (built.design.runs() != entry.runs ||
      built.design.signature() != entry.signature) {
    problems.push_back("shape " + built.design.shape() + " but expected " +
                       format_shape(entry.runs, entry.signature));
  }
  if (values.size() != 1 || values.front().value != entry.expected_value) {
    problems.push_back(what + " values " + value_line(values) + " but expected " +
                       std::to_string(entry.expected_value));
  }
  if (!cert.granted) {
    problems.push_back((efnod ? "E(f_NOD)" : "chi-square") +
                       std::string(" certificate refused: ") + cert.condition);
  }
  if (!report.aliased.empty()) problems.push_back("fully aliased columns");

  if (problems.empty()) {
    result.status = BuildStatus::kBuilt;
    result.message = built.design.shape() + ", " + what + " " +
                     std::to_string(entry.expected_value);
  } else {
    result.status = BuildStatus::kMismatch;
    for (const auto& p : problems) {
      if (!result.message.empty()) result.message += "; ";
      result.message += p;
    }
  }

  if (!out_dir.empty()) {
    DesignFile file = to_file(built.design);
    file.set("catalog", entry.id);
    file.set("method", method_tag(entry.method));
    file.set(what, std::to_string(entry.expected_value));
    write_design_file(out_dir / (entry.id + ".design"), file);
    std::string text = to_text(report);
    text += "catalog_id: " + entry.id + "\n";
    text += "expected_shape: " + entry.expected_shape + "\n";
    text += "expected_" + what + ": " + std::to_string(entry.expected_value) + "\n";
    text += "construction_efnod: " + std::string(built.efnod.granted ? "granted" : "refused") +
            " (" + built.efnod.condition + ")\n";
    text += "construction_chisq: " + std::string(built.chisq.granted ? "granted" : "refused") +
            " (" + built.chisq.condition + ")\n";
    text += "status: " + status_name(result.status) + "\n";
    write_text_atomic(out_dir / (entry.id + ".report.txt"), text);
    write_text_atomic(out_dir / (entry.id + ".report.json"), to_json(report));
  }
  return result;
}

SweepResult build_all(const std::vector<CatalogEntry>& entries,
                      SourceLibrary& library,
                      const std::filesystem::path& out_dir) {
  SweepResult sweep;
  std::ostringstream summary;
  for (const auto& entry : entries) {
    BuildResult r;
    if (entry.skip) {
      r.status = BuildStatus::kSkipped;
      r.message = entry.note;
    } else {
      std::string external;
      for (const auto& d : entry.designs) {
        if (library.availability(d) == Availability::kExternal) {
          external += (external.empty() ? "" : ", ") + describe(d);
          if (auto ref = literature_reference(d)) external += " [" + *ref + "]";
        }
      }
      for (const auto& m : entry.matrices) {
        if (library.availability(m) == Availability::kExternal) {
          external += (external.empty() ? "" : ", ") + describe(m);
        }
      }
      if (!external.empty()) {
        r.status = BuildStatus::kMissing;
        r.message = "requires external source design: " + external;
      } else {
        r = catalog_build(entry, library, out_dir);
      }
    }
    ++sweep.counts[r.status];
    summary << entry.id << '\t' << status_name(r.status) << '\t'
            << entry.expected_shape << '\t' << r.message << '\n';
    r.design.reset();
    sweep.results.emplace_back(entry.id, std::move(r));
  }
  if (!out_dir.empty()) {
    summary << "# built " << sweep.counts[BuildStatus::kBuilt] << ", mismatch "
            << sweep.counts[BuildStatus::kMismatch] << ", missing "
            << sweep.counts[BuildStatus::kMissing] << ", unresolved "
            << sweep.counts[BuildStatus::kUnresolved] << ", skipped "
            << sweep.counts[BuildStatus::kSkipped] << '\n';
    write_text_atomic(out_dir / "summary.txt", summary.str());
  }
  return sweep;
}

}  // namespace ssd
