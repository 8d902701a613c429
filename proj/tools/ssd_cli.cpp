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

// Command-line front end. Exit codes: 0 success, 1 usage or bad input,
// 2 verification or expectation failure, 3 missing external source.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssd/catalog.hpp"
#include "ssd/constructors.hpp"
#include "ssd/criteria.hpp"
#include "ssd/design_io.hpp"
#include "ssd/embedded.hpp"
#include "ssd/error.hpp"
#include "ssd/generators.hpp"
#include "ssd/sources.hpp"
#include "ssd/verify.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kFailed = 2, kMissing = 3 };

struct Common {
  std::string out;
  std::string report;
  std::string format = "text";
  std::string sources;
  std::uint64_t seed = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ssd::InvalidArgument("bad " + what + " '" + s + "'");
}

fs::path sources_dir(const Common& c) {
  if (!c.sources.empty()) return c.sources;
  if (const char* env = std::getenv("SSD_SOURCES")) return env;
  return {};
}

ssd::SourceLibrary make_library(const Common& c, fs::path cache = {}) {
  ssd::SourceOptions opts;
  opts.directory = sources_dir(c);
  opts.cache_directory = std::move(cache);
  opts.seed = c.seed;
  ssd::SourceLibrary lib(std::move(opts));
  for (const auto& [path, why] : lib.rejected()) {
    std::cerr << "warning: ignored " << path.string() << ": " << why << '\n';
  }
  return lib;
}

ssd::IngestedSource load_file(const std::string& spec) {
  if (!fs::exists(spec)) {
    throw ssd::MissingSource("source file '" + spec + "' not found");
  }
  return ssd::ingest(fs::path(spec));
}

// Design specs: embedded name, oa:<q>:<t>, search:<n>:<m>:<q>, or a file.
ssd::DesignMatrix load_design(const std::string& spec, const Common& c) {
  if (ssd::is_embedded(spec)) return ssd::embedded_design(spec);
  const auto parts = split(spec, ':');
  if (parts.size() == 3 && parts[0] == "oa") {
    return ssd::rao_hamming_oa(to_int(parts[1], "q"), to_int(parts[2], "t"));
  }
  if ((parts.size() == 4 || parts.size() == 5) && parts[0] == "search") {
    const ssd::DesignRequest r{to_int(parts[1], "n"), to_int(parts[2], "m"),
                               to_int(parts[3], "q")};
    const auto lambda = ssd::equidistant_lambda(r.runs, r.factors, r.levels);
    if (!lambda || (parts.size() == 5 && to_int(parts[4], "lambda") != *lambda)) {
      throw ssd::InvalidArgument("no equidistant " + ssd::describe(r) +
                                 " can exist");
    }
    auto lib = make_library(c);
    return lib.design(r).design();
  }
  auto src = load_file(spec);
  if (!src.design) {
    throw ssd::InvalidArgument(spec + " holds a difference matrix, not a design");
  }
  return *src.design;
}

// Difference-matrix specs: embedded name, mult:<q>, nd:<rows>:<cols>:<q>, or
// a file holding either a difference matrix or an orthogonal array. With
// columns > 0 the result is normalized and cut to that many columns with
// distinct rows.
ssd::DifferenceMatrix load_dm(const std::string& spec, const Common& c,
                              int columns = 0) {
  std::optional<ssd::DifferenceMatrix> d;
  const auto parts = split(spec, ':');
  if (ssd::is_embedded(spec)) {
    d = ssd::embedded_difference_matrix(spec);
  } else if (parts.size() == 2 && parts[0] == "mult") {
    d = ssd::dm_multiplication_table(to_int(parts[1], "q"));
  } else if (parts.size() == 4 && parts[0] == "nd") {
    auto lib = make_library(c);
    d = lib.difference_matrix(
        {to_int(parts[1], "rows"), to_int(parts[2], "columns"), to_int(parts[3], "q")});
  } else {
    auto src = load_file(spec);
    if (src.difference_matrix) {
      d = std::move(src.difference_matrix);
    } else if (src.orthogonal_array) {
      d = ssd::dm_from_oa(*src.design);
    } else {
      throw ssd::VerificationError(spec +
                                   " is neither a difference matrix nor an "
                                   "orthogonal array");
    }
  }
  if (columns > 0 && (d->columns() != columns || !d->normalized() ||
                      !ssd::distinct_rows(*d))) {
    auto picked = ssd::select_distinct_columns(*d, columns);
    if (!picked) {
      throw ssd::VerificationError(
          spec + " yields no normalized " + std::to_string(columns) +
          "-column difference matrix with distinct rows");
    }
    d = std::move(picked);
  }
  return std::move(*d);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    ssd::write_text_atomic(path, text);
  }
}

std::string render(const ssd::OptimalityReport& r, const std::string& format) {
  if (format == "json") return ssd::to_json(r);
  return ssd::to_text(r);
}

void write_design(const std::string& path, const ssd::DesignFile& file) {
  emit(path, ssd::format_design_file(file));
}

// --- subcommands -------------------------------------------------------------

int run_oa(int q, int t, const Common& c) {
  const auto oa = ssd::rao_hamming_oa(q, t);
  auto file = ssd::to_file(oa);
  file.set("strength", "2");
  if (auto p = ssd::coincidence_profile(oa); p.lambda.size() == 1) {
    file.set("lambda", std::to_string(p.lambda.begin()->first));
  }
  write_design(c.out, file);
  return kOk;
}

int run_dm(const std::string& mode, const std::vector<std::string>& args,
           int q, int columns, const std::string& group, const Common& c) {
  std::optional<ssd::DifferenceMatrix> d;
  if (mode == "mult-table") {
    d = ssd::dm_multiplication_table(q);
  } else if (mode == "from-oa") {
    if (args.size() != 1) throw CLI::ValidationError("from-oa takes one array");
    const auto oa = load_design(args[0], c);
    d = group.empty() ? ssd::dm_from_oa(oa)
                      : ssd::dm_from_oa(oa, ssd::Group::parse(group));
  } else if (mode == "kronecker") {
    if (args.size() != 2) throw CLI::ValidationError("kronecker takes two matrices");
    d = ssd::dm_kronecker(load_dm(args[0], c), load_dm(args[1], c));
  } else if (mode == "normalize") {
    if (args.size() != 1) throw CLI::ValidationError("normalize takes one matrix");
    d = ssd::normalize_dm(load_dm(args[0], c));
  }
  if (columns > 0) {
    auto picked = ssd::select_distinct_columns(*d, columns);
    if (!picked) {
      throw ssd::VerificationError("no " + std::to_string(columns) +
                                   " columns with distinct rows");
    }
    d = std::move(picked);
  }
  write_design(c.out, ssd::to_file(*d));
  return kOk;
}

int run_search(int n, int m, int q, std::optional<int> lambda, bool allow_alias,
               std::uint64_t budget, const Common& c) {
  const auto implied = ssd::equidistant_lambda(n, m, q);
  if (!implied || (lambda && *lambda != *implied)) {
    std::cerr << "no equidistant F(" << n << ", " << q << "^" << m
              << ") exists with that lambda\n";
    return kFailed;
  }
  ssd::SearchOptions opts;
  opts.seed = ssd::request_seed(c.seed, {n, m, q});
  opts.forbid_aliasing = !allow_alias;
  opts.class_budget = budget;
  const auto found = ssd::search_equidistant(n, m, q, *implied, opts);
  if (!found) {
    std::cerr << "not found: F(" << n << ", " << q << "^" << m << ") lambda "
              << *implied << " (alias classes "
              << ssd::alias_class_count(n, q) << ", budget " << budget << ")\n";
    return kFailed;
  }
  auto file = ssd::to_file(found->design());
  file.set("lambda", std::to_string(found->lambda()));
  file.set("origin", "search");
  file.set("seed", std::to_string(opts.seed));
  write_design(c.out, file);
  return kOk;
}

int finish_construction(ssd::CertifiedConstruction built, const Common& c) {
  auto file = ssd::to_file(built.design);
  file.set("method", ssd::method_tag(built.plan.method));
  write_design(c.out.empty() ? "-" : c.out, file);
  std::string report = render(built.report, c.format);
  if (c.format != "json") {
    report += "construction_efnod: " +
              std::string(built.efnod.granted ? "granted" : "refused") + " (" +
              built.efnod.condition + ")\n";
    report += "construction_chisq: " +
              std::string(built.chisq.granted ? "granted" : "refused") + " (" +
              built.chisq.condition + ")\n";
  }
  if (!c.report.empty()) {
    emit(c.report, report);
  } else if (!c.out.empty()) {
    std::cout << report;
  }
  return kOk;
}

struct ConstructArgs {
  std::string f, d, f1, f2, f3, f4, d3, d4;
};

int run_construct(const std::string& method, const ConstructArgs& a,
                  const Common& c) {
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw CLI::ValidationError(std::string("missing ") + flag);
    return v;
  };
  auto eq = [&](const std::string& spec) {
    return ssd::EquidistantDesign(load_design(spec, c));
  };
  const ssd::Method m = ssd::parse_method(method);
  switch (m) {
    case ssd::Method::kSymmetricSum:
    case ssd::Method::kSaturatedSum: {
      auto f = eq(need(a.f, "--f"));
      auto d = load_dm(need(a.d, "--d"), c);
      return finish_construction(ssd::certify(ssd::construct_symmetric(f, d)), c);
    }
    case ssd::Method::kTwoLevelSizes: {
      auto f1 = eq(need(a.f1, "--f1"));
      auto f2 = eq(need(a.f2, "--f2"));
      auto d = load_dm(need(a.d, "--d"), c, f2.runs());
      return finish_construction(
          ssd::certify(ssd::construct_two_level_sizes(f1, f2, d)), c);
    }
    case ssd::Method::kProduct: {
      auto f1 = eq(need(a.f1, "--f1"));
      auto f2 = eq(need(a.f2, "--f2"));
      return finish_construction(ssd::certify(ssd::construct_product(f1, f2)), c);
    }
    case ssd::Method::kThreeLevelSizes: {
      auto f1 = eq(need(a.f1, "--f1"));
      auto f2 = eq(need(a.f2, "--f2"));
      auto f3 = eq(need(a.f3, "--f3"));
      auto f4 = eq(need(a.f4, "--f4"));
      auto d3 = load_dm(need(a.d3, "--d3"), c, f2.runs());
      auto d4 = load_dm(need(a.d4, "--d4"), c, f1.runs());
      return finish_construction(
          ssd::certify(ssd::construct_three_level_sizes(f1, f2, f3, f4, d3, d4)), c);
    }
  }
  return kUsage;
}

int run_verify(const std::string& path, const Common& c) {
  const auto src = load_file(path);
  if (!src.design) {
    std::cout << "difference matrix " << src.difference_matrix->rows() << "x"
              << src.difference_matrix->columns() << " over "
              << src.difference_matrix->group().name() << ": verified\n";
    return kOk;
  }
  emit(c.report.empty() ? "-" : c.report,
       render(ssd::full_report(*src.design), c.format));
  return kOk;
}

int run_fnod(const std::string& path, int i, int j) {
  const auto src = load_file(path);
  if (!src.design) throw ssd::InvalidArgument(path + " is not a design");
  const auto& d = *src.design;
  if (i < 1 || j < 1 || i > d.factors() || j > d.factors()) {
    throw ssd::InvalidArgument("columns are numbered 1.." +
                               std::to_string(d.factors()));
  }
  const auto pair = ssd::pair_nonorthogonality(d, i - 1, j - 1);
  std::cout << "columns: " << i << " " << j << "\n";
  std::cout << "levels: " << d.levels(i - 1) << " " << d.levels(j - 1) << "\n";
  std::cout << "table:\n";
  for (int a = 0; a < pair.table.rows(); ++a) {
    std::cout << " ";
    for (int b = 0; b < pair.table.cols(); ++b) std::cout << " " << pair.table(a, b);
    std::cout << "\n";
  }
  std::cout << "fnod: " << pair.fnod << "\n";
  std::cout << "fully_aliased: "
            << (ssd::fully_aliased(d.column(i - 1), d.levels(i - 1),
                                   d.column(j - 1), d.levels(j - 1))
                    ? "yes"
                    : "no")
            << "\n";
  return kOk;
}

int run_catalog_list(const Common& c) {
  auto lib = make_library(c);
  for (const auto& e : ssd::materialize(ssd::builtin_catalog())) {
    std::cout << e.id << '\t' << e.expected_shape << '\t'
              << (e.criterion == "efnod" ? "lambda " : "omega ")
              << e.expected_value << '\t'
              << (e.skip ? std::string("skipped")
                         : ssd::availability_name(ssd::entry_availability(e, lib)))
              << '\n';
  }
  return kOk;
}

int run_catalog_build(const std::string& id, const Common& c) {
  const auto entries = ssd::materialize(ssd::builtin_catalog());
  const auto* entry = ssd::find_entry(entries, id);
  if (!entry) throw ssd::InvalidArgument("unknown catalog id '" + id + "'");
  const fs::path out = c.out.empty() ? fs::path("catalog-out") : fs::path(c.out);
  auto lib = make_library(c, out / "sources");
  const auto result = ssd::catalog_build(*entry, lib, out);
  std::cout << id << ": " << ssd::status_name(result.status) << ": "
            << result.message << '\n';
  switch (result.status) {
    case ssd::BuildStatus::kBuilt: return kOk;
    case ssd::BuildStatus::kMissing:
    case ssd::BuildStatus::kUnresolved: return kMissing;
    default: return kFailed;
  }
}

int run_catalog_build_all(const Common& c) {
  const auto entries = ssd::materialize(ssd::builtin_catalog());
  const fs::path out = c.out.empty() ? fs::path("catalog-out") : fs::path(c.out);
  auto lib = make_library(c, out / "sources");
  const auto sweep = ssd::build_all(entries, lib, out);
  for (const auto& [id, r] : sweep.results) {
    if (r.status == ssd::BuildStatus::kMissing) continue;
    std::cout << id << ": " << ssd::status_name(r.status) << ": " << r.message
              << '\n';
  }
  auto count = [&](ssd::BuildStatus s) {
    auto it = sweep.counts.find(s);
    return it == sweep.counts.end() ? 0 : it->second;
  };
  std::cout << "built " << count(ssd::BuildStatus::kBuilt) << ", mismatch "
            << count(ssd::BuildStatus::kMismatch) << ", missing "
            << count(ssd::BuildStatus::kMissing) << ", unresolved "
            << count(ssd::BuildStatus::kUnresolved) << ", skipped "
            << count(ssd::BuildStatus::kSkipped) << '\n';
  return count(ssd::BuildStatus::kMismatch) + count(ssd::BuildStatus::kUnresolved)
             ? kFailed
             : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and certify optimal mixed-level supersaturated designs"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "Output file or directory");
    sub->add_option("--report", c.report, "Report output file");
    sub->add_option("--format", c.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--sources", c.sources,
                    "Ingestion directory for external designs (default $SSD_SOURCES)");
    sub->add_option("--seed", c.seed, "Search seed");
  };

  int q = 0, t = 0;
  auto* oa = app.add_subcommand("oa", "Rao-Hamming orthogonal array L_{q^t}");
  oa->add_option("--q", q, "Prime power level count")->required();
  oa->add_option("--t", t, "Exponent, at least 2")->required();
  add_common(oa);

  std::string dm_mode, group;
  std::vector<std::string> dm_args;
  int columns = 0;
  auto* dm = app.add_subcommand("dm", "Difference matrices");
  dm->add_option("mode", dm_mode, "from-oa | mult-table | kronecker | normalize")
      ->required()
      ->check(CLI::IsMember({"from-oa", "mult-table", "kronecker", "normalize"}));
  dm->add_option("inputs", dm_args, "Source specs");
  dm->add_option("--q", q, "Field order for mult-table");
  dm->add_option("--group", group, "Group for from-oa, e.g. Z3 or GF(4)");
  dm->add_option("--columns", columns,
                 "Normalize and keep this many columns with distinct rows");
  add_common(dm);

  int n = 0, m = 0;
  std::optional<int> lambda;
  bool allow_alias = false;
  std::uint64_t budget = ssd::SearchOptions{}.class_budget;
  auto* search = app.add_subcommand("search", "Search for an equidistant design");
  search->add_option("--n", n, "Runs")->required();
  search->add_option("--m", m, "Factors")->required();
  search->add_option("--q", q, "Levels")->required();
  search->add_option("--lambda", lambda, "Coincidence number (implied if absent)");
  search->add_flag("--allow-aliasing", allow_alias, "Permit aliased columns");
  search->add_option("--budget", budget, "Alias-class budget");
  add_common(search);

  std::string method;
  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build an SSD from sources");
  construct->add_option("method", method, "t2 | c1 | t3 | t4 | t5")
      ->required()
      ->check(CLI::IsMember({"t2", "c1", "t3", "t4", "t5"}));
  construct->add_option("--f", ca.f, "Equidistant source (t2, c1)");
  construct->add_option("--d", ca.d, "Difference matrix (t2, c1, t3)");
  construct->add_option("--f1", ca.f1, "First source (t3, t4, t5)");
  construct->add_option("--f2", ca.f2, "Second source (t3, t4, t5)");
  construct->add_option("--f3", ca.f3, "Third source (t5)");
  construct->add_option("--f4", ca.f4, "Fourth source (t5)");
  construct->add_option("--d3", ca.d3, "Difference matrix for F3 (t5)");
  construct->add_option("--d4", ca.d4, "Difference matrix for F4 (t5)");
  add_common(construct);

  std::string path;
  auto* verify = app.add_subcommand("verify", "Print the optimality report");
  verify->add_option("file", path, "Design file")->required();
  add_common(verify);

  std::string action, id;
  auto* catalog = app.add_subcommand("catalog", "Tabulated constructions");
  catalog->add_option("action", action, "list | build | build-all")
      ->required()
      ->check(CLI::IsMember({"list", "build", "build-all"}));
  catalog->add_option("id", id, "Entry id for build, e.g. B2-01-k1");
  add_common(catalog);

  int ci = 0, cj = 0;
  auto* fnod = app.add_subcommand("fnod", "Nonorthogonality of one column pair");
  fnod->add_option("file", path, "Design file")->required();
  fnod->add_option("i", ci, "First column, 1-based")->required();
  fnod->add_option("j", cj, "Second column, 1-based")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*oa) return run_oa(q, t, c);
    if (*dm) return run_dm(dm_mode, dm_args, q, columns, group, c);
    if (*search) return run_search(n, m, q, lambda, allow_alias, budget, c);
    if (*construct) return run_construct(method, ca, c);
    if (*verify) return run_verify(path, c);
    if (*fnod) return run_fnod(path, ci, cj);
    if (*catalog) {
      if (action == "list") return run_catalog_list(c);
      if (action == "build-all") return run_catalog_build_all(c);
      if (id.empty()) throw CLI::ValidationError("catalog build needs an id");
      return run_catalog_build(id, c);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ssd::MissingSource& e) {
    std::cerr << "missing source: " << e.what() << '\n';
    return kMissing;
  } catch (const ssd::VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kFailed;
  } catch (const ssd::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kFailed;
  } catch (const ssd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
