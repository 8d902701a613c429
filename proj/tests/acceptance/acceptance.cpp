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

// End-to-end acceptance checks. Prints one PASS or FAIL line per criterion
// and exits nonzero if any criterion fails. Time limits are wall clock.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ssd/criteria.hpp"
#include "ssd/design_io.hpp"
#include "ssd/embedded.hpp"
#include "ssd/error.hpp"
#include "ssd/generators.hpp"
#include "ssd/verify.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using Counts = std::map<std::int64_t, std::int64_t>;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(SSD_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Counts lambda_counts(const ssd::DesignMatrix& d) {
  Counts out;
  for (const auto& [v, t] : ssd::coincidence_profile(d).lambda) out[v] = t.count;
  return out;
}

Counts omega_counts(const ssd::DesignMatrix& d) {
  Counts out;
  for (const auto& [v, t] : ssd::coincidence_profile(d).omega) out[v] = t.count;
  return out;
}

ssd::DesignMatrix load(const fs::path& p) {
  auto s = ssd::ingest(p);
  if (!s.design) throw ssd::InvalidArgument(p.string() + " holds no design");
  return *s.design;
}

const fs::path kWork = fs::temp_directory_path() / "ssd-acceptance";
const std::string kSources = std::string(SSD_TEST_DATA) + "/sources/";

Outcome eighteen_runs() {
  Outcome o;
  const fs::path out = kWork / "c1.design";
  const Run r = cli("construct t2 --f table1_f --d table1_d --out " + out.string());
  o.require(r.code == 0, "exit " + std::to_string(r.code));
  if (r.code != 0) return o;
  const ssd::DesignMatrix d = load(out);
  o.require(d == ssd::embedded_design("table3"), "array differs from the printed one");
  o.require(lambda_counts(d) == Counts{{3, 72}, {4, 81}}, "lambda counts");
  o.require(has(r.out, "construction_efnod: granted"), "E(f_NOD) certificate");
  o.require(has(r.out, "construction_chisq: granted"), "chi-square certificate");
  o.require(ssd::aliased_pairs(d).empty(), "aliased pairs");
  return o;
}

Outcome twenty_four_runs() {
  Outcome o;
  const fs::path out = kWork / "c2.design";
  const Run r = cli("construct t3 --f1 table4_f1 --f2 table4_f2 --d table4_d --out " +
                    out.string());
  o.require(r.code == 0, "exit " + std::to_string(r.code));
  if (r.code != 0) return o;
  const ssd::DesignMatrix d = load(out);
  o.require(d == ssd::embedded_design("table5"), "array differs from the printed one");
  o.require(lambda_counts(d) == Counts{{13, 276}}, "lambda not constant 13");
  o.require(has(r.out, "construction_efnod: granted"), "E(f_NOD) certificate");
  return o;
}

Outcome weighted_constant() {
  Outcome o;
  const auto f = ssd::search_equidistant(6, 10, 3, 2);
  o.require(f && f->lambda() == 2 && ssd::aliased_pairs(f->design()).empty(),
            "search for F(6, 3^10) with lambda 2");
  const fs::path out = kWork / "c3.design";
  const Run r = cli("construct t3 --f1 oa:2:2 --f2 search:6:10:3 --d " + kSources +
                    "L24.design --seed 7 --out " + out.string());
  o.require(r.code == 0, "exit " + std::to_string(r.code));
  if (r.code != 0) return o;
  const ssd::DesignMatrix d = load(out);
  o.require(d.shape() == "F(24, 2^72 3^10)", "shape " + d.shape());
  o.require(omega_counts(d) == Counts{{78, 276}}, "omega not constant 78");
  o.require(has(r.out, "construction_chisq: granted"), "chi-square certificate");
  return o;
}

Outcome three_level_sizes() {
  Outcome o;
  const fs::path a = kWork / "c4a.design";
  const Run ra = cli("construct t5 --f1 oa:2:2 --f3 oa:2:2 --f2 search:6:10:2 "
                     "--f4 table4_f2 --d3 " + kSources + "L12.design --d4 " +
                     kSources + "ND12-4-3.design --seed 7 --out " + a.string());
  o.require(ra.code == 0, "first example exit " + std::to_string(ra.code));
  if (ra.code == 0) {
    const ssd::DesignMatrix d = load(a);
    o.require(d.signature() == std::map<int, int>{{4, 30}, {2, 36}, {3, 60}},
              "first example shape " + d.shape());
    o.require(lambda_counts(d) == Counts{{42, 276}}, "lambda not constant 42");
    o.require(has(ra.out, "construction_efnod: granted"), "E(f_NOD) certificate");
    o.require(ssd::aliased_pairs(d).empty(), "aliased pairs in first example");
  }
  const fs::path b = kWork / "c4b.design";
  const Run rb = cli("construct t5 --f1 oa:2:2 --f3 oa:2:2 --f2 table4_f2 "
                     "--f4 table4_f2 --d3 " + kSources + "L24.design --d4 " +
                     kSources + "ND6-4-3.design --seed 7 --out " + b.string());
  o.require(rb.code == 0, "second example exit " + std::to_string(rb.code));
  if (rb.code == 0) {
    const ssd::DesignMatrix d = load(b);
    o.require(d.signature() == std::map<int, int>{{6, 15}, {2, 72}, {3, 30}},
              "second example shape " + d.shape());
    o.require(omega_counts(d) == Counts{{108, 276}}, "omega not constant 108");
    o.require(has(rb.out, "construction_chisq: granted"), "chi-square certificate");
    o.require(ssd::aliased_pairs(d).empty(), "aliased pairs in second example");
  }
  const fs::path absent = kWork / "absent";
  const Run rc = cli("construct t5 --f1 oa:2:2 --f3 oa:2:2 --f2 search:6:10:2 "
                     "--f4 table4_f2 --d3 " + (absent / "L12.design").string() +
                     " --d4 " + (absent / "ND12-4-3.design").string());
  o.require(rc.code == 3, "absent files exit " + std::to_string(rc.code));
  return o;
}

std::map<std::string, std::string> summary(const fs::path& dir) {
  std::map<std::string, std::string> out;
  std::istringstream in(slurp(dir / "summary.txt"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    const auto tab2 = line.find('\t', tab + 1);
    out[line.substr(0, tab)] = line.substr(tab + 1, tab2 - tab - 1);
  }
  return out;
}

Outcome catalog_sweep() {
  Outcome o;
  const fs::path out = kWork / "sweep1";
  const Run r = cli("catalog build-all --seed 7 --out " + out.string());
  o.require(r.code == 0, "exit " + std::to_string(r.code));
  int built = 0, bad = 0;
  for (const auto& [id, status] : summary(out)) {
    built += status == "built";
    bad += status == "mismatch" || status == "unresolved";
  }
  o.require(built >= 10, std::to_string(built) + " entries built");
  o.require(bad == 0, std::to_string(bad) + " mismatched or unresolved");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(built) +
              " built without ingested files";

  // The first tabulated row for every k, with ingested difference matrices.
  const fs::path with = kWork / "sweep-first-row";
  for (int k = 1; k <= 3; ++k) {
    const std::string id = "B2-01-k" + std::to_string(k);
    const Run b = cli("catalog build " + id + " --seed 7 --sources " + kSources +
                      " --out " + with.string());
    o.require(b.code == 0, id + " exit " + std::to_string(b.code));
    const std::string report = slurp(with / (id + ".report.txt"));
    o.require(has(report, "lambda_values: " + std::to_string(13 * k) + "x276"),
              id + " lambda");
  }
  return o;
}

Outcome property_suites() {
  Outcome o;
  const std::string cmd = std::string(SSD_PROPERTY_TEST) + " --gtest_brief=1 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while (pipe && (got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), got);
  }
  const int status = pipe ? pclose(pipe) : -1;
  o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0,
            "property suite failed: " + out.substr(0, 400));
  return o;
}

Outcome determinism() {
  Outcome o;
  const fs::path a = kWork / "sweep1";
  const fs::path b = kWork / "sweep2";
  const Run r = cli("catalog build-all --seed 7 --out " + b.string());
  o.require(r.code == 0, "exit " + std::to_string(r.code));
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), a));
  }
  std::size_t other = 0;
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    other += e.is_regular_file();
  }
  o.require(other == files.size(), "file counts differ");
  int differing = 0;
  for (const auto& f : files) differing += slurp(a / f) != slurp(b / f);
  o.require(differing == 0, std::to_string(differing) + " files differ");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(files.size()) +
              " files compared";
  return o;
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;  // 0 means no limit
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  fs::remove_all(kWork);
  fs::create_directories(kWork);
  const std::vector<Criterion> criteria{
      {1, "eighteen-run reproduction", 1.0, eighteen_runs},
      {2, "twenty-four-run reproduction", 1.0, twenty_four_runs},
      {3, "constant weighted coincidence", 30.0, weighted_constant},
      {4, "three-level-size examples", 0.0, three_level_sizes},
      {5, "catalog sweep", 300.0, catalog_sweep},
      {6, "property suites", 0.0, property_suites},
      {7, "determinism", 300.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.require(false, "took longer than the limit");
    }
    failures += !o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << c.number << " (" << c.name << "): "
         << (o.pass ? "PASS" : "FAIL") << " in " << secs << " s";
    if (c.limit_seconds > 0) line << " (limit " << c.limit_seconds << " s)";
    if (!o.detail.empty()) line << " - " << o.detail;
    std::cout << line.str() << std::endl;
  }
  fs::remove_all(kWork);
  return failures == 0 ? 0 : 1;
}
