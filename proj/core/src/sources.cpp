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

#include "ssd/sources.hpp"

#include <algorithm>

#include "ssd/algebra.hpp"
#include "ssd/catalog.hpp"
#include "ssd/criteria.hpp"
#include "ssd/embedded.hpp"
#include "ssd/error.hpp"

namespace ssd {
namespace {

// Rao-Hamming parameters: n = q^t, m = (n - 1) / (q - 1).
std::optional<int> rao_hamming_degree(const DesignRequest& r) {
  if (!prime_power(r.levels)) return std::nullopt;
  int t = 0;
  long long n = 1;
  while (n < r.runs) {
    n *= r.levels;
    ++t;
  }
  if (n != r.runs || t < 2) return std::nullopt;
  if (r.factors != (r.runs - 1) / (r.levels - 1)) return std::nullopt;
  return t;
}

std::optional<std::string> embedded_design_name(const DesignRequest& r) {
  if (r.runs == 6 && r.factors == 5 && r.levels == 3) return "T4_F2";
  return std::nullopt;
}

std::optional<std::string> embedded_matrix_name(const MatrixRequest& r) {
  if (r.rows == 3 && r.columns == 2 && r.levels == 3) return "T1_D";
  if (r.rows == 8 && r.columns == 6 && r.levels == 2) return "T4_Dt";
  return std::nullopt;
}

bool matches(const DesignMatrix& d, const DesignRequest& r) {
  return d.runs() == r.runs && d.factors() == r.factors && d.is_symmetric() &&
         d.common_levels() == r.levels;
}

std::string cache_name(const DesignRequest& r) {
  return "F" + std::to_string(r.runs) + "-" + std::to_string(r.levels) + "x" +
         std::to_string(r.factors) + ".design";
}

}  // namespace

std::string availability_name(Availability a) {
  switch (a) {
    case Availability::kGenerated: return "generated";
    case Availability::kEmbedded: return "embedded";
    case Availability::kIngested: return "ingested";
    case Availability::kSearchable: return "searchable";
    case Availability::kExternal: return "external";
  }
  return "external";
}

std::string describe(const DesignRequest& r) {
  std::string out = format_shape(r.runs, {{r.levels, r.factors}});
  if (auto lambda = equidistant_lambda(r.runs, r.factors, r.levels)) {
    out += " with lambda " + std::to_string(*lambda);
  }
  return out;
}

std::string describe(const MatrixRequest& r) {
  return "ND(" + std::to_string(r.rows) + ", " + std::to_string(r.columns) +
         ", " + std::to_string(r.levels) + ")";
}

std::uint64_t request_seed(std::uint64_t seed, const DesignRequest& r) {
  // splitmix64 finalizer over the seed and the packed request.
  std::uint64_t z = seed ^ (static_cast<std::uint64_t>(r.runs) << 40) ^
                    (static_cast<std::uint64_t>(r.factors) << 16) ^
                    static_cast<std::uint64_t>(r.levels);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SourceLibrary::SourceLibrary(SourceOptions options)
    : options_(std::move(options)) {
  load_directory();
}

void SourceLibrary::load_directory() {
  namespace fs = std::filesystem;
  const fs::path& dir = options_.directory;
  if (dir.empty()) return;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    rejected_.emplace_back(dir, "not a directory");
    return;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (e.is_regular_file() && e.path().extension() == ".design") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      ingested_.push_back(ingest(f));
    } catch (const Error& e) {
      rejected_.emplace_back(f, e.what());
    }
  }
}

bool SourceLibrary::searchable(const DesignRequest& r) const {
  if (!equidistant_lambda(r.runs, r.factors, r.levels)) return false;
  const std::uint64_t classes = alias_class_count(r.runs, r.levels);
  if (classes > options_.search.class_budget) return false;
  return !options_.search.forbid_aliasing ||
         classes >= static_cast<std::uint64_t>(r.factors);
}

Availability SourceLibrary::availability(const DesignRequest& r) const {
  if (auto it = designs_.find(r); it != designs_.end()) {
    const std::string& o = it->second.origin;
    if (o == "generated") return Availability::kGenerated;
    if (o.starts_with("embedded")) return Availability::kEmbedded;
    if (o.starts_with("search")) return Availability::kSearchable;
    return Availability::kIngested;
  }
  if (rao_hamming_degree(r)) return Availability::kGenerated;
  if (embedded_design_name(r)) return Availability::kEmbedded;
  for (const auto& src : ingested_) {
    if (src.design && src.lambda && matches(*src.design, r)) {
      return Availability::kIngested;
    }
  }
  if (searchable(r)) return Availability::kSearchable;
  return Availability::kExternal;
}

Availability SourceLibrary::availability(const MatrixRequest& r) const {
  if (auto it = matrix_probe_.find(r); it != matrix_probe_.end()) return it->second;
  Availability a = Availability::kExternal;
  std::string ignored;
  if (embedded_matrix_name(r)) {
    a = Availability::kEmbedded;
  } else if (generate_nd(r.rows, r.columns, r.levels)) {
    a = Availability::kGenerated;
  } else if (from_ingested(r, &ignored)) {
    a = Availability::kIngested;
  }
  matrix_probe_.emplace(r, a);
  return a;
}

const EquidistantDesign& SourceLibrary::design(const DesignRequest& r) {
  if (auto it = designs_.find(r); it != designs_.end()) return it->second.design;
  auto store = [&](EquidistantDesign d, std::string origin) -> const EquidistantDesign& {
    return designs_.emplace(r, Resolved{std::move(d), std::move(origin)})
        .first->second.design;
  };

  if (auto t = rao_hamming_degree(r)) {
    return store(EquidistantDesign(rao_hamming_oa(r.levels, *t)), "generated");
  }
  if (auto name = embedded_design_name(r)) {
    return store(EquidistantDesign(embedded_design(*name)), "embedded " + *name);
  }
  for (const auto& src : ingested_) {
    if (!src.design || !src.lambda || !matches(*src.design, r)) continue;
    if (!aliased_pairs(*src.design).empty()) {
      rejected_.emplace_back(src.path, "fully aliased columns");
      continue;
    }
    return store(EquidistantDesign(*src.design), src.path.string());
  }
  if (searchable(r)) {
    if (auto found = search(r)) {
      return store(std::move(*found),
                   "search seed " + std::to_string(request_seed(options_.seed, r)));
    }
    throw MissingSource("search found no " + describe(r) + " within budget" +
                        [&] {
                          auto ref = literature_reference(r);
                          return ref ? "; known construction: " + *ref : std::string();
                        }());
  }
  std::string message = "no source for " + describe(r);
  if (auto ref = literature_reference(r)) message += "; known construction: " + *ref;
  message += "; supply it as a .design file in the sources directory "
             "(--sources or SSD_SOURCES)";
  throw MissingSource(message);
}

std::optional<EquidistantDesign> SourceLibrary::search(const DesignRequest& r) {
  namespace fs = std::filesystem;
  const auto lambda = equidistant_lambda(r.runs, r.factors, r.levels);
  if (!lambda) return std::nullopt;
  const std::uint64_t seed = request_seed(options_.seed, r);
  const fs::path cached = options_.cache_directory.empty()
                              ? fs::path()
                              : options_.cache_directory / cache_name(r);
  if (!cached.empty() && fs::exists(cached)) {
    try {
      IngestedSource src = ingest(cached);
      if (src.design && src.file.get("seed") == std::to_string(seed) &&
          matches(*src.design, r)) {
        return EquidistantDesign(*src.design);
      }
    } catch (const Error&) {
      // Stale or damaged cache entry: search again and overwrite it.
    }
  }
  SearchOptions opts = options_.search;
  opts.seed = seed;
  auto found = search_equidistant(r.runs, r.factors, r.levels, *lambda, opts);
  if (found && !cached.empty()) {
    DesignFile file = to_file(found->design());
    file.set("lambda", std::to_string(found->lambda()));
    file.set("origin", "search");
    file.set("seed", std::to_string(seed));
    write_design_file(cached, file);
  }
  return found;
}

std::optional<DifferenceMatrix> SourceLibrary::from_ingested(
    const MatrixRequest& r, std::string* origin) const {
  for (const auto& src : ingested_) {
    std::optional<DifferenceMatrix> base;
    if (src.difference_matrix && src.difference_matrix->order() == r.levels &&
        src.difference_matrix->rows() == r.rows) {
      base = src.difference_matrix;
    } else if (src.design && src.orthogonal_array &&
               src.design->runs() == r.rows && src.design->is_symmetric() &&
               src.design->common_levels() == r.levels) {
      // [0 | A] is a difference matrix whenever every column difference of
      // the array is uniform, which holds for all two-level arrays.
      const IntMatrix zero(r.rows, 1, 0);
      try {
        base.emplace(hconcat(zero, src.design->entries()),
                     Group::for_order(r.levels));
      } catch (const VerificationError&) {
        continue;
      }
    }
    if (!base || base->columns() < r.columns) continue;
    if (auto picked = select_distinct_columns(*base, r.columns)) {
      *origin = src.path.string();
      return picked;
    }
  }
  return std::nullopt;
}

const DifferenceMatrix& SourceLibrary::difference_matrix(const MatrixRequest& r) {
  if (auto it = matrices_.find(r); it != matrices_.end()) return it->second.matrix;
  auto store = [&](DifferenceMatrix d, std::string origin) -> const DifferenceMatrix& {
    return matrices_.emplace(r, ResolvedMatrix{std::move(d), std::move(origin)})
        .first->second.matrix;
  };
  if (auto name = embedded_matrix_name(r)) {
    return store(embedded_difference_matrix(*name), "embedded " + *name);
  }
  if (auto d = generate_nd(r.rows, r.columns, r.levels)) {
    return store(std::move(*d), "generated");
  }
  std::string origin;
  if (auto d = from_ingested(r, &origin)) return store(std::move(*d), origin);
  std::string message = "no source for " + describe(r) + " with distinct rows";
  if (r.levels == 2 || prime_power(r.levels)) {
    message += "; an orthogonal array L" + std::to_string(r.rows) + "(" +
               std::to_string(r.levels) + "^c) with c >= " +
               std::to_string(r.columns - 1) + " or a difference matrix file";
  } else {
    message += "; a difference matrix file";
  }
  message += " in the sources directory (--sources or SSD_SOURCES) provides it";
  throw MissingSource(message);
}

std::string SourceLibrary::origin(const DesignRequest& r) const {
  auto it = designs_.find(r);
  return it == designs_.end() ? std::string("unresolved") : it->second.origin;
}

std::string SourceLibrary::origin(const MatrixRequest& r) const {
  auto it = matrices_.find(r);
  return it == matrices_.end() ? std::string("unresolved") : it->second.origin;
}

}  // namespace ssd
