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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <random>

#include "ssd/error.hpp"
#include "ssd/generators.hpp"

namespace ssd {
namespace {

// Multiplicative C(n, k) with saturation.
std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  UInt128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

void enumerate_classes(int pos, int block, int q, std::vector<Level>& current,
                       std::vector<int>& fill, int used,
                       std::vector<std::vector<Level>>& out) {
  const int n = static_cast<int>(current.size());
  if (pos == n) {
    out.push_back(current);
    return;
  }
  const int limit = std::min(used + 1, q);
  for (int label = 0; label < limit; ++label) {
    if (fill[label] == block) continue;
    current[pos] = label;
    ++fill[label];
    enumerate_classes(pos + 1, block, q, current, fill,
                      label == used ? used + 1 : used, out);
    --fill[label];
  }
}

// Coverage of unordered row pairs by one column, as a bitset plus index list.
struct PairCover {
  std::vector<std::uint64_t> bits;
  std::vector<int> pairs;
};

class Searcher {
 public:
  static constexpr int kCandidateLimit = 96;

  Searcher(int runs, int factors, int lambda, const SearchOptions& options,
           std::vector<std::vector<Level>> classes)
      : n_(runs),
        m_(factors),
        lambda_(lambda),
        options_(options),
        classes_(std::move(classes)),
        rng_(options.seed) {
    pair_count_ = n_ * (n_ - 1) / 2;
    words_ = (pair_count_ + 63) / 64;
    covers_.reserve(classes_.size());
    for (const auto& col : classes_) {
      PairCover cover;
      cover.bits.assign(words_, 0);
      for (int s = 0; s < n_; ++s) {
        for (int t = s + 1; t < n_; ++t) {
          if (col[s] != col[t]) continue;
          const int p = pair_index(s, t);
          cover.bits[p / 64] |= std::uint64_t{1} << (p % 64);
          cover.pairs.push_back(p);
        }
      }
      covers_.push_back(std::move(cover));
    }
  }

  std::optional<std::vector<int>> run() {
    if (classes_.size() <= options_.exhaustive_limit) return exhaustive();
    return local_search();
  }

 private:
  int pair_index(int s, int t) const {
    return s * n_ - s * (s + 1) / 2 + (t - s - 1);
  }

  bool repeats() const { return !options_.forbid_aliasing; }

  // Include/exclude enumeration over class indices with per-pair bounds.
  std::optional<std::vector<int>> exhaustive() {
    const int k = static_cast<int>(classes_.size());
    suffix_.assign(static_cast<size_t>(k + 1) * pair_count_, 0);
    for (int c = k - 1; c >= 0; --c) {
      for (int p = 0; p < pair_count_; ++p) {
        suffix_[c * pair_count_ + p] = suffix_[(c + 1) * pair_count_ + p];
      }
      for (int p : covers_[c].pairs) ++suffix_[c * pair_count_ + p];
    }
    counts_.assign(pair_count_, 0);
    std::vector<int> chosen;
    if (dfs(0, chosen)) return chosen;
    return std::nullopt;
  }

  bool dfs(int next, std::vector<int>& chosen) {
    const int picked = static_cast<int>(chosen.size());
    if (picked == m_) {
      return std::all_of(counts_.begin(), counts_.end(),
                         [&](int c) { return c == lambda_; });
    }
    const int k = static_cast<int>(classes_.size());
    const int remaining = m_ - picked;
    for (int p = 0; p < pair_count_; ++p) {
      const int avail = suffix_[static_cast<size_t>(next) * pair_count_ + p];
      const int reach = repeats() ? (avail > 0 ? remaining : 0)
                                  : std::min(avail, remaining);
      if (counts_[p] + reach < lambda_) return false;
    }
    for (int c = next; c < k; ++c) {
      if (!repeats() && k - c < remaining) break;
      bool ok = true;
      for (int p : covers_[c].pairs) {
        if (++counts_[p] > lambda_) ok = false;
      }
      chosen.push_back(c);
      if (ok && dfs(repeats() ? c : c + 1, chosen)) return true;
      chosen.pop_back();
      for (int p : covers_[c].pairs) --counts_[p];
    }
    return false;
  }

  std::uint64_t uniform(std::uint64_t bound) { return rng_() % bound; }

  std::int64_t cost() const {
    std::int64_t total = 0;
    for (int c : counts_) total += (c - lambda_) * (c - lambda_);
    return total;
  }

  // Tabu search over m-subsets minimizing sum over pairs of
  // (count - lambda)^2. A swap a -> b changes the cost by
  // rem(a) + add(b) - 2|a & b|, where add(b) sums 2(count - lambda) + 1 over
  // the pairs b covers and rem(a) = 2|a| - add(a). add() is kept up to date
  // from the class overlap table, so a move costs O(k + m * kCandidateLimit).
  std::optional<std::vector<int>> local_search() {
    const int k = static_cast<int>(classes_.size());
    if (!repeats() && k < m_) return std::nullopt;
    build_overlaps();
    const std::uint64_t stall_limit = 2000 + 20 * static_cast<std::uint64_t>(m_);
    std::uint64_t moves = 0;
    std::vector<std::int64_t> add(k);
    std::vector<std::uint64_t> tabu_until(k, 0);
    std::vector<int> candidates;
    candidates.reserve(k);
    while (moves < options_.move_budget) {
      std::vector<int> selected = initial(k);
      std::vector<int> multiplicity(k, 0);
      counts_.assign(pair_count_, 0);
      for (int c : selected) {
        ++multiplicity[c];
        for (int p : covers_[c].pairs) ++counts_[p];
      }
      for (int b = 0; b < k; ++b) {
        std::int64_t v = 0;
        for (int p : covers_[b].pairs) v += 2 * (counts_[p] - lambda_) + 1;
        add[b] = v;
      }
      std::fill(tabu_until.begin(), tabu_until.end(), 0);
      std::int64_t current = cost();
      std::int64_t best = current;
      std::uint64_t since_best = 0;
      while (current > 0 && since_best < stall_limit &&
             moves < options_.move_budget) {
        ++moves;
        ++since_best;
        candidates.clear();
        for (int b = 0; b < k; ++b) {
          if (!repeats() && multiplicity[b] > 0) continue;
          candidates.push_back(b);
        }
        // Only the cheapest insertions are paired with every removal; the
        // overlap term is bounded by the cover size, so few improving swaps
        // are lost.
        if (static_cast<int>(candidates.size()) > kCandidateLimit) {
          std::nth_element(candidates.begin(),
                           candidates.begin() + kCandidateLimit,
                           candidates.end(), [&](int x, int y) {
                             return add[x] != add[y] ? add[x] < add[y] : x < y;
                           });
          candidates.resize(kCandidateLimit);
        }
        std::int64_t best_delta = std::numeric_limits<std::int64_t>::max();
        int best_i = -1;
        int best_b = -1;
        std::uint64_t ties = 0;
        for (int i = 0; i < m_; ++i) {
          const int a = selected[i];
          const std::int64_t rem = 2 * cover_size(a) - add[a];
          for (int b : candidates) {
            if (b == a) continue;
            const std::int64_t delta = rem + add[b] - 2 * overlap(a, b);
            const bool tabu = tabu_until[b] > moves || tabu_until[a] > moves;
            if (tabu && current + delta >= best) continue;
            if (delta < best_delta) {
              best_delta = delta;
              best_i = i;
              best_b = b;
              ties = 1;
            } else if (delta == best_delta && uniform(++ties) == 0) {
              best_i = i;
              best_b = b;
            }
          }
        }
        if (best_i < 0) break;
        const int a = selected[best_i];
        for (int p : covers_[a].pairs) --counts_[p];
        for (int p : covers_[best_b].pairs) ++counts_[p];
        for (int x = 0; x < k; ++x) {
          add[x] += 2 * (overlap(best_b, x) - overlap(a, x));
        }
        --multiplicity[a];
        ++multiplicity[best_b];
        selected[best_i] = best_b;
        current += best_delta;
        tabu_until[a] = moves + 3 + uniform(std::max(2, m_ / 2));
        tabu_until[best_b] = moves + 1 + uniform(3);
        if (current < best) {
          best = current;
          since_best = 0;
        }
      }
      if (current == 0) {
        std::sort(selected.begin(), selected.end());
        return selected;
      }
    }
    return std::nullopt;
  }

  int cover_size(int c) const {
    return static_cast<int>(covers_[c].pairs.size());
  }

  // |a & b| over covered row pairs, tabulated once per search.
  int overlap(int a, int b) const {
    return overlaps_[static_cast<size_t>(a) * classes_.size() + b];
  }

  void build_overlaps() {
    const size_t k = classes_.size();
    overlaps_.assign(k * k, 0);
    for (size_t a = 0; a < k; ++a) {
      for (size_t b = a; b < k; ++b) {
        int o = 0;
        for (int w = 0; w < words_; ++w) {
          o += std::popcount(covers_[a].bits[w] & covers_[b].bits[w]);
        }
        overlaps_[a * k + b] = static_cast<std::uint16_t>(o);
        overlaps_[b * k + a] = static_cast<std::uint16_t>(o);
      }
    }
  }

  std::vector<int> initial(int k) {
    std::vector<int> selected;
    if (repeats()) {
      for (int i = 0; i < m_; ++i) {
        selected.push_back(static_cast<int>(uniform(k)));
      }
      return selected;
    }
    std::vector<int> pool(k);
    for (int i = 0; i < k; ++i) pool[i] = i;
    for (int i = 0; i < m_; ++i) {
      const int j = i + static_cast<int>(uniform(k - i));
      std::swap(pool[i], pool[j]);
      selected.push_back(pool[i]);
    }
    return selected;
  }

  int n_;
  int m_;
  int lambda_;
  SearchOptions options_;
  std::vector<std::vector<Level>> classes_;
  std::mt19937_64 rng_;
  int pair_count_ = 0;
  int words_ = 0;
  std::vector<PairCover> covers_;
  std::vector<int> counts_;
  std::vector<int> suffix_;
  std::vector<std::uint16_t> overlaps_;
};

}  // namespace

std::uint64_t alias_class_count(int runs, int levels) {
  if (levels < 1 || runs < 1 || runs % levels != 0) return 0;
  const std::uint64_t block = runs / levels;
  UInt128 total = 1;
  std::uint64_t remaining = runs;
  for (int k = 0; k < levels; ++k) {
    const std::uint64_t ways = choose(remaining - 1, block - 1);
    total *= ways;
    if (total > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    remaining -= block;
  }
  return static_cast<std::uint64_t>(total);
}

std::vector<std::vector<Level>> alias_classes(int runs, int levels) {
  if (levels < 2 || runs % levels != 0) {
    throw InvalidArgument("alias_classes: levels must divide runs");
  }
  std::vector<std::vector<Level>> out;
  std::vector<Level> current(runs, 0);
  std::vector<int> fill(levels, 0);
  enumerate_classes(0, runs / levels, levels, current, fill, 0, out);
  return out;
}

std::optional<EquidistantDesign> search_equidistant(
    int runs, int factors, int levels, int lambda,
    const SearchOptions& options) {
  if (levels < 2 || runs % levels != 0) {
    throw InvalidArgument("search_equidistant: levels must divide runs");
  }
  if (factors < 1 || lambda < 0) {
    throw InvalidArgument("search_equidistant: bad factor count or lambda");
  }
  // Every balanced column covers q C(n/q, 2) row pairs.
  const long long block = runs / levels;
  const long long covered =
      static_cast<long long>(factors) * levels * block * (block - 1) / 2;
  if (covered != static_cast<long long>(lambda) * runs * (runs - 1) / 2) {
    return std::nullopt;
  }
  const std::uint64_t count = alias_class_count(runs, levels);
  if (count > options.class_budget) return std::nullopt;
  if (options.forbid_aliasing && count < static_cast<std::uint64_t>(factors)) {
    return std::nullopt;
  }
  Searcher searcher(runs, factors, lambda, options,
                    alias_classes(runs, levels));
  auto chosen = searcher.run();
  if (!chosen) return std::nullopt;
  const auto classes = alias_classes(runs, levels);
  IntMatrix entries(runs, factors);
  for (int j = 0; j < factors; ++j) {
    const auto& col = classes[(*chosen)[j]];
    for (int s = 0; s < runs; ++s) entries(s, j) = col[s];
  }
  EquidistantDesign result(DesignMatrix::symmetric(std::move(entries), levels),
                           options.forbid_aliasing);
  if (result.lambda() != lambda) {
    throw InternalError("search returned a design with the wrong lambda");
  }
  return result;
}

}  // namespace ssd
