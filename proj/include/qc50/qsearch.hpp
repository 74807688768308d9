// Copyright 2026 The qc50 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QC50_QSEARCH_HPP
#define QC50_QSEARCH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "random.hpp"

namespace qc50 {

struct SearchStats {
  std::uint64_t oracle_queries = 0;
  std::uint64_t grover_iterations = 0;
  std::uint64_t improvements = 0;
  bool succeeded = false;  // returned index attains the true maximum

  SearchStats& operator+=(const SearchStats& o) {
    oracle_queries += o.oracle_queries;
    grover_iterations += o.grover_iterations;
    improvements += o.improvements;
    return *this;
  }
  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

/// Query cap of one maximum-finding run over K candidates:
/// floor(22.5 sqrt(K) + 1.4 log2(K)^2).
inline std::uint64_t query_budget(std::size_t k) {
  const double lg = std::log2(static_cast<double>(k));
  return static_cast<std::uint64_t>(
      std::floor(22.5 * std::sqrt(static_cast<double>(k)) + 1.4 * lg * lg));
}

inline int default_repeats(std::size_t d) {
  if (d <= 1) return 1;
  return std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(d)))));
}

/// Scoring function over indices 0..K-1 as seen by the search.
///
/// The algorithm side is query(), which costs one oracle query, and
/// charge(), which books the queries spent inside amplitude amplification
/// rounds. The harness side (count_above, sample_above, sample_not_above,
/// is_max) uses the full score table to reproduce the measurement
/// statistics of those rounds and is never booked as queries.
///
/// Scores need a total order (operator<). Each index is evaluated at most
/// once; evaluations() reports how many distinct indices were evaluated.
template <class Score>
class ScoringOracle {
 public:
  ScoringOracle(std::size_t size, std::function<Score(std::size_t)> fn)
      : fn_(std::move(fn)), cache_(size), queried_(size, false) {
    if (size == 0) throw Error("scoring oracle over an empty index set");
  }

  std::size_t size() const { return cache_.size(); }

  const Score& query(std::size_t i) {
    ++queries_;
    queried_[i] = true;
    return eval(i);
  }

  void charge(std::uint64_t n) { queries_ += n; }

  std::uint64_t queries() const { return queries_; }
  std::uint64_t evaluations() const { return evaluations_; }
  bool was_queried(std::size_t i) const { return queried_[i]; }

  /// Score of an index already seen by the algorithm; no query is booked.
  const Score& cached(std::size_t i) { return eval(i); }

  // Harness side.

  std::size_t count_above(const Score& s) {
    ensure_table();
    const auto it = std::upper_bound(
        sorted_.begin(), sorted_.end(), s,
        [&](const Score& v, std::size_t i) { return v < *cache_[i]; });
    return static_cast<std::size_t>(sorted_.end() - it);
  }

  /// Uniform index among those scoring strictly above s. Requires
  /// count_above(s) > 0.
  std::size_t sample_above(const Score& s, Rng& rng) {
    const std::size_t t = count_above(s);
    return sorted_[sorted_.size() - t + rng.below(t)];
  }

  /// Uniform index among those scoring at most s. Requires at least one.
  std::size_t sample_not_above(const Score& s, Rng& rng) {
    const std::size_t rest = size() - count_above(s);
    return sorted_[rng.below(rest)];
  }

  bool is_max(std::size_t i) { return count_above(eval(i)) == 0; }

  const Score& max_score() {
    ensure_table();
    return *cache_[sorted_.back()];
  }

 private:
  const Score& eval(std::size_t i) {
    if (!cache_[i]) {
      cache_[i] = fn_(i);
      ++evaluations_;
    }
    return *cache_[i];
  }

  void ensure_table() {
    if (!sorted_.empty()) return;
    sorted_.resize(size());
    std::iota(sorted_.begin(), sorted_.end(), std::size_t{0});
    for (std::size_t i = 0; i < size(); ++i) eval(i);
    std::stable_sort(sorted_.begin(), sorted_.end(),
                     [&](std::size_t a, std::size_t b) { return *cache_[a] < *cache_[b]; });
  }

  std::function<Score(std::size_t)> fn_;
  std::vector<std::optional<Score>> cache_;
  std::vector<bool> queried_;
  std::vector<std::size_t> sorted_;
  std::uint64_t queries_ = 0;
  std::uint64_t evaluations_ = 0;
};

/// Maximum finding with a moving threshold. Each round looks for an index
/// scoring strictly above the current best by amplitude amplification with
/// an unknown number of marked items: the iteration count j is drawn from
/// [0, m), the round books 2j queries for the amplification plus one for
/// checking the measured index, and the measurement is marked with
/// probability sin^2((2j+1) asin(sqrt(t/K))). m grows by 8/7 after each
/// miss, up to sqrt(K). The run stops when the next round would exceed the
/// query budget and returns the best index seen.
///
/// `Oracle` provides size(), query(i), charge(n), count_above(s),
/// sample_above(s, rng), sample_not_above(s, rng) and is_max(i).
template <class Oracle>
std::pair<std::size_t, SearchStats> durr_hoyer_max(Oracle& f, Rng& rng) {
  SearchStats stats;
  const std::size_t k = f.size();
  const std::uint64_t start = f.queries();

  std::size_t best = static_cast<std::size_t>(rng.below(k));
  auto best_score = f.query(best);

  if (k > 1) {
    const std::uint64_t budget = query_budget(k);
    const double m_cap = std::sqrt(static_cast<double>(k));
    bool exhausted = false;
    while (!exhausted) {
      double m = 1.0;
      for (;;) {
        const auto j = rng.below(static_cast<std::uint64_t>(std::ceil(m)));
        const std::uint64_t used = f.queries() - start;
        if (used + 2 * j + 1 > budget) {
          exhausted = true;
          break;
        }
        f.charge(2 * j);
        stats.grover_iterations += j;
        const std::size_t t = f.count_above(best_score);
        double p = 0.0;
        if (t > 0) {
          const double s = std::sin(static_cast<double>(2 * j + 1) *
                                    std::asin(std::sqrt(static_cast<double>(t) /
                                                        static_cast<double>(k))));
          p = s * s;
        }
        const std::size_t measured = (t > 0 && rng.bernoulli(p))
                                         ? f.sample_above(best_score, rng)
                                         : f.sample_not_above(best_score, rng);
        const auto score = f.query(measured);
        if (best_score < score) {
          best = measured;
          best_score = score;
          ++stats.improvements;
          break;
        }
        m = std::min(m * 8.0 / 7.0, m_cap);
      }
    }
  }

  stats.oracle_queries = f.queries() - start;
  stats.succeeded = f.is_max(best);
  return {best, stats};
}

/// Runs durr_hoyer_max `repeats` times on the same oracle and keeps the
/// returned index with the highest score (earliest run on ties).
template <class Oracle>
std::pair<std::size_t, SearchStats> repeated_max(Oracle& f, int repeats,
                                                 Rng& rng) {
  if (repeats < 1) throw Error("repeats must be positive");
  SearchStats total;
  std::optional<std::size_t> best;
  for (int r = 0; r < repeats; ++r) {
    auto [idx, stats] = durr_hoyer_max(f, rng);
    total += stats;
    if (!best || f.cached(*best) < f.cached(idx)) best = idx;
  }
  total.succeeded = f.is_max(*best);
  return {*best, total};
}

}  // namespace qc50

#endif  // QC50_QSEARCH_HPP
