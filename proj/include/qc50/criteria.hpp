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

#ifndef QC50_CRITERIA_HPP
#define QC50_CRITERIA_HPP

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "error.hpp"

namespace qc50 {

/// Per-class counts |C_j| of a set of samples.
class ClassHistogram {
 public:
  ClassHistogram() = default;
  explicit ClassHistogram(std::size_t class_count) : counts_(class_count, 0) {}
  explicit ClassHistogram(std::vector<std::uint64_t> counts)
      : counts_(std::move(counts)),
        total_(std::accumulate(counts_.begin(), counts_.end(),
                               std::uint64_t{0})) {}

  void add(std::size_t cls, std::uint64_t n = 1) {
    if (cls >= counts_.size()) throw DomainError("class index out of range");
    counts_[cls] += n;
    total_ += n;
  }

  std::size_t class_count() const { return counts_.size(); }
  std::uint64_t count(std::size_t cls) const { return counts_[cls]; }
  std::uint64_t total() const { return total_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  /// Most frequent class, lowest index on ties. 0 for an empty histogram.
  std::size_t majority() const {
    std::size_t best = 0;
    for (std::size_t j = 1; j < counts_.size(); ++j)
      if (counts_[j] > counts_[best]) best = j;
    return best;
  }

  std::size_t distinct() const {
    std::size_t n = 0;
    for (auto c : counts_) n += c != 0;
    return n;
  }

  friend bool operator==(const ClassHistogram&, const ClassHistogram&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// c * log2(c) with 0 log 0 = 0. Entropies are assembled from these sums:
/// I = log2(n) - sum(c log2 c) / n.
inline double xlog2x(std::uint64_t c) {
  if (c == 0) return 0.0;
  const double x = static_cast<double>(c);
  return x * std::log2(x);
}

/// Entropy of a count vector, in bits, given the sum of c log2 c.
inline double entropy_from_sum(double sum_xlogx, std::uint64_t total) {
  if (total == 0) return 0.0;
  const double n = static_cast<double>(total);
  return std::log2(n) - sum_xlogx / n;
}

/// Information content I(X) = -sum RF(j) log2 RF(j).
inline double information(const ClassHistogram& hist) {
  if (hist.total() == 0)
    throw ConsistencyError("information of an empty set is undefined");
  double s = 0.0;
  for (auto c : hist.counts()) s += xlog2x(c);
  const double i = entropy_from_sum(s, hist.total());
  return i < 0.0 ? 0.0 : i;
}

/// Information gain of splitting `parent` into `branches`.
inline double gain(const ClassHistogram& parent,
                   std::span<const ClassHistogram> branches) {
  std::vector<std::uint64_t> sums(parent.class_count(), 0);
  for (const auto& b : branches) {
    if (b.class_count() != parent.class_count())
      throw ConsistencyError("branch histogram has a different class count");
    for (std::size_t j = 0; j < sums.size(); ++j) sums[j] += b.count(j);
  }
  if (sums != parent.counts())
    throw ConsistencyError("branch counts do not sum to the parent counts");
  const double n = static_cast<double>(parent.total());
  double g = information(parent);
  for (const auto& b : branches)
    if (b.total() > 0) g -= static_cast<double>(b.total()) / n * information(b);
  return g;
}

/// Potential information of the partition itself (split information).
inline double potential_information(std::span<const std::uint64_t> sizes) {
  std::uint64_t total = 0;
  double s = 0.0;
  for (auto c : sizes) {
    total += c;
    s += xlog2x(c);
  }
  if (total == 0) throw ConsistencyError("partition has no samples");
  const double p = entropy_from_sum(s, total);
  return p < 0.0 ? 0.0 : p;
}

/// A candidate test's gain G, potential P and gain ratio G/P. Scores with
/// P <= kMinPotential are invalid and compare below every valid score.
class SplitScore {
 public:
  static constexpr double kMinPotential = 1e-12;

  static SplitScore invalid() { return SplitScore(); }
  static SplitScore of(double gain, double potential) {
    SplitScore s;
    s.gain_ = gain;
    s.potential_ = potential;
    if (potential > kMinPotential) {
      s.valid_ = true;
      s.ratio_ = gain / potential;
    }
    return s;
  }

  bool valid() const { return valid_; }
  double gain() const { return gain_; }
  double potential() const { return potential_; }
  double ratio() const { return ratio_; }

  friend std::weak_ordering operator<=>(const SplitScore& a,
                                        const SplitScore& b) {
    if (a.valid_ != b.valid_)
      return a.valid_ ? std::weak_ordering::greater : std::weak_ordering::less;
    if (!a.valid_ || a.ratio_ == b.ratio_) return std::weak_ordering::equivalent;
    return a.ratio_ < b.ratio_ ? std::weak_ordering::less
                               : std::weak_ordering::greater;
  }
  friend bool operator==(const SplitScore& a, const SplitScore& b) {
    return (a <=> b) == 0;
  }

 private:
  SplitScore() = default;

  bool valid_ = false;
  double gain_ = 0.0;
  double potential_ = 0.0;
  double ratio_ = 0.0;
};

inline SplitScore gain_ratio(double gain, double potential) {
  return SplitScore::of(gain, potential);
}

}  // namespace qc50

#endif  // QC50_CRITERIA_HPP
