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

#ifndef QC50_SPLITSCAN_HPP
#define QC50_SPLITSCAN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "counters.hpp"
#include "criteria.hpp"
#include "dataset.hpp"
#include "split_test.hpp"

namespace qc50 {

/// Best test found for one attribute.
struct AttributeSplit {
  SplitTest test;
  SplitScore score;
};

/// Threshold between two adjacent distinct sorted values. Falls back to the
/// lower value when the midpoint rounds onto the upper one, so that `<=`
/// still separates them.
inline double midpoint_threshold(double lo, double hi) {
  const double mid = lo / 2 + hi / 2;
  return (mid >= lo && mid < hi) ? mid : lo;
}

/// Sorted order plus prefix/suffix entropies of a real attribute over a view.
///   prefix_info[u] = I(first u samples in sorted order),   u = 0..z
///   suffix_info[u] = I(samples after the first u),         u = 0..z
/// own_prefix_count[p] is pC_j at position p+1 for j = the class of that
/// sample; together with the class totals it recovers every suffix count.
struct RealScanState {
  std::vector<SubsetView::Index> order;
  std::vector<double> sorted_values;
  std::vector<std::uint32_t> sorted_labels;
  std::vector<std::uint64_t> own_prefix_count;
  std::vector<double> prefix_info;
  std::vector<double> suffix_info;

  std::size_t size() const { return order.size(); }
  double parent_information() const { return prefix_info.back(); }
};

/// Scored threshold after the first `cut` sorted samples.
struct RealCandidate {
  std::size_t cut;
  double theta;
  SplitScore score;
};

template <ClassCounter Counter>
RealScanState build_real_scan_state(const SubsetView& view, std::size_t attr,
                                    OpTally* tally = nullptr) {
  const std::size_t z = view.size();
  RealScanState st;

  std::vector<std::size_t> pos(z);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
    return view.value(a, attr) < view.value(b, attr);
  });
  st.order.resize(z);
  st.sorted_values.resize(z);
  st.sorted_labels.resize(z);
  for (std::size_t p = 0; p < z; ++p) {
    st.order[p] = view[pos[p]];
    st.sorted_values[p] = view.value(pos[p], attr);
    st.sorted_labels[p] = view.label(pos[p]);
  }

  Counter counts(view.base().class_count(), tally);
  counts.init();
  st.own_prefix_count.resize(z);
  st.prefix_info.assign(z + 1, 0.0);
  double sum = 0.0;
  for (std::size_t p = 0; p < z; ++p) {
    const std::uint64_t c = counts.increment(st.sorted_labels[p]);
    st.own_prefix_count[p] = c;
    sum += xlog2x(c) - xlog2x(c - 1);
    st.prefix_info[p + 1] = std::max(0.0, entropy_from_sum(sum, p + 1));
  }

  // Suffix counts are pC_j[z] - pC_j[u]; walk back from the end.
  st.suffix_info.assign(z + 1, 0.0);
  sum = 0.0;
  for (std::size_t p = z; p-- > 0;) {
    const std::uint64_t total = counts.get(st.sorted_labels[p]);
    const std::uint64_t before = total - st.own_prefix_count[p];
    sum += xlog2x(before + 1) - xlog2x(before);
    st.suffix_info[p] = std::max(0.0, entropy_from_sum(sum, z - p));
  }
  counts.clear();
  return st;
}

/// Every threshold between adjacent distinct values, scored from the
/// prefix/suffix entropies.
inline std::vector<RealCandidate> real_candidates(const RealScanState& st) {
  std::vector<RealCandidate> out;
  const std::size_t z = st.size();
  if (z < 2) return out;
  const double n = static_cast<double>(z);
  const double parent = st.parent_information();
  for (std::size_t u = 1; u < z; ++u) {
    const double lo = st.sorted_values[u - 1];
    const double hi = st.sorted_values[u];
    if (!(lo < hi)) continue;
    const double left = static_cast<double>(u) / n;
    const double right = static_cast<double>(z - u) / n;
    const double g =
        parent - left * st.prefix_info[u] - right * st.suffix_info[u];
    const double p = std::max(
        0.0, entropy_from_sum(xlog2x(u) + xlog2x(z - u), z));
    out.push_back({u, midpoint_threshold(lo, hi), gain_ratio(g, p)});
  }
  return out;
}

/// Best threshold test for a real attribute; ties go to the smallest theta.
/// No candidate when the attribute is constant on the view.
template <ClassCounter Counter = SparseClassCounter>
std::optional<AttributeSplit> scan_real_attribute(const SubsetView& view,
                                                  std::size_t attr,
                                                  OpTally* tally = nullptr) {
  if (view.size() < 2) return std::nullopt;
  const RealScanState st = build_real_scan_state<Counter>(view, attr, tally);
  std::optional<AttributeSplit> best;
  for (const RealCandidate& c : real_candidates(st))
    if (!best || c.score > best->score)
      best = AttributeSplit{SplitTest::real(attr, c.theta), c.score};
  return best;
}

/// One-pass evaluation of the multiway test on a discrete attribute. Each
/// add() applies the entropy-term replacement updates so that every state
/// variable equals its definition over the samples seen so far, with the
/// final subset size z as the common denominator of P and I:
///   P   = -sum_w phi(N_w / z)
///   I   = -sum_j phi(C_j / z)
///   I_w = entropy of the class counts C_{.,w}
///   S   = sum_w (N_w / z) I_w,           G = I - S
/// where phi(p) = p log2 p.
template <ClassCounter Counter>
class DiscreteAccumulator {
 public:
  DiscreteAccumulator(std::size_t class_count, int domain_size,
                      std::size_t subset_size, OpTally* tally = nullptr)
      : classes_(class_count),
        z_(static_cast<double>(subset_size)),
        class_counts_(class_count, tally),
        pair_counts_(class_count * static_cast<std::size_t>(domain_size),
                     tally),
        branch_sizes_(static_cast<std::size_t>(domain_size), 0),
        branch_xlogx_(static_cast<std::size_t>(domain_size), 0.0),
        branch_info_(static_cast<std::size_t>(domain_size), 0.0) {
    class_counts_.init();
    pair_counts_.init();
  }

  DiscreteAccumulator(const DiscreteAccumulator&) = delete;
  DiscreteAccumulator& operator=(const DiscreteAccumulator&) = delete;

  ~DiscreteAccumulator() {
    class_counts_.clear();
    pair_counts_.clear();
  }

  /// Adds a sample of class `cls` whose attribute value is `value` (1..T).
  void add(std::uint32_t cls, int value) {
    const std::size_t w = static_cast<std::size_t>(value - 1);

    const std::uint64_t n_old = branch_sizes_[w]++;
    const std::uint64_t n_new = n_old + 1;
    const std::uint64_t c_new = class_counts_.increment(cls);
    const std::uint64_t cw_new = pair_counts_.increment(pair_key(cls, w));

    potential_ += phi(n_old) - phi(n_new);
    parent_info_ += phi(c_new - 1) - phi(c_new);

    const double info_old = branch_info_[w];
    branch_xlogx_[w] += xlog2x(cw_new) - xlog2x(cw_new - 1);
    branch_info_[w] = std::max(0.0, entropy_from_sum(branch_xlogx_[w], n_new));
    weighted_branch_info_ += static_cast<double>(n_new) / z_ * branch_info_[w] -
                             static_cast<double>(n_old) / z_ * info_old;
    if (n_old == 0) ++nonempty_branches_;
    ++seen_;
  }

  std::uint64_t seen() const { return seen_; }
  std::uint64_t branch_size(std::size_t w) const { return branch_sizes_[w]; }
  std::uint64_t class_count(std::uint32_t cls) const {
    return class_counts_.get(cls);
  }
  std::uint64_t pair_count(std::uint32_t cls, std::size_t w) const {
    return pair_counts_.get(pair_key(cls, w));
  }
  std::size_t nonempty_branches() const { return nonempty_branches_; }
  std::size_t stored_class_keys() const { return class_counts_.stored_keys(); }
  std::size_t stored_pair_keys() const { return pair_counts_.stored_keys(); }

  double potential() const { return potential_; }
  double parent_information() const { return parent_info_; }
  double branch_information(std::size_t w) const { return branch_info_[w]; }
  double weighted_branch_information() const { return weighted_branch_info_; }
  double gain() const { return parent_info_ - weighted_branch_info_; }

  SplitScore score() const {
    if (nonempty_branches_ < 2) return SplitScore::invalid();
    return gain_ratio(gain(), std::max(0.0, potential_));
  }

 private:
  std::size_t pair_key(std::uint32_t cls, std::size_t w) const {
    return w * classes_ + cls;
  }
  double phi(std::uint64_t c) const {
    if (c == 0) return 0.0;
    const double p = static_cast<double>(c) / z_;
    return p * std::log2(p);
  }

  std::size_t classes_;
  double z_;
  Counter class_counts_;
  Counter pair_counts_;
  std::vector<std::uint64_t> branch_sizes_;
  std::vector<double> branch_xlogx_;
  std::vector<double> branch_info_;
  double potential_ = 0.0;
  double parent_info_ = 0.0;
  double weighted_branch_info_ = 0.0;
  std::size_t nonempty_branches_ = 0;
  std::uint64_t seen_ = 0;
};

/// Multiway test on a discrete attribute. No candidate when every sample
/// takes the same value.
template <ClassCounter Counter = SparseClassCounter>
std::optional<AttributeSplit> process_discrete_attribute(
    const SubsetView& view, std::size_t attr, OpTally* tally = nullptr) {
  if (view.size() < 2) return std::nullopt;
  const int domain = view.base().schema()[attr].domain_size;
  DiscreteAccumulator<Counter> acc(view.base().class_count(), domain,
                                   view.size(), tally);
  for (std::size_t k = 0; k < view.size(); ++k)
    acc.add(view.label(k), static_cast<int>(view.value(k, attr)));
  if (acc.nonempty_branches() < 2) return std::nullopt;
  return AttributeSplit{SplitTest::discrete(attr, domain), acc.score()};
}

/// The per-attribute scoring function f shared by the classical argmax and
/// the quantum search.
template <ClassCounter Counter = SparseClassCounter>
std::optional<AttributeSplit> process_attribute(const SubsetView& view,
                                                std::size_t attr,
                                                OpTally* tally = nullptr) {
  if (view.base().schema()[attr].is_real())
    return scan_real_attribute<Counter>(view, attr, tally);
  return process_discrete_attribute<Counter>(view, attr, tally);
}

}  // namespace qc50

#endif  // QC50_SPLITSCAN_HPP
