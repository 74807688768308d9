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

#ifndef QC50_COUNTERS_HPP
#define QC50_COUNTERS_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "error.hpp"

namespace qc50 {

/// Instrumentation shared by the class counters.
///   updates      increments and point lookups
///   sweeps       element touches by init, clear and full iteration
///   comparisons  key comparisons inside the ordered map
struct OpTally {
  std::uint64_t updates = 0;
  std::uint64_t sweeps = 0;
  std::uint64_t comparisons = 0;

  std::uint64_t total() const { return updates + sweeps; }

  OpTally& operator+=(const OpTally& o) {
    updates += o.updates;
    sweeps += o.sweeps;
    comparisons += o.comparisons;
    return *this;
  }
  friend bool operator==(const OpTally&, const OpTally&) = default;
};

/// Counters are usable between init() and clear(). Keys lie in
/// [0, capacity); values are non-negative counts.
template <class C>
concept ClassCounter = requires(C c, const C cc, std::size_t key) {
  C(std::size_t{}, static_cast<OpTally*>(nullptr));
  c.init();
  { c.increment(key) } -> std::same_as<std::uint64_t>;
  { c.get(key) } -> std::same_as<std::uint64_t>;
  c.clear();
  { cc.stored_keys() } -> std::same_as<std::size_t>;
};

/// Baseline counter: a plain array over the whole key range. init() costs
/// Theta(capacity) however few keys are used.
class DenseClassCounter {
 public:
  DenseClassCounter(std::size_t capacity, OpTally* tally)
      : counts_(capacity, 0), tally_(tally) {}

  void init() {
    std::fill(counts_.begin(), counts_.end(), 0);
    if (tally_) tally_->sweeps += counts_.size();
  }

  std::uint64_t increment(std::size_t key) {
    if (tally_) ++tally_->updates;
    return ++counts_.at(key);
  }

  std::uint64_t get(std::size_t key) const {
    if (tally_) ++tally_->updates;
    return counts_.at(key);
  }

  /// Visits non-zero entries in key order; touches every slot.
  template <class F>
  void for_each(F&& f) const {
    if (tally_) tally_->sweeps += counts_.size();
    for (std::size_t k = 0; k < counts_.size(); ++k)
      if (counts_[k] != 0) f(k, counts_[k]);
  }

  // The next init() overwrites everything.
  void clear() {}

  std::size_t stored_keys() const { return counts_.size(); }

 private:
  std::vector<std::uint64_t> counts_;
  OpTally* tally_;
};

/// Tree Map counter: an ordered map holding only non-zero keys. Point
/// operations cost O(log s) comparisons, iteration and clear O(s), where s
/// is the number of stored keys.
class SparseClassCounter {
  struct CountingLess {
    OpTally* tally;
    bool operator()(std::size_t a, std::size_t b) const {
      if (tally) ++tally->comparisons;
      return a < b;
    }
  };

 public:
  SparseClassCounter(std::size_t capacity, OpTally* tally)
      : capacity_(capacity), map_(CountingLess{tally}), tally_(tally) {}

  void init() {
    if (!map_.empty()) throw Error("sparse counter initialised while in use");
  }

  std::uint64_t increment(std::size_t key) {
    if (key >= capacity_) throw Error("counter key out of range");
    if (tally_) ++tally_->updates;
    return ++map_[key];
  }

  std::uint64_t get(std::size_t key) const {
    if (tally_) ++tally_->updates;
    const auto it = map_.find(key);
    return it == map_.end() ? 0 : it->second;
  }

  template <class F>
  void for_each(F&& f) const {
    if (tally_) tally_->sweeps += map_.size();
    for (const auto& [k, v] : map_) f(k, v);
  }

  void clear() {
    if (tally_) tally_->sweeps += map_.size();
    map_.clear();
  }

  std::size_t stored_keys() const { return map_.size(); }

 private:
  std::size_t capacity_;
  std::map<std::size_t, std::uint64_t, CountingLess> map_;
  OpTally* tally_;
};

static_assert(ClassCounter<DenseClassCounter>);
static_assert(ClassCounter<SparseClassCounter>);

}  // namespace qc50

#endif  // QC50_COUNTERS_HPP
