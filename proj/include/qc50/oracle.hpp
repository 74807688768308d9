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

#ifndef QC50_ORACLE_HPP
#define QC50_ORACLE_HPP

// Brute-force reference for the split criteria. Everything here is written
// straight from the definitions with dense histograms and shares no code
// with criteria.hpp or splitscan.hpp, so agreement between the two is
// evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dataset.hpp"

namespace qc50::oracle {

struct Candidate {
  std::size_t attr = 0;
  bool real = true;
  double theta = 0.0;   // real tests
  int branches = 0;     // discrete tests
  double parent_info = 0.0;
  std::vector<std::vector<std::uint64_t>> branch_hists;
  double gain = 0.0;
  double potential = 0.0;
  double ratio = 0.0;
  bool valid = false;
};

struct OracleResult {
  std::vector<Candidate> table;  // attribute order, then increasing theta
  std::optional<std::size_t> best;
};

/// -sum_j (c_j/n) log2(c_j/n) over a dense count vector.
inline double entropy(const std::vector<std::uint64_t>& counts) {
  double n = 0;
  for (auto c : counts) n += static_cast<double>(c);
  if (n == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double rf = static_cast<double>(c) / n;
    h -= rf * (std::log(rf) / std::log(2.0));
  }
  return h;
}

inline Candidate score_partition(std::size_t attr,
                                 const std::vector<std::uint64_t>& parent,
                                 std::vector<std::vector<std::uint64_t>> branches) {
  Candidate c;
  c.attr = attr;
  double n = 0;
  for (auto v : parent) n += static_cast<double>(v);
  c.parent_info = entropy(parent);
  c.gain = c.parent_info;
  c.potential = 0.0;
  for (const auto& b : branches) {
    double size = 0;
    for (auto v : b) size += static_cast<double>(v);
    if (size == 0) continue;
    c.gain -= size / n * entropy(b);
    c.potential -= size / n * (std::log(size / n) / std::log(2.0));
  }
  c.valid = c.potential > 1e-12;
  c.ratio = c.valid ? c.gain / c.potential : 0.0;
  c.branch_hists = std::move(branches);
  return c;
}

/// Scores every legal test on the view: each midpoint between adjacent
/// distinct values of a real attribute, and the multiway test of each
/// discrete attribute that sends samples to at least two branches.
inline OracleResult brute_force_best_split(const SubsetView& view) {
  const Dataset& data = view.base();
  const std::size_t m = data.class_count();
  std::vector<std::uint64_t> parent(m, 0);
  for (std::size_t k = 0; k < view.size(); ++k) ++parent[view.label(k)];

  OracleResult out;
  for (std::size_t a = 0; a < data.attribute_count(); ++a) {
    const Attribute& attr = data.schema()[a];
    if (attr.is_real()) {
      std::vector<double> vals;
      for (std::size_t k = 0; k < view.size(); ++k) vals.push_back(view.value(k, a));
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      for (std::size_t u = 0; u + 1 < vals.size(); ++u) {
        const double theta = (vals[u] + vals[u + 1]) / 2;
        std::vector<std::vector<std::uint64_t>> br(2, std::vector<std::uint64_t>(m, 0));
        for (std::size_t k = 0; k < view.size(); ++k)
          ++br[view.value(k, a) <= vals[u] ? 0 : 1][view.label(k)];
        Candidate c = score_partition(a, parent, std::move(br));
        c.real = true;
        c.theta = theta;
        out.table.push_back(std::move(c));
      }
    } else {
      std::vector<std::vector<std::uint64_t>> br(
          static_cast<std::size_t>(attr.domain_size), std::vector<std::uint64_t>(m, 0));
      for (std::size_t k = 0; k < view.size(); ++k)
        ++br[static_cast<std::size_t>(view.value(k, a)) - 1][view.label(k)];
      std::size_t nonempty = 0;
      for (const auto& b : br)
        for (auto v : b)
          if (v) {
            ++nonempty;
            break;
          }
      if (nonempty < 2) continue;
      Candidate c = score_partition(a, parent, std::move(br));
      c.real = false;
      c.branches = attr.domain_size;
      out.table.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < out.table.size(); ++i) {
    if (!out.table[i].valid) continue;
    if (!out.best || out.table[i].ratio > out.table[*out.best].ratio) out.best = i;
  }
  return out;
}

/// Best training accuracy of any single-test tree with majority leaves.
inline double best_stump_accuracy(const Dataset& data) {
  const std::size_t n = data.size();
  const std::size_t m = data.class_count();
  auto majority_hits = [&](const std::vector<std::vector<std::uint64_t>>& br) {
    std::uint64_t hits = 0;
    for (const auto& b : br) hits += *std::max_element(b.begin(), b.end());
    return hits;
  };
  std::uint64_t best = 0;
  {
    std::vector<std::vector<std::uint64_t>> one(1, std::vector<std::uint64_t>(m, 0));
    for (std::size_t i = 0; i < n; ++i) ++one[0][data.label(i)];
    best = majority_hits(one);
  }
  for (std::size_t a = 0; a < data.attribute_count(); ++a) {
    const Attribute& attr = data.schema()[a];
    if (attr.is_real()) {
      for (std::size_t t = 0; t < n; ++t) {
        const double cut = data.value(t, a);
        std::vector<std::vector<std::uint64_t>> br(2, std::vector<std::uint64_t>(m, 0));
        for (std::size_t i = 0; i < n; ++i) ++br[data.value(i, a) <= cut ? 0 : 1][data.label(i)];
        best = std::max(best, majority_hits(br));
      }
    } else {
      std::vector<std::vector<std::uint64_t>> br(
          static_cast<std::size_t>(attr.domain_size), std::vector<std::uint64_t>(m, 0));
      for (std::size_t i = 0; i < n; ++i)
        ++br[static_cast<std::size_t>(data.value(i, a)) - 1][data.label(i)];
      best = std::max(best, majority_hits(br));
    }
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

}  // namespace qc50::oracle

#endif  // QC50_ORACLE_HPP
