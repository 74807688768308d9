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

#ifndef QC50_TESTS_TEST_UTIL_HPP
#define QC50_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qc50/dataset.hpp"
#include "qc50/random.hpp"

namespace qc50::testing {

/// Builds a dataset from rows and 0-based labels; classes are named A, B, ...
inline Dataset make_data(std::vector<Attribute> attrs,
                         const std::vector<std::vector<double>>& rows,
                         const std::vector<std::uint32_t>& labels,
                         std::size_t classes = 0) {
  std::vector<double> values;
  for (const auto& r : rows) values.insert(values.end(), r.begin(), r.end());
  std::uint32_t m = 0;
  for (auto l : labels) m = std::max(m, l + 1);
  if (classes > m) m = static_cast<std::uint32_t>(classes);
  std::vector<std::string> names;
  for (std::uint32_t c = 0; c < m; ++c) names.push_back(std::string(1, static_cast<char>('A' + c % 26)) + (c >= 26 ? std::to_string(c) : ""));
  return Dataset(AttributeSchema(std::move(attrs)), std::move(values), labels, std::move(names));
}

/// Single real attribute.
inline Dataset real_column(const std::vector<double>& v,
                           const std::vector<std::uint32_t>& labels) {
  std::vector<std::vector<double>> rows;
  for (double x : v) rows.push_back({x});
  return make_data({Attribute::real("x")}, rows, labels);
}

/// Single discrete attribute over {1..t}.
inline Dataset discrete_column(const std::vector<double>& v,
                               const std::vector<std::uint32_t>& labels, int t) {
  std::vector<std::vector<double>> rows;
  for (double x : v) rows.push_back({x});
  return make_data({Attribute::discrete("x", t)}, rows, labels);
}

/// Random dataset with mixed attribute kinds; values drawn from a small pool
/// so that ties occur.
inline Dataset random_data(Rng& rng, std::size_t n, std::size_t d, std::size_t m) {
  std::vector<Attribute> attrs;
  for (std::size_t j = 0; j < d; ++j) {
    if (rng.below(2) == 0)
      attrs.push_back(Attribute::real("r" + std::to_string(j)));
    else
      attrs.push_back(Attribute::discrete("d" + std::to_string(j), 2 + static_cast<int>(rng.below(4))));
  }
  std::vector<std::vector<double>> rows(n, std::vector<double>(d));
  std::vector<std::uint32_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (attrs[j].is_real())
        rows[i][j] = rng.below(3) == 0 ? static_cast<double>(rng.below(5)) : rng.uniform() * 10;
      else
        rows[i][j] = static_cast<double>(1 + rng.below(static_cast<std::uint64_t>(attrs[j].domain_size)));
    }
    labels[i] = static_cast<std::uint32_t>(rng.below(m));
  }
  return make_data(std::move(attrs), rows, labels, m);
}

/// Random subset of the rows of `data` (at least `min_size` rows), in
/// shuffled order.
inline std::vector<std::uint32_t> random_subset(Rng& rng, std::size_t n, std::size_t min_size) {
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
  const std::size_t size = min_size + rng.below(n - min_size + 1);
  idx.resize(size);
  return idx;
}

}  // namespace qc50::testing

#endif  // QC50_TESTS_TEST_UTIL_HPP
