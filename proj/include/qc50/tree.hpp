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

#ifndef QC50_TREE_HPP
#define QC50_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "counters.hpp"
#include "criteria.hpp"
#include "dataset.hpp"
#include "split_test.hpp"

namespace qc50 {

/// Internal node when `test` is set, leaf otherwise. Every node keeps the
/// class histogram of the training samples that reached it.
struct TreeNode {
  std::optional<SplitTest> test;
  std::vector<TreeNode> children;
  std::uint32_t cls = 0;
  ClassHistogram support;

  bool is_leaf() const { return !test.has_value(); }

  static TreeNode leaf(std::uint32_t cls, ClassHistogram support) {
    TreeNode n;
    n.cls = cls;
    n.support = std::move(support);
    return n;
  }
};

/// Counters collected while growing a tree.
struct BuildStats {
  std::size_t internal_nodes = 0;     // k
  std::uint64_t evaluations = 0;      // calls of the per-attribute scorer
  std::uint64_t split_searches = 0;   // calls of choose_split / q_choose_split
  std::uint64_t oracle_queries = 0;   // quantum backend only
  std::vector<OpTally> level_ops;     // counter work per tree level

  OpTally total_ops() const {
    OpTally t;
    for (const auto& l : level_ops) t += l;
    return t;
  }
};

struct DecisionTree {
  TreeNode root;
  AttributeSchema schema;
  std::vector<std::string> class_labels;
  int height_limit = 0;
  BuildStats stats;
};

inline std::size_t depth(const TreeNode& node) {
  std::size_t d = 0;
  for (const auto& c : node.children) d = std::max(d, depth(c) + 1);
  return d;
}

inline std::size_t count_internal(const TreeNode& node) {
  if (node.is_leaf()) return 0;
  std::size_t k = 1;
  for (const auto& c : node.children) k += count_internal(c);
  return k;
}

/// Root-to-leaf walk. Throws DomainError for a discrete value outside the
/// attribute's domain.
inline std::uint32_t classify(const DecisionTree& tree,
                              std::span<const double> x) {
  if (x.size() != tree.schema.size())
    throw DomainError("attribute vector has " + std::to_string(x.size()) +
                      " values, schema expects " +
                      std::to_string(tree.schema.size()));
  const TreeNode* node = &tree.root;
  while (!node->is_leaf()) {
    const SplitTest& t = *node->test;
    const double v = x[t.attr];
    if (!t.is_real() &&
        !Dataset::in_domain(v, tree.schema[t.attr].domain_size))
      throw DomainError("value of attribute '" + tree.schema[t.attr].name +
                        "' outside its domain");
    node = &node->children[t.outcome(v)];
  }
  return node->cls;
}

inline double training_accuracy(const DecisionTree& tree, const Dataset& data) {
  std::size_t hits = 0;
  std::vector<double> row(data.attribute_count());
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = data.value(i, j);
    hits += classify(tree, row) == data.label(i);
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

}  // namespace qc50

#endif  // QC50_TREE_HPP
