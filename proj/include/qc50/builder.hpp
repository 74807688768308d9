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

#ifndef QC50_BUILDER_HPP
#define QC50_BUILDER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "counters.hpp"
#include "criteria.hpp"
#include "dataset.hpp"
#include "splitscan.hpp"
#include "tree.hpp"

namespace qc50 {

enum class Backend { Baseline, Treemap, Quantum };

inline std::string to_string(Backend b) {
  switch (b) {
    case Backend::Baseline: return "baseline";
    case Backend::Treemap: return "treemap";
    case Backend::Quantum: return "quantum";
  }
  return "?";
}

inline Backend parse_backend(const std::string& s) {
  if (s == "baseline") return Backend::Baseline;
  if (s == "treemap") return Backend::Treemap;
  if (s == "quantum") return Backend::Quantum;
  throw Error("unknown backend '" + s + "'");
}

struct BuildConfig {
  int max_height = 8;
  std::size_t min_split = 2;
  Backend backend = Backend::Treemap;
  std::optional<int> repeats;          // quantum: defaults to ceil(log2 d)
  std::optional<std::uint64_t> seed;   // required for the quantum backend
  bool verify = false;
  bool report = false;

  void validate() const {
    if (max_height < 0) throw Error("max height must be non-negative");
    if (min_split < 2) throw Error("min split must be at least 2");
    if (repeats && *repeats < 1) throw Error("repeats must be positive");
    if (backend == Backend::Quantum && !seed)
      throw Error("the quantum backend needs a seed");
  }
};

/// Winning test at a node.
struct SplitChoice {
  std::size_t attr;
  SplitTest test;
  SplitScore score;
};

inline ClassHistogram histogram_of(const SubsetView& view) {
  ClassHistogram h(view.base().class_count());
  for (std::size_t k = 0; k < view.size(); ++k) h.add(view.label(k));
  return h;
}

/// Evaluates every attribute and keeps the best gain ratio; ties go to the
/// lowest attribute index (the scanners already prefer the lowest theta).
template <ClassCounter Counter>
std::optional<SplitChoice> choose_split(const SubsetView& view,
                                        OpTally* tally = nullptr,
                                        std::uint64_t* evaluations = nullptr) {
  std::optional<SplitChoice> best;
  const std::size_t d = view.base().attribute_count();
  for (std::size_t a = 0; a < d; ++a) {
    auto s = process_attribute<Counter>(view, a, tally);
    if (evaluations) ++*evaluations;
    if (!s || !s->score.valid()) continue;
    if (!best || s->score > best->score) best = SplitChoice{a, s->test, s->score};
  }
  return best;
}

namespace detail {

/// FormTree / Divide shared by every backend. `choose` maps
/// (view, level, stats) to an optional SplitChoice.
template <class Chooser>
class TreeGrower {
 public:
  TreeGrower(const BuildConfig& config, BuildStats& stats, Chooser& choose)
      : config_(config), stats_(stats), choose_(choose) {}

  TreeNode form_tree(const SubsetView& view, int level) {
    ClassHistogram support = histogram_of(view);
    const auto majority = static_cast<std::uint32_t>(support.majority());
    if (support.distinct() <= 1 || level >= config_.max_height ||
        view.size() < config_.min_split)
      return TreeNode::leaf(majority, std::move(support));

    if (stats_.level_ops.size() <= static_cast<std::size_t>(level))
      stats_.level_ops.resize(static_cast<std::size_t>(level) + 1);
    ++stats_.split_searches;
    std::optional<SplitChoice> choice = choose_(view, level, stats_);
    if (!choice) return TreeNode::leaf(majority, std::move(support));

    TreeNode node;
    node.test = choice->test;
    node.cls = majority;
    ++stats_.internal_nodes;
    const std::size_t classes = view.base().class_count();
    for (const SubsetView& part : partition(view, choice->test)) {
      if (part.empty())
        node.children.push_back(TreeNode::leaf(majority, ClassHistogram(classes)));
      else
        node.children.push_back(form_tree(part, level + 1));
    }
    node.support = std::move(support);
    return node;
  }

 private:
  const BuildConfig& config_;
  BuildStats& stats_;
  Chooser& choose_;
};

template <class Chooser>
DecisionTree grow(const Dataset& data, const BuildConfig& config,
                  Chooser& choose) {
  DecisionTree tree;
  tree.schema = data.schema();
  tree.class_labels = data.class_labels();
  tree.height_limit = config.max_height;
  TreeGrower<Chooser> grower(config, tree.stats, choose);
  tree.root = grower.form_tree(SubsetView::all(data), 0);
  return tree;
}

}  // namespace detail

/// Classical growth with dense (baseline) or sparse (treemap) counters.
template <ClassCounter Counter>
DecisionTree train_with(const Dataset& data, const BuildConfig& config) {
  config.validate();
  auto choose = [](const SubsetView& view, int level, BuildStats& stats) {
    return choose_split<Counter>(view, &stats.level_ops[level],
                                 &stats.evaluations);
  };
  return detail::grow(data, config, choose);
}

/// Classical backends only; the quantum backend lives in qbuilder.hpp.
inline DecisionTree train(const Dataset& data, const BuildConfig& config) {
  switch (config.backend) {
    case Backend::Baseline: return train_with<DenseClassCounter>(data, config);
    case Backend::Treemap: return train_with<SparseClassCounter>(data, config);
    case Backend::Quantum: break;
  }
  throw Error("train() handles classical backends; use q_train()");
}

}  // namespace qc50

#endif  // QC50_BUILDER_HPP
