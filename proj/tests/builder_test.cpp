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

#include "qc50/builder.hpp"

#include <gtest/gtest.h>

#include <functional>

#include "qc50/model_io.hpp"
#include "qc50/oracle.hpp"
#include "test_util.hpp"

namespace qc50 {
namespace {

using testing::make_data;

Dataset xor_data() {
  return make_data({Attribute::real("x1"), Attribute::real("x2")},
                   {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {0, 1, 1, 0});
}

BuildConfig config(int h, Backend b = Backend::Treemap) {
  BuildConfig c;
  c.max_height = h;
  c.backend = b;
  return c;
}

TEST(ChooseSplitTest, PicksHighestRatio) {
  // Only b separates the classes perfectly.
  const Dataset d = make_data({Attribute::real("a"), Attribute::discrete("b", 2)},
                              {{1, 1}, {2, 1}, {3, 1}, {4, 2}, {5, 2}, {6, 2}, {7, 1}, {8, 2}},
                              {0, 0, 0, 1, 1, 1, 0, 1});
  const auto c = choose_split<SparseClassCounter>(SubsetView::all(d));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->attr, 1u);
  const Dataset e = make_data({Attribute::real("a"), Attribute::real("b")},
                              {{1, 1}, {2, 3}, {3, 2}, {4, 4}}, {0, 0, 1, 1});
  const auto f = choose_split<SparseClassCounter>(SubsetView::all(e));
  ASSERT_TRUE(f);
  EXPECT_EQ(f->attr, 0u);
  EXPECT_NEAR(f->score.ratio(), 1.0, 1e-12);
  EXPECT_LT(scan_real_attribute(SubsetView::all(e), 1)->score.ratio(), 1.0);
}

TEST(ChooseSplitTest, TiesGoToLowestAttribute) {
  const Dataset d = make_data({Attribute::real("a"), Attribute::real("b")},
                              {{1, 1}, {2, 2}, {3, 3}, {4, 4}}, {0, 0, 1, 1});
  const auto c = choose_split<SparseClassCounter>(SubsetView::all(d));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->attr, 0u);
}

TEST(ChooseSplitTest, AllConstantIsNoSplit) {
  const Dataset d = make_data({Attribute::real("a"), Attribute::discrete("b", 3)},
                              {{1, 2}, {1, 2}, {1, 2}}, {0, 1, 0});
  EXPECT_FALSE(choose_split<SparseClassCounter>(SubsetView::all(d)));
  const DecisionTree t = train(d, config(5));
  EXPECT_TRUE(t.root.is_leaf());
  EXPECT_EQ(t.root.cls, 0u);
}

TEST(FormTreeTest, PureViewIsLeaf) {
  const Dataset d = testing::real_column({1, 2, 3}, {1, 1, 1});
  const DecisionTree t = train(d, config(4));
  EXPECT_TRUE(t.root.is_leaf());
  EXPECT_EQ(t.root.cls, 1u);
  EXPECT_EQ(t.stats.split_searches, 0u);
}

TEST(FormTreeTest, SeparableViewGivesTwoPureLeaves) {
  const Dataset d = testing::real_column({1, 2, 3, 4}, {0, 0, 1, 1});
  const DecisionTree t = train(d, config(1));
  ASSERT_FALSE(t.root.is_leaf());
  ASSERT_EQ(t.root.children.size(), 2u);
  EXPECT_EQ(t.root.children[0].cls, 0u);
  EXPECT_EQ(t.root.children[1].cls, 1u);
  EXPECT_EQ(t.root.children[0].support.distinct(), 1u);
  EXPECT_EQ(t.stats.internal_nodes, 1u);
}

TEST(FormTreeTest, HeightZeroIsMajorityLeaf) {
  const Dataset d = testing::real_column({1, 2, 3, 4, 5}, {1, 0, 1, 0, 1});
  const DecisionTree t = train(d, config(0));
  EXPECT_TRUE(t.root.is_leaf());
  EXPECT_EQ(t.root.cls, 1u);
}

TEST(FormTreeTest, MajorityTieGoesToLowestClass) {
  const Dataset d = testing::real_column({1, 2}, {1, 0});
  EXPECT_EQ(train(d, config(0)).root.cls, 0u);
}

TEST(FormTreeTest, MinSplitStopsGrowth) {
  const Dataset d = testing::real_column({1, 2, 3, 4}, {0, 0, 1, 1});
  BuildConfig c = config(4);
  c.min_split = 5;
  EXPECT_TRUE(train(d, c).root.is_leaf());
}

TEST(FormTreeTest, EmptyDiscreteBranchGetsParentMajority) {
  const Dataset d = testing::discrete_column({1, 1, 1, 3}, {1, 1, 1, 0}, 3);
  const DecisionTree t = train(d, config(2));
  ASSERT_FALSE(t.root.is_leaf());
  ASSERT_EQ(t.root.children.size(), 3u);
  EXPECT_TRUE(t.root.children[1].is_leaf());
  EXPECT_EQ(t.root.children[1].cls, 1u);
  EXPECT_EQ(t.root.children[1].support.total(), 0u);
}

TEST(TrainTest, XorNeedsDepthTwo) {
  const Dataset d = xor_data();
  EXPECT_LT(oracle::best_stump_accuracy(d), 1.0);
  const DecisionTree t = train(d, config(2));
  EXPECT_EQ(depth(t.root), 2u);
  EXPECT_DOUBLE_EQ(training_accuracy(t, d), 1.0);
  std::vector<double> row(2);
  for (std::size_t i = 0; i < d.size(); ++i) {
    row = {d.value(i, 0), d.value(i, 1)};
    EXPECT_EQ(classify(t, row), d.label(i));
  }
}

TEST(TrainTest, SingleSampleIsLeaf) {
  const Dataset d = testing::real_column({3}, {0});
  EXPECT_TRUE(train(d, config(3)).root.is_leaf());
}

TEST(TrainTest, QuantumBackendRejectedByClassicalTrain) {
  EXPECT_THROW(train(xor_data(), config(2, Backend::Quantum)), Error);
  BuildConfig bad = config(-1);
  EXPECT_THROW(train(xor_data(), bad), Error);
}

TEST(ClassifyTest, LeafAndThreshold) {
  DecisionTree t;
  t.schema = AttributeSchema({Attribute::real("x")});
  t.root = TreeNode::leaf(1, ClassHistogram(2));
  std::vector<double> x{42.0};
  EXPECT_EQ(classify(t, x), 1u);

  t.root.test = SplitTest::real(0, 2.5);
  t.root.children = {TreeNode::leaf(0, ClassHistogram(2)), TreeNode::leaf(1, ClassHistogram(2))};
  x = {1.0};
  EXPECT_EQ(classify(t, x), 0u);
  x = {2.5};
  EXPECT_EQ(classify(t, x), 0u);
  x = {2.6};
  EXPECT_EQ(classify(t, x), 1u);
}

TEST(ClassifyTest, DiscreteOutOfDomainThrows) {
  const Dataset d = testing::discrete_column({1, 2}, {0, 1}, 2);
  const DecisionTree t = train(d, config(1));
  std::vector<double> x{3.0};
  EXPECT_THROW(classify(t, x), DomainError);
  x = {1.0, 2.0};
  EXPECT_THROW(classify(t, x), DomainError);
}

// Structural invariants of grown trees on random data: height bound,
// children supports partition the parent support, k matches, and the
// evaluation count is d per split search.
TEST(TrainTest, RandomTreeInvariants) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const Dataset d = testing::random_data(rng, 1 + rng.below(128), 1 + rng.below(6), 1 + rng.below(5));
    const int h = static_cast<int>(rng.below(6));
    const DecisionTree t = train(d, config(h));
    EXPECT_LE(depth(t.root), static_cast<std::size_t>(h));
    EXPECT_EQ(count_internal(t.root), t.stats.internal_nodes);
    EXPECT_EQ(t.stats.evaluations, t.stats.split_searches * d.attribute_count());
    std::function<void(const TreeNode&)> check = [&](const TreeNode& n) {
      if (n.is_leaf()) return;
      ClassHistogram sum(d.class_count());
      for (const auto& c : n.children) {
        for (std::size_t j = 0; j < d.class_count(); ++j) sum.add(j, c.support.count(j));
        check(c);
      }
      EXPECT_EQ(sum, n.support);
    };
    check(t.root);
    EXPECT_EQ(t.root.support.total(), d.size());
  }
}

TEST(ChooseSplitTest, AgreesWithBruteForceOracle) {
  Rng rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    const Dataset d = testing::random_data(rng, 2 + rng.below(40), 1 + rng.below(5), 1 + rng.below(4));
    const SubsetView view(d, testing::random_subset(rng, d.size(), 2));
    const auto c = choose_split<SparseClassCounter>(view);
    const auto o = oracle::brute_force_best_split(view);
    ASSERT_EQ(c.has_value(), o.best.has_value());
    if (!c) continue;
    const auto& best = o.table[*o.best];
    EXPECT_NEAR(c->score.ratio(), best.ratio, 1e-9);
    // The chosen test itself scores the maximum under the oracle.
    bool found = false;
    for (const auto& row : o.table) {
      if (row.attr != c->attr) continue;
      if (row.real && std::abs(row.theta - c->test.theta()) > 1e-12) continue;
      found = true;
      EXPECT_NEAR(row.ratio, best.ratio, 1e-9);
    }
    EXPECT_TRUE(found);
  }
}

TEST(TrainTest, BackendsProduceIdenticalModels) {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset d = testing::random_data(rng, 1 + rng.below(128), 1 + rng.below(8), 1 + rng.below(6));
    const int h = 1 + static_cast<int>(rng.below(6));
    const DecisionTree a = train(d, config(h, Backend::Baseline));
    const DecisionTree b = train(d, config(h, Backend::Treemap));
    EXPECT_EQ(model_to_string(a), model_to_string(b));
    EXPECT_EQ(a.stats.evaluations, b.stats.evaluations);
  }
}

}  // namespace
}  // namespace qc50
