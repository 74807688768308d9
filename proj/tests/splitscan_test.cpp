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

#include "qc50/splitscan.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "qc50/oracle.hpp"
#include "test_util.hpp"

namespace qc50 {
namespace {

using testing::discrete_column;
using testing::real_column;

constexpr double kI31 = 0.8112781244591328;

TEST(ScanRealTest, PerfectSplit) {
  const Dataset d = real_column({1, 2, 3, 4}, {0, 0, 1, 1});
  const auto s = scan_real_attribute(SubsetView::all(d), 0);
  ASSERT_TRUE(s);
  EXPECT_DOUBLE_EQ(s->test.theta(), 2.5);
  EXPECT_NEAR(s->score.ratio(), 1.0, 1e-12);
}

TEST(ScanRealTest, ConstantAttributeHasNoCandidate) {
  const Dataset d = real_column({5, 5, 5}, {0, 1, 0});
  EXPECT_FALSE(scan_real_attribute(SubsetView::all(d), 0));
}

// Values frozen from the brute-force enumeration of all three thresholds:
//   theta=1.5  G=0.12255624891826566  P=0.8112781244591328
//   theta=2.5  G=0.31127812445913283  P=1
//   theta=3.5  G=0.8112781244591328   P=0.8112781244591328
TEST(ScanRealTest, ThreeToOneLabels) {
  const Dataset d = real_column({1, 2, 3, 4}, {0, 0, 0, 1});
  const auto s = scan_real_attribute(SubsetView::all(d), 0);
  ASSERT_TRUE(s);
  EXPECT_DOUBLE_EQ(s->test.theta(), 3.5);
  EXPECT_NEAR(s->score.gain(), kI31, 1e-9);
  EXPECT_NEAR(s->score.potential(), kI31, 1e-9);
  EXPECT_NEAR(s->score.ratio(), 1.0, 1e-9);

  const auto cands = real_candidates(build_real_scan_state<SparseClassCounter>(SubsetView::all(d), 0));
  ASSERT_EQ(cands.size(), 3u);
  EXPECT_NEAR(cands[0].score.gain(), 0.12255624891826566, 1e-9);
  EXPECT_NEAR(cands[1].score.gain(), 0.31127812445913283, 1e-9);
  EXPECT_NEAR(cands[1].score.potential(), 1.0, 1e-9);
}

TEST(ScanRealTest, TiesPickSmallestTheta) {
  // Thresholds 1.5 and 3.5 both split off one B sample from a symmetric set.
  const Dataset d = real_column({1, 2, 3, 4}, {1, 0, 0, 1});
  const auto s = scan_real_attribute(SubsetView::all(d), 0);
  ASSERT_TRUE(s);
  EXPECT_DOUBLE_EQ(s->test.theta(), 1.5);
}

TEST(ScanRealTest, AdjacentDoublesStillSeparate) {
  const double a = 1.0, b = std::nextafter(1.0, 2.0);
  const Dataset d = real_column({a, b}, {0, 1});
  const auto s = scan_real_attribute(SubsetView::all(d), 0);
  ASSERT_TRUE(s);
  const auto parts = partition(SubsetView::all(d), s->test);
  EXPECT_EQ(parts[0].size(), 1u);
  EXPECT_EQ(parts[1].size(), 1u);
}

TEST(ProcessDiscreteTest, Examples) {
  const Dataset perfect = discrete_column({1, 1, 2, 2}, {0, 0, 1, 1}, 2);
  auto s = process_discrete_attribute(SubsetView::all(perfect), 0);
  ASSERT_TRUE(s);
  EXPECT_NEAR(s->score.ratio(), 1.0, 1e-12);
  EXPECT_EQ(s->test.branches(), 2);

  const Dataset useless = discrete_column({1, 2, 1, 2}, {0, 0, 1, 1}, 2);
  s = process_discrete_attribute(SubsetView::all(useless), 0);
  ASSERT_TRUE(s);
  EXPECT_NEAR(s->score.gain(), 0.0, 1e-12);
  EXPECT_NEAR(s->score.ratio(), 0.0, 1e-12);

  // Frozen from the brute-force oracle: G=0.2516291673878229,
  // P=0.9182958340544896, ratio 0.274017542121281.
  const Dataset partial = discrete_column({1, 1, 2}, {0, 1, 1}, 2);
  s = process_discrete_attribute(SubsetView::all(partial), 0);
  ASSERT_TRUE(s);
  EXPECT_NEAR(s->score.gain(), 0.2516291673878229, 1e-9);
  EXPECT_NEAR(s->score.potential(), 0.9182958340544896, 1e-9);
  EXPECT_NEAR(s->score.ratio(), 0.274017542121281, 1e-9);
}

TEST(ProcessDiscreteTest, SingleValueHasNoCandidate) {
  const Dataset d = discrete_column({2, 2, 2}, {0, 1, 0}, 3);
  EXPECT_FALSE(process_discrete_attribute(SubsetView::all(d), 0));
}

TEST(ProcessAttributeTest, Dispatches) {
  const Dataset d = testing::make_data({Attribute::real("r"), Attribute::discrete("k", 2), Attribute::real("c")},
                                       {{1, 1, 7}, {2, 1, 7}, {3, 2, 7}, {4, 2, 7}}, {0, 0, 1, 1});
  const SubsetView v = SubsetView::all(d);
  const auto r = process_attribute(v, 0);
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->test.is_real());
  EXPECT_EQ(r->score, scan_real_attribute(v, 0)->score);
  const auto k = process_attribute(v, 1);
  ASSERT_TRUE(k);
  EXPECT_FALSE(k->test.is_real());
  EXPECT_EQ(k->score, process_discrete_attribute(v, 1)->score);
  EXPECT_FALSE(process_attribute(v, 2));
}

// pI[u] and pbI[u] against from-scratch entropies at every u.
TEST(RealScanStateTest, PrefixAndSuffixMatchFromScratch) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + rng.below(5);
    const Dataset d = testing::random_data(rng, 2 + rng.below(63), 1, m);
    const SubsetView view(d, testing::random_subset(rng, d.size(), 1));
    if (!d.schema()[0].is_real()) continue;
    const auto st = build_real_scan_state<SparseClassCounter>(view, 0);
    const std::size_t z = view.size();
    for (std::size_t u = 0; u <= z; ++u) {
      std::vector<std::uint64_t> pre(m, 0), suf(m, 0);
      for (std::size_t p = 0; p < z; ++p) ++(p < u ? pre : suf)[st.sorted_labels[p]];
      EXPECT_NEAR(st.prefix_info[u], oracle::entropy(pre), 1e-9);
      EXPECT_NEAR(st.suffix_info[u], oracle::entropy(suf), 1e-9);
    }
    EXPECT_NEAR(st.prefix_info[z], st.suffix_info[0], 1e-9);
    // pC_j[z] is the class total: the last occurrence of each class sees it.
    std::vector<std::uint64_t> total(m, 0);
    for (std::size_t k = 0; k < z; ++k) ++total[view.label(k)];
    std::vector<std::uint64_t> last(m, 0);
    for (std::size_t p = 0; p < z; ++p) last[st.sorted_labels[p]] = st.own_prefix_count[p];
    EXPECT_EQ(last, total);
    for (std::size_t p = 1; p < z; ++p) EXPECT_LE(st.sorted_values[p - 1], st.sorted_values[p]);
  }
}

TEST(RealScanStateTest, NoThresholdBetweenEqualValues) {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = testing::random_data(rng, 2 + rng.below(40), 1, 3);
    if (!d.schema()[0].is_real()) continue;
    const SubsetView view = SubsetView::all(d);
    const auto st = build_real_scan_state<SparseClassCounter>(view, 0);
    for (const auto& c : real_candidates(st)) {
      EXPECT_LT(st.sorted_values[c.cut - 1], st.sorted_values[c.cut]);
      EXPECT_GE(c.theta, st.sorted_values[c.cut - 1]);
      EXPECT_LT(c.theta, st.sorted_values[c.cut]);
    }
  }
}

// Every intermediate state equals its definition; the final score equals the
// batch recomputation through the criteria functions.
TEST(DiscreteAccumulatorTest, MatchesDefinitionsAfterEveryStep) {
  Rng rng(23);
  auto phi = [](double p) { return p > 0 ? p * std::log2(p) : 0.0; };
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t m = 1 + rng.below(5);
    const int t = 2 + static_cast<int>(rng.below(4));
    const std::size_t z = 2 + rng.below(63);
    std::vector<std::uint32_t> cls(z);
    std::vector<int> val(z);
    for (std::size_t i = 0; i < z; ++i) {
      cls[i] = static_cast<std::uint32_t>(rng.below(m));
      val[i] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(t)));
    }
    DiscreteAccumulator<SparseClassCounter> acc(m, t, z);
    std::vector<std::vector<std::uint64_t>> cw(static_cast<std::size_t>(t), std::vector<std::uint64_t>(m, 0));
    for (std::size_t u = 0; u < z; ++u) {
      acc.add(cls[u], val[u]);
      ++cw[static_cast<std::size_t>(val[u] - 1)][cls[u]];
      double p = 0, s = 0, i = 0;
      std::vector<std::uint64_t> cj(m, 0);
      std::uint64_t nsum = 0;
      for (std::size_t w = 0; w < cw.size(); ++w) {
        std::uint64_t nw = 0;
        for (std::size_t j = 0; j < m; ++j) nw += cw[w][j], cj[j] += cw[w][j];
        EXPECT_EQ(acc.branch_size(w), nw);
        nsum += nw;
        p -= phi(static_cast<double>(nw) / static_cast<double>(z));
        const double iw = oracle::entropy(cw[w]);
        EXPECT_NEAR(acc.branch_information(w), iw, 1e-9);
        s += static_cast<double>(nw) / static_cast<double>(z) * iw;
      }
      for (std::size_t j = 0; j < m; ++j) i -= phi(static_cast<double>(cj[j]) / static_cast<double>(z));
      EXPECT_EQ(nsum, u + 1);
      EXPECT_NEAR(acc.potential(), p, 1e-9);
      EXPECT_NEAR(acc.parent_information(), i, 1e-9);
      EXPECT_NEAR(acc.weighted_branch_information(), s, 1e-9);
    }
    // Batch recomputation.
    ClassHistogram parent(m);
    std::vector<ClassHistogram> branches;
    std::vector<std::uint64_t> sizes;
    for (const auto& b : cw) {
      branches.emplace_back(b);
      sizes.push_back(branches.back().total());
      for (std::size_t j = 0; j < m; ++j) parent.add(j, b[j]);
    }
    std::set<std::uint32_t> classes(cls.begin(), cls.end());
    std::set<std::pair<std::uint32_t, int>> pairs;
    for (std::size_t u = 0; u < z; ++u) pairs.insert({cls[u], val[u]});
    EXPECT_EQ(acc.stored_class_keys(), classes.size());
    EXPECT_EQ(acc.stored_pair_keys(), pairs.size());
    const double g = gain(parent, branches);
    const double pot = potential_information(sizes);
    const SplitScore batch = gain_ratio(g, pot);
    const SplitScore inc = acc.score();
    ASSERT_EQ(inc.valid(), batch.valid());
    EXPECT_NEAR(inc.gain(), g, 1e-9);
    EXPECT_NEAR(inc.potential(), pot, 1e-9);
    if (batch.valid()) {
      EXPECT_NEAR(inc.ratio(), batch.ratio(), 1e-9);
    }
  }
}

TEST(BackendTest, DenseAndSparseScoresAreBitIdentical) {
  Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = testing::random_data(rng, 2 + rng.below(60), 4, 1 + rng.below(5));
    const SubsetView view(d, testing::random_subset(rng, d.size(), 2));
    for (std::size_t a = 0; a < 4; ++a) {
      const auto x = process_attribute<DenseClassCounter>(view, a);
      const auto y = process_attribute<SparseClassCounter>(view, a);
      ASSERT_EQ(x.has_value(), y.has_value());
      if (!x) continue;
      EXPECT_EQ(x->test, y->test);
      EXPECT_EQ(x->score.gain(), y->score.gain());
      EXPECT_EQ(x->score.potential(), y->score.potential());
    }
  }
}

// A node with 3 classes out of M=256: the sparse scan touches O(3) keys for
// init/clear, the dense one Theta(M).
TEST(BackendTest, SparseInitClearIndependentOfClassCount) {
  std::vector<std::vector<double>> rows;
  std::vector<std::uint32_t> labels;
  for (int i = 0; i < 12; ++i) {
    rows.push_back({static_cast<double>(i), static_cast<double>(1 + i % 2)});
    labels.push_back(static_cast<std::uint32_t>((i % 3) * 100));
  }
  const Dataset d = testing::make_data({Attribute::real("r"), Attribute::discrete("k", 2)}, rows, labels, 256);
  const SubsetView v = SubsetView::all(d);
  for (std::size_t a = 0; a < 2; ++a) {
    OpTally sparse, dense;
    process_attribute<SparseClassCounter>(v, a, &sparse);
    process_attribute<DenseClassCounter>(v, a, &dense);
    const std::uint64_t keys = a == 0 ? 3 : 3 + 6;  // classes (+ class/branch pairs)
    EXPECT_LE(sparse.sweeps, 2 * keys) << "attr " << a;
    EXPECT_GE(dense.sweeps, 256u) << "attr " << a;
  }
}

}  // namespace
}  // namespace qc50
