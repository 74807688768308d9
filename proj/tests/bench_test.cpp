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

#include "qc50/bench.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace qc50 {
namespace {

TEST(BenchTest, ClassicalRowHasDEvaluationsPerInternalNode) {
  SynthConfig sc;
  sc.samples = 128;
  sc.attributes = 5;
  sc.mix = AttributeMix::Real;
  sc.planted_depth = 2;
  const Dataset d = make_synthetic(sc);
  BuildConfig c;
  c.max_height = 3;
  const BenchRow r = bench_one(d, Backend::Treemap, c, 1, false);
  const DecisionTree t = train(d, c);
  EXPECT_EQ(r.evals, 5 * t.stats.internal_nodes);
  EXPECT_FALSE(r.queries);
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.wall_ms);
}

TEST(BenchTest, GridOrderAndCsv) {
  BenchGrid g;
  g.backends = {Backend::Treemap, Backend::Quantum};
  g.n = {32};
  g.d = {2, 4};
  g.m = {2};
  g.seeds = {1, 2};
  const auto rows = run_grid(g);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].backend, Backend::Treemap);
  EXPECT_EQ(rows[1].seed, 2u);
  EXPECT_EQ(rows[2].d, 4u);
  EXPECT_EQ(rows[4].backend, Backend::Quantum);
  EXPECT_TRUE(rows[4].queries);

  std::ostringstream a, b;
  write_bench_csv(a, rows);
  write_bench_csv(b, run_grid(g));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), kBenchHeader);
}

TEST(BenchTest, TimingFillsWallColumn) {
  BenchGrid g;
  g.n = {16};
  g.backends = {Backend::Baseline};
  g.timing = true;
  const auto rows = run_grid(g);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].wall_ms);
}

}  // namespace
}  // namespace qc50
