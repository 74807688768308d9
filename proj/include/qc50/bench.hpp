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

#ifndef QC50_BENCH_HPP
#define QC50_BENCH_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "builder.hpp"
#include "dataset.hpp"
#include "qbuilder.hpp"
#include "synth.hpp"

namespace qc50 {

/// One benchmark configuration and its measurements.
///   evals        calls of the per-attribute scoring function
///   counter_ops  counter updates plus slot sweeps (OpTally::total)
///   queries      oracle queries, quantum backend only
///   success      fraction of internal nodes whose chosen attribute attains
///                the classical maximum, quantum backend only
///   wall_ms      build time, only when timing is requested
struct BenchRow {
  Backend backend = Backend::Treemap;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::uint64_t evals = 0;
  std::uint64_t counter_ops = 0;
  std::optional<std::uint64_t> queries;
  std::optional<double> success;
  std::optional<double> wall_ms;
};

inline constexpr const char* kBenchHeader =
    "backend,N,d,M,seed,evals,counter_ops,queries,success,wall_ms";

/// Builds one tree and records its statistics. Quantum builds run in verify
/// mode so that the success column is defined.
inline BenchRow bench_one(const Dataset& data, Backend backend, const BuildConfig& base,
                          std::uint64_t seed, bool timing) {
  BenchRow row;
  row.backend = backend;
  row.n = data.size();
  row.d = data.attribute_count();
  row.m = data.class_count();
  row.seed = seed;
  BuildConfig c = base;
  c.backend = backend;
  c.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  if (backend == Backend::Quantum) {
    c.verify = true;
    const QBuildReport r = q_train(data, c);
    row.evals = r.tree.stats.evaluations;
    row.counter_ops = r.tree.stats.total_ops().total();
    row.queries = r.total_oracle_queries;
    if (!r.per_node.empty())
      row.success = static_cast<double>(*r.nodes_correct) / static_cast<double>(r.per_node.size());
  } else {
    const DecisionTree t = train(data, c);
    row.evals = t.stats.evaluations;
    row.counter_ops = t.stats.total_ops().total();
  }
  if (timing)
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
  return row;
}

/// Cartesian grid over synthetic data. Rows come out ordered by backend,
/// N, d, M, seed, in the order the values are listed.
struct BenchGrid {
  std::vector<Backend> backends{Backend::Baseline, Backend::Treemap};
  std::vector<std::size_t> n{256};
  std::vector<std::size_t> d{4};
  std::vector<std::size_t> m{2};
  std::vector<std::uint64_t> seeds{1};
  SynthConfig synth;  // samples, attributes, classes and seed are overridden
  BuildConfig build;
  bool timing = false;
};

inline std::vector<BenchRow> run_grid(const BenchGrid& g) {
  std::vector<BenchRow> rows;
  for (Backend b : g.backends)
    for (std::size_t n : g.n)
      for (std::size_t d : g.d)
        for (std::size_t m : g.m)
          for (std::uint64_t s : g.seeds) {
            SynthConfig sc = g.synth;
            sc.samples = n;
            sc.attributes = d;
            sc.classes = m;
            sc.seed = s;
            rows.push_back(bench_one(make_synthetic(sc), b, g.build, s, g.timing));
          }
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchHeader << '\n';
  for (const BenchRow& r : rows) {
    out << to_string(r.backend) << ',' << r.n << ',' << r.d << ',' << r.m << ',' << r.seed << ','
        << r.evals << ',' << r.counter_ops << ',';
    if (r.queries) out << *r.queries; else out << "NA";
    out << ',';
    if (r.success) out << format_shortest(*r.success); else out << "NA";
    out << ',';
    if (r.wall_ms) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", *r.wall_ms);
      out << buf;
    } else {
      out << "NA";
    }
    out << '\n';
  }
}

}  // namespace qc50

#endif  // QC50_BENCH_HPP
