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

#ifndef QC50_QBUILDER_HPP
#define QC50_QBUILDER_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "builder.hpp"
#include "qsearch.hpp"
#include "random.hpp"
#include "splitscan.hpp"

namespace qc50 {

/// One internal node of a quantum build, numbered in depth-first order.
struct QNodeRecord {
  std::size_t node_id = 0;
  std::size_t chosen_attr = 0;
  std::optional<std::size_t> true_best_attr;  // set in verify mode
  std::optional<bool> correct;                // chosen attr attains the max
  std::uint64_t oracle_queries = 0;
  int repeats = 1;
};

struct QBuildReport {
  DecisionTree tree;
  std::vector<QNodeRecord> per_node;
  std::uint64_t total_oracle_queries = 0;
  std::optional<std::size_t> nodes_correct;  // set in verify mode
};

/// Outcome of one quantum split search.
struct QSplitResult {
  std::optional<SplitChoice> choice;
  std::size_t winner = 0;
  SearchStats stats;
  std::uint64_t evaluations = 0;
  int repeats = 1;
};

// Gain ratios of different attributes come out of different arithmetic, so
// ties are judged with a small tolerance.
inline bool attains(const SplitScore& s, const SplitScore& best) {
  if (!best.valid()) return !s.valid();
  return s.valid() && s.ratio() >= best.ratio() - 1e-12;
}

/// Attribute selection by repeated maximum finding over the d attributes,
/// with process_attribute as the scoring function. `repeats` defaults to
/// ceil(log2 d).
inline QSplitResult q_choose_split(const SubsetView& view, Rng& rng,
                                   std::optional<int> repeats = std::nullopt,
                                   OpTally* tally = nullptr) {
  const std::size_t d = view.base().attribute_count();
  std::vector<std::optional<AttributeSplit>> splits(d);
  ScoringOracle<SplitScore> oracle(d, [&](std::size_t a) {
    splits[a] = process_attribute<SparseClassCounter>(view, a, tally);
    return splits[a] ? splits[a]->score : SplitScore::invalid();
  });

  QSplitResult r;
  r.repeats = repeats.value_or(default_repeats(d));
  auto [winner, stats] = repeated_max(oracle, r.repeats, rng);
  r.stats = stats;

  if (!oracle.cached(winner).valid()) {
    // Fall back to the best valid index among those actually queried.
    std::optional<std::size_t> alt;
    for (std::size_t a = 0; a < d; ++a)
      if (oracle.was_queried(a) && oracle.cached(a).valid() &&
          (!alt || oracle.cached(*alt) < oracle.cached(a)))
        alt = a;
    if (alt) winner = *alt;
  }
  r.winner = winner;
  r.evaluations = oracle.evaluations();
  if (splits[winner] && splits[winner]->score.valid())
    r.choice = SplitChoice{winner, splits[winner]->test, splits[winner]->score};
  return r;
}

/// Tree growth with q_choose_split at every node. In verify mode each node
/// is also checked against the classical choose_split on the same view.
inline QBuildReport q_train(const Dataset& data, const BuildConfig& config,
                            Rng& rng) {
  BuildConfig cfg = config;
  cfg.backend = Backend::Quantum;
  if (!cfg.seed) cfg.seed = 0;
  cfg.validate();

  QBuildReport report;
  auto choose = [&](const SubsetView& view, int level, BuildStats& stats) {
    QSplitResult r = q_choose_split(view, rng, cfg.repeats, &stats.level_ops[level]);
    stats.evaluations += r.evaluations;
    stats.oracle_queries += r.stats.oracle_queries;
    report.total_oracle_queries += r.stats.oracle_queries;
    if (!r.choice) return r.choice;

    QNodeRecord rec;
    rec.node_id = report.per_node.size();
    rec.chosen_attr = r.winner;
    rec.oracle_queries = r.stats.oracle_queries;
    rec.repeats = r.repeats;
    if (cfg.verify) {
      const auto classical = choose_split<SparseClassCounter>(view);
      rec.true_best_attr = classical ? classical->attr : r.winner;
      rec.correct = classical ? attains(r.choice->score, classical->score) : true;
    }
    report.per_node.push_back(rec);
    return r.choice;
  };
  report.tree = detail::grow(data, cfg, choose);
  if (cfg.verify) {
    std::size_t ok = 0;
    for (const auto& rec : report.per_node) ok += rec.correct.value_or(false);
    report.nodes_correct = ok;
  }
  return report;
}

inline QBuildReport q_train(const Dataset& data, const BuildConfig& config) {
  if (!config.seed) throw Error("the quantum backend needs a seed");
  Rng rng(*config.seed);
  return q_train(data, config, rng);
}

/// Report layout: {"internal_nodes", "total_oracle_queries", "nodes_correct",
/// "per_node": [{"node_id", "chosen_attr", "true_best_attr", "correct",
/// "oracle_queries", "repeats"}]}. Verify-only fields are null otherwise.
inline nlohmann::ordered_json report_to_json(const QBuildReport& r) {
  nlohmann::ordered_json j;
  j["internal_nodes"] = r.tree.stats.internal_nodes;
  j["total_oracle_queries"] = r.total_oracle_queries;
  j["nodes_correct"] = r.nodes_correct ? nlohmann::ordered_json(*r.nodes_correct)
                                       : nlohmann::ordered_json(nullptr);
  auto& nodes = j["per_node"] = nlohmann::ordered_json::array();
  for (const auto& rec : r.per_node) {
    nlohmann::ordered_json n;
    n["node_id"] = rec.node_id;
    n["chosen_attr"] = rec.chosen_attr;
    n["true_best_attr"] = rec.true_best_attr
                              ? nlohmann::ordered_json(*rec.true_best_attr)
                              : nlohmann::ordered_json(nullptr);
    n["correct"] = rec.correct ? nlohmann::ordered_json(*rec.correct)
                               : nlohmann::ordered_json(nullptr);
    n["oracle_queries"] = rec.oracle_queries;
    n["repeats"] = rec.repeats;
    nodes.push_back(std::move(n));
  }
  return j;
}

inline void write_report(std::ostream& out, const QBuildReport& r) {
  out << report_to_json(r).dump(2) << '\n';
}

}  // namespace qc50

#endif  // QC50_QBUILDER_HPP
