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

#ifndef QC50_VERIFY_HPP
#define QC50_VERIFY_HPP

// Self-contained randomized checks of the split criteria, the counters and
// the quantum search. Every suite is deterministic given its seed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "builder.hpp"
#include "model_io.hpp"
#include "oracle.hpp"
#include "qbuilder.hpp"
#include "qsearch.hpp"
#include "random.hpp"
#include "splitscan.hpp"
#include "synth.hpp"

namespace qc50::verify {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

/// Random dataset of n rows with d attributes of random kind and m classes.
/// Real values come from a small pool a third of the time so that ties
/// occur.
inline Dataset random_instance(Rng& rng, std::size_t n, std::size_t d, std::size_t m) {
  std::vector<Attribute> attrs;
  for (std::size_t j = 0; j < d; ++j) {
    if (rng.below(2) == 0)
      attrs.push_back(Attribute::real("r" + std::to_string(j)));
    else
      attrs.push_back(Attribute::discrete("d" + std::to_string(j),
                                          2 + static_cast<int>(rng.below(4))));
  }
  std::vector<double> values(n * d);
  std::vector<std::uint32_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double& v = values[i * d + j];
      if (attrs[j].is_real())
        v = rng.below(3) == 0 ? static_cast<double>(rng.below(5)) : rng.uniform() * 10;
      else
        v = static_cast<double>(1 + rng.below(static_cast<std::uint64_t>(attrs[j].domain_size)));
    }
    labels[i] = static_cast<std::uint32_t>(rng.below(m));
  }
  std::vector<std::string> names;
  for (std::size_t c = 0; c < m; ++c) names.push_back("k" + std::to_string(c));
  return Dataset(AttributeSchema(std::move(attrs)), std::move(values), std::move(labels),
                 std::move(names));
}

/// Random non-empty subset in shuffled order.
inline SubsetView random_view(const Dataset& data, Rng& rng, std::size_t min_size) {
  std::vector<SubsetView::Index> idx(data.size());
  std::iota(idx.begin(), idx.end(), SubsetView::Index{0});
  for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
  idx.resize(min_size + rng.below(data.size() - min_size + 1));
  return SubsetView(data, std::move(idx));
}

/// n real attributes on [0,1); the label is whether attribute `best` exceeds
/// 0.5, so `best` is the only informative column.
inline Dataset one_informative(std::size_t d, std::size_t best, std::size_t n, Rng& rng) {
  std::vector<Attribute> attrs;
  for (std::size_t j = 0; j < d; ++j) attrs.push_back(Attribute::real("x" + std::to_string(j + 1)));
  std::vector<double> values(n * d);
  std::vector<std::uint32_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) values[i * d + j] = rng.uniform();
    labels[i] = values[i * d + best] > 0.5 ? 1 : 0;
  }
  return Dataset(AttributeSchema(std::move(attrs)), std::move(values), std::move(labels),
                 {"lo", "hi"});
}

inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

/// Scores d distinct random values, one per index; the maximum is unique.
inline std::vector<double> distinct_scores(std::size_t k, Rng& rng) {
  std::vector<double> s(k);
  std::iota(s.begin(), s.end(), 0.0);
  for (std::size_t i = k; i > 1; --i) std::swap(s[i - 1], s[rng.below(i)]);
  return s;
}

template <class F>
SuiteResult timed(const std::string& name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r = body();
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// True when at every internal node of `node` the chosen attribute beats
// every other attribute by more than `margin` in gain ratio.
inline bool strict_everywhere(const TreeNode& node, const SubsetView& view, double margin) {
  if (node.is_leaf()) return true;
  const std::size_t chosen = node.test->attr;
  const auto mine = process_attribute(view, chosen);
  if (!mine) return false;
  for (std::size_t a = 0; a < view.base().attribute_count(); ++a) {
    if (a == chosen) continue;
    const auto other = process_attribute(view, a);
    if (other && other->score.valid() && !(other->score.ratio() < mine->score.ratio() - margin))
      return false;
  }
  const auto parts = partition(view, *node.test);
  for (std::size_t c = 0; c < parts.size(); ++c)
    if (!parts[c].empty() && !strict_everywhere(node.children[c], parts[c], margin)) return false;
  return true;
}

}  // namespace detail

/// Every candidate test scored by splitscan against the brute-force oracle
/// on random subsets of random datasets.
inline SuiteResult oracle_suite(std::size_t instances = 200, std::uint64_t seed = 1,
                                double tol = 1e-9) {
  return detail::timed("oracle", [&] {
    Rng rng(seed);
    double worst = 0.0;
    std::size_t candidates = 0;
    bool shape_ok = true;
    for (std::size_t t = 0; t < instances; ++t) {
      const std::size_t n = 2 + rng.below(63);
      const std::size_t d = 1 + rng.below(6);
      const std::size_t m = 2 + rng.below(3);
      const Dataset data = detail::random_instance(rng, n, d, m);
      const SubsetView view = detail::random_view(data, rng, 1);
      const auto ref = oracle::brute_force_best_split(view);

      std::vector<std::pair<double, SplitScore>> mine;  // theta (real) and score
      for (std::size_t a = 0; a < d; ++a) {
        if (data.schema()[a].is_real()) {
          const auto st = build_real_scan_state<SparseClassCounter>(view, a);
          for (const auto& c : real_candidates(st)) mine.emplace_back(c.theta, c.score);
        } else if (auto s = process_discrete_attribute(view, a)) {
          mine.emplace_back(0.0, s->score);
        }
      }
      if (mine.size() != ref.table.size()) {
        shape_ok = false;
        continue;
      }
      for (std::size_t i = 0; i < mine.size(); ++i) {
        const auto& o = ref.table[i];
        const SplitScore& s = mine[i].second;
        if (o.real) worst = std::max(worst, std::abs(o.theta - mine[i].first));
        worst = std::max(worst, std::abs(o.gain - s.gain()));
        worst = std::max(worst, std::abs(o.potential - s.potential()));
        if (s.valid() != o.valid) shape_ok = false;
        if (s.valid() && o.valid) worst = std::max(worst, std::abs(o.ratio - s.ratio()));
      }
      candidates += mine.size();
      const auto pick = choose_split<SparseClassCounter>(view);
      if (pick.has_value() != ref.best.has_value()) shape_ok = false;
      if (pick && ref.best)
        worst = std::max(worst, std::abs(pick->score.ratio() - ref.table[*ref.best].ratio));
    }
    SuiteResult r;
    r.passed = shape_ok && worst <= tol;
    r.detail = std::to_string(instances) + " instances, " + std::to_string(candidates) +
               " candidates, max |delta| " + detail::fmt("%.3g", worst) +
               (shape_ok ? "" : ", candidate sets differ");
    return r;
  });
}

/// Prefix and suffix entropies of the real scan against from-scratch
/// entropies of the sorted labels.
inline SuiteResult prefix_suite(std::size_t instances = 100, std::uint64_t seed = 2,
                                double tol = 1e-9) {
  return detail::timed("prefix", [&] {
    Rng rng(seed);
    double worst = 0.0;
    bool sorted = true;
    for (std::size_t t = 0; t < instances; ++t) {
      const std::size_t n = 2 + rng.below(199);
      const std::size_t m = 2 + rng.below(5);
      std::vector<double> values(n);
      std::vector<std::uint32_t> labels(n);
      for (std::size_t i = 0; i < n; ++i) {
        values[i] = rng.below(4) == 0 ? static_cast<double>(rng.below(8)) : rng.uniform() * 8;
        labels[i] = static_cast<std::uint32_t>(rng.below(m));
      }
      std::vector<std::string> names;
      for (std::size_t c = 0; c < m; ++c) names.push_back("k" + std::to_string(c));
      const Dataset data(AttributeSchema({Attribute::real("x")}), std::move(values),
                         std::move(labels), std::move(names));
      const SubsetView view = detail::random_view(data, rng, 1);
      const auto st = build_real_scan_state<DenseClassCounter>(view, 0);
      const std::size_t z = st.size();
      sorted &= std::is_sorted(st.sorted_values.begin(), st.sorted_values.end());
      for (std::size_t u = 0; u <= z; ++u) {
        std::vector<std::uint64_t> left(m, 0), right(m, 0);
        for (std::size_t p = 0; p < z; ++p) ++(p < u ? left : right)[st.sorted_labels[p]];
        worst = std::max(worst, std::abs(st.prefix_info[u] - oracle::entropy(left)));
        worst = std::max(worst, std::abs(st.suffix_info[u] - oracle::entropy(right)));
      }
    }
    SuiteResult r;
    r.passed = sorted && worst <= tol;
    r.detail = std::to_string(instances) + " sorted subsets, max |delta| " +
               detail::fmt("%.3g", worst);
    return r;
  });
}

/// Final state of the incremental discrete accumulator against a batch
/// recomputation from the branch histograms, for both counter kinds.
inline SuiteResult discrete_suite(std::size_t instances = 200, std::uint64_t seed = 3,
                                  double tol = 1e-9) {
  return detail::timed("discrete", [&] {
    Rng rng(seed);
    double worst = 0.0;
    bool same = true;
    for (std::size_t t = 0; t < instances; ++t) {
      const std::size_t z = 1 + rng.below(200);
      const std::size_t m = 1 + rng.below(6);
      const int domain = 2 + static_cast<int>(rng.below(7));
      std::vector<std::uint32_t> cls(z);
      std::vector<int> val(z);
      std::vector<std::uint64_t> parent(m, 0);
      std::vector<std::vector<std::uint64_t>> branches(static_cast<std::size_t>(domain),
                                                       std::vector<std::uint64_t>(m, 0));
      for (std::size_t i = 0; i < z; ++i) {
        cls[i] = static_cast<std::uint32_t>(rng.below(m));
        val[i] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(domain)));
        ++parent[cls[i]];
        ++branches[static_cast<std::size_t>(val[i] - 1)][cls[i]];
      }
      const auto ref = oracle::score_partition(0, parent, branches);
      DiscreteAccumulator<SparseClassCounter> sparse(m, domain, z);
      DiscreteAccumulator<DenseClassCounter> dense(m, domain, z);
      for (std::size_t i = 0; i < z; ++i) {
        sparse.add(cls[i], val[i]);
        dense.add(cls[i], val[i]);
      }
      const SplitScore s = sparse.score();
      worst = std::max(worst, std::abs(s.gain() - ref.gain));
      worst = std::max(worst, std::abs(s.potential() - ref.potential));
      worst = std::max(worst, std::abs(sparse.parent_information() - ref.parent_info));
      if (s.valid() != ref.valid) same = false;
      if (s.valid() && ref.valid) worst = std::max(worst, std::abs(s.ratio() - ref.ratio));
      same &= s == dense.score();
    }
    SuiteResult r;
    r.passed = same && worst <= tol;
    r.detail = std::to_string(instances) + " instances, max |delta| " +
               detail::fmt("%.3g", worst) + (same ? "" : ", counters disagree");
    return r;
  });
}

/// Counter-operation totals (updates + sweeps) of one classical build on
/// discrete data with four classes in use out of `classes`.
inline OpTally class_grid_ops(Backend backend, std::size_t classes, std::size_t n = 512,
                              std::size_t d = 4, std::uint64_t seed = 1) {
  SynthConfig sc;
  sc.samples = n;
  sc.attributes = d;
  sc.classes = classes;
  sc.classes_present = 4;
  sc.mix = AttributeMix::Discrete;
  sc.seed = seed;
  BuildConfig c;
  c.backend = backend;
  return train(make_synthetic(sc), c).stats.total_ops();
}

/// Baseline and treemap models must serialize identically; treemap counter
/// work must not depend on the number of classes M while the baseline's
/// grows at least 8-fold from M=4 to M=256.
inline SuiteResult backend_suite(std::size_t datasets = 100, std::uint64_t seed = 4) {
  return detail::timed("backend", [&] {
    Rng rng(seed);
    std::size_t identical = 0;
    for (std::size_t t = 0; t < datasets; ++t) {
      const std::size_t n = 2 + rng.below(299);
      const std::size_t d = 1 + rng.below(6);
      const std::size_t m = 2 + rng.below(5);
      const Dataset data = detail::random_instance(rng, n, d, m);
      BuildConfig c;
      c.max_height = 1 + static_cast<int>(rng.below(8));
      c.backend = Backend::Baseline;
      const std::string a = model_to_string(train(data, c));
      c.backend = Backend::Treemap;
      identical += a == model_to_string(train(data, c));
    }
    std::vector<std::uint64_t> base, tm;
    for (std::size_t m : {4u, 64u, 256u}) {
      base.push_back(class_grid_ops(Backend::Baseline, m).total());
      tm.push_back(class_grid_ops(Backend::Treemap, m).total());
    }
    const bool flat = tm[0] == tm[1] && tm[1] == tm[2];
    const double ratio = static_cast<double>(base[2]) / static_cast<double>(base[0]);
    const bool grows = base[0] < base[1] && base[1] < base[2] && ratio >= 8.0;
    SuiteResult r;
    r.passed = identical == datasets && flat && grows;
    r.detail = std::to_string(identical) + "/" + std::to_string(datasets) +
               " identical models; treemap ops " + std::to_string(tm[0]) + "/" +
               std::to_string(tm[1]) + "/" + std::to_string(tm[2]) + ", baseline ops " +
               std::to_string(base[0]) + "/" + std::to_string(base[1]) + "/" +
               std::to_string(base[2]) + " (ratio " + detail::fmt("%.2f", ratio) +
               ") for M=4/64/256";
    return r;
  });
}

/// Success frequency of a single maximum-finding run with a unique maximum.
inline double single_run_success(std::size_t k, std::size_t trials, Rng& rng) {
  std::size_t ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto scores = detail::distinct_scores(k, rng);
    ScoringOracle<double> f(k, [&](std::size_t i) { return scores[i]; });
    ok += durr_hoyer_max(f, rng).second.succeeded;
  }
  return static_cast<double>(ok) / static_cast<double>(trials);
}

/// A single run finds the maximum with frequency at least 0.48.
inline SuiteResult search_suite(std::size_t trials = 2000, std::uint64_t seed = 5) {
  return detail::timed("search", [&] {
    Rng rng(seed);
    bool ok = true;
    std::string text;
    for (std::size_t k : {8u, 32u, 128u}) {
      const double f = single_run_success(k, trials, rng);
      ok &= f >= 0.48;
      text += (text.empty() ? "" : ", ") + ("K=" + std::to_string(k) + ": ") +
                detail::fmt("%.4f", f);
    }
    SuiteResult r;
    r.passed = ok;
    r.detail = "success over " + std::to_string(trials) + " runs " + text + " (need 0.48)";
    return r;
  });
}

/// Per-node success of the repeated quantum attribute selection on d real
/// attributes with one strictly best attribute. The bound is 1 - 2^-repeats.
inline SuiteResult quantum_suite(std::size_t trials = 5000, std::size_t d = 16,
                                 std::optional<int> repeats = std::nullopt,
                                 std::uint64_t seed = 6) {
  return detail::timed("quantum", [&] {
    Rng rng(seed);
    const int reps = repeats.value_or(default_repeats(d));
    const std::size_t best = static_cast<std::size_t>(rng.below(d));
    const Dataset data = detail::one_informative(d, best, 64, rng);
    const SubsetView view = SubsetView::all(data);
    const auto classical = choose_split<SparseClassCounter>(view);
    std::size_t ok = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto q = q_choose_split(view, rng, reps);
      ok += q.choice && classical && q.choice->attr == classical->attr;
    }
    const double freq = static_cast<double>(ok) / static_cast<double>(trials);
    const double bound = 1.0 - std::ldexp(1.0, -reps);
    SuiteResult r;
    r.passed = classical && classical->attr == best && freq >= bound - 0.0075;
    r.detail = "d=" + std::to_string(d) + ", repeats=" + std::to_string(reps) + ", success " +
               detail::fmt("%.4f", freq) + " over " + std::to_string(trials) + " trials, bound " +
               detail::fmt("%.4f", bound);
    return r;
  });
}

/// Mean queries of single runs against K; the log-log slope must lie in
/// [0.35, 0.65] and no run may exceed its budget.
inline SuiteResult scaling_suite(std::size_t trials = 400, std::uint64_t seed = 7) {
  return detail::timed("scaling", [&] {
    Rng rng(seed);
    std::vector<double> xs, ys;
    bool within = true;
    std::string text;
    for (std::size_t k : {4u, 16u, 64u, 256u, 1024u}) {
      double total = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const auto scores = detail::distinct_scores(k, rng);
        ScoringOracle<double> f(k, [&](std::size_t i) { return scores[i]; });
        const auto q = durr_hoyer_max(f, rng).second.oracle_queries;
        within &= q <= query_budget(k);
        total += static_cast<double>(q);
      }
      const double mean = total / static_cast<double>(trials);
      xs.push_back(std::log(static_cast<double>(k)));
      ys.push_back(std::log(mean));
      text += (text.empty() ? "" : ", ") + ("K=" + std::to_string(k) + ": ") +
                detail::fmt("%.1f", mean);
    }
    const double s = detail::slope(xs, ys);
    SuiteResult r;
    r.passed = within && s >= 0.35 && s <= 0.65;
    r.detail = "slope " + detail::fmt("%.3f", s) + ", mean queries " + text +
               (within ? ", all within budget" : ", budget exceeded");
    return r;
  });
}

/// A planted all-real dataset whose classical tree has a strictly best
/// attribute at every internal node.
struct PlantedCase {
  Dataset data;
  DecisionTree classical;
  std::string model;
  std::size_t k = 0;
};

inline PlantedCase planted_strict_case(std::size_t d, int height, std::uint64_t& seed) {
  for (;; ++seed) {
    SynthConfig sc;
    sc.samples = 256;
    sc.attributes = d;
    sc.mix = AttributeMix::Real;
    sc.planted_depth = height;
    sc.seed = seed;
    Dataset data = make_synthetic(sc);
    BuildConfig c;
    c.max_height = height;
    DecisionTree tree = train(data, c);
    if (tree.stats.internal_nodes == 0) continue;
    if (!detail::strict_everywhere(tree.root, SubsetView::all(data), 1e-9)) continue;
    PlantedCase pc{std::move(data), std::move(tree), {}, 0};
    pc.model = model_to_string(pc.classical);
    pc.k = pc.classical.stats.internal_nodes;
    ++seed;
    return pc;
  }
}

/// Quantum builds on planted strict datasets reproduce the classical tree
/// with frequency at least (1 - 1/d)^k - 0.05 on every dataset.
inline SuiteResult tree_suite(std::size_t builds = 1000, std::size_t d = 16,
                              std::size_t datasets = 4, std::uint64_t seed = 8) {
  return detail::timed("tree", [&] {
    std::uint64_t data_seed = seed * 1000;
    bool ok = true;
    std::string text;
    const std::size_t per = (builds + datasets - 1) / datasets;
    std::size_t done = 0;
    for (std::size_t i = 0; i < datasets; ++i) {
      const PlantedCase pc = planted_strict_case(d, 3, data_seed);
      std::size_t same = 0;
      for (std::size_t b = 0; b < per; ++b) {
        BuildConfig c;
        c.max_height = 3;
        c.seed = seed * 1000003 + done + b;
        same += model_to_string(q_train(pc.data, c).tree) == pc.model;
      }
      done += per;
      const double freq = static_cast<double>(same) / static_cast<double>(per);
      const double bound =
          std::pow(1.0 - 1.0 / static_cast<double>(d), static_cast<double>(pc.k));
      ok &= freq >= bound - 0.05;
      text += (text.empty() ? "" : "; ") + ("k=" + std::to_string(pc.k) + ": ") +
                detail::fmt("%.4f", freq) + " vs " + detail::fmt("%.4f", bound);
    }
    SuiteResult r;
    r.passed = ok;
    r.detail = std::to_string(done) + " builds, d=" + std::to_string(d) + ", match " + text;
    return r;
  });
}

}  // namespace qc50::verify

#endif  // QC50_VERIFY_HPP
