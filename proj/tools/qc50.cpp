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

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qc50/bench.hpp"
#include "qc50/builder.hpp"
#include "qc50/dataset.hpp"
#include "qc50/model_io.hpp"
#include "qc50/qbuilder.hpp"
#include "qc50/synth.hpp"
#include "qc50/tree.hpp"
#include "qc50/verify.hpp"

namespace {

using namespace qc50;

struct TrainArgs {
  std::string data, schema, out, report, backend = "treemap";
  int max_height = 8;
  std::size_t min_split = 2;
  std::optional<std::uint64_t> seed;
  std::optional<int> repeats;
  bool verify = false;
};

struct PredictArgs {
  std::string model, data, out;
};

struct BenchArgs {
  std::vector<std::string> backends{"baseline", "treemap"};
  std::vector<std::size_t> n{256}, d{4}, m{2};
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::string> data, schema;
  std::size_t classes_present = 0;
  std::string mix = "mixed";
  int domain = 4;
  int planted_depth = 0;
  double noise = 0.0;
  int max_height = 8;
  std::size_t min_split = 2;
  std::optional<int> repeats;
  bool timing = false;
  std::string out;
};

struct VerifyArgs {
  std::string suite = "all";
  std::optional<std::size_t> instances, trials, builds;
  std::size_t d = 16;
  std::optional<int> repeats;
  std::optional<std::uint64_t> seed;
};

template <class F>
void with_output(const std::string& path, F&& f) {
  if (path.empty() || path == "-") {
    f(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  f(out);
  if (!out) throw Error("error writing '" + path + "'");
}

int cmd_train(const TrainArgs& a) {
  const Dataset data = load_csv(a.data, load_schema(a.schema));
  BuildConfig c;
  c.backend = parse_backend(a.backend);
  c.max_height = a.max_height;
  c.min_split = a.min_split;
  c.seed = a.seed;
  c.repeats = a.repeats;
  c.verify = a.verify;
  c.report = !a.report.empty();
  c.validate();

  DecisionTree tree;
  if (c.backend == Backend::Quantum) {
    QBuildReport r = q_train(data, c);
    if (c.report)
      with_output(a.report, [&](std::ostream& o) { write_report(o, r); });
    tree = std::move(r.tree);
  } else {
    if (c.report) throw Error("--report needs the quantum backend");
    if (a.verify) throw Error("--verify needs the quantum backend");
    tree = train(data, c);
  }
  with_output(a.out, [&](std::ostream& o) { write_model(o, tree); });
  std::cerr << to_string(c.backend) << ": " << tree.stats.internal_nodes
            << " internal nodes, depth " << depth(tree.root) << ", training accuracy "
            << format_shortest(training_accuracy(tree, data)) << '\n';
  return 0;
}

int cmd_predict(const PredictArgs& a) {
  const DecisionTree tree = load_model(a.model);
  std::ifstream in(a.data, std::ios::binary);
  if (!in) throw DataError("cannot open data file '" + a.data + "'");
  const auto rows = read_feature_rows(in, tree.schema);
  with_output(a.out, [&](std::ostream& o) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::uint32_t cls;
      try {
        cls = classify(tree, rows[i]);
      } catch (const DomainError& e) {
        throw DomainError("row " + std::to_string(i + 1) + ": " + e.what());
      }
      o << tree.class_labels[cls] << '\n';
    }
  });
  return 0;
}

int cmd_bench(const BenchArgs& a) {
  BuildConfig build;
  build.max_height = a.max_height;
  build.min_split = a.min_split;
  build.repeats = a.repeats;
  build.seed = 0;
  build.validate();
  std::vector<Backend> backends;
  for (const auto& b : a.backends) backends.push_back(parse_backend(b));

  std::vector<BenchRow> rows;
  if (!a.data.empty()) {
    if (a.data.size() != a.schema.size())
      throw Error("each --data needs a matching --schema");
    std::vector<Dataset> sets;
    for (std::size_t i = 0; i < a.data.size(); ++i)
      sets.push_back(load_csv(a.data[i], load_schema(a.schema[i])));
    for (Backend b : backends)
      for (const Dataset& ds : sets)
        for (std::uint64_t s : a.seeds) rows.push_back(bench_one(ds, b, build, s, a.timing));
  } else {
    BenchGrid g;
    g.backends = backends;
    g.n = a.n;
    g.d = a.d;
    g.m = a.m;
    g.seeds = a.seeds;
    g.synth.classes_present = a.classes_present;
    g.synth.mix = parse_mix(a.mix);
    g.synth.domain = a.domain;
    g.synth.planted_depth = a.planted_depth;
    g.synth.label_noise = a.noise;
    g.build = build;
    g.timing = a.timing;
    rows = run_grid(g);
  }
  with_output(a.out, [&](std::ostream& o) { write_bench_csv(o, rows); });
  return 0;
}

int cmd_verify(const VerifyArgs& a) {
  using namespace qc50::verify;
  const std::vector<std::string> known{"oracle", "prefix",  "discrete", "backend",
                                       "search", "quantum", "scaling",  "tree"};
  std::vector<std::string> run;
  if (a.suite == "all") {
    run = known;
  } else if (std::find(known.begin(), known.end(), a.suite) != known.end()) {
    run = {a.suite};
  } else {
    throw Error("unknown suite '" + a.suite + "'");
  }
  auto seed = [&](std::uint64_t dflt) { return a.seed.value_or(dflt); };

  bool all_passed = true;
  for (const auto& name : run) {
    SuiteResult r;
    if (name == "oracle") r = oracle_suite(a.instances.value_or(200), seed(1));
    else if (name == "prefix") r = prefix_suite(a.instances.value_or(100), seed(2));
    else if (name == "discrete") r = discrete_suite(a.instances.value_or(200), seed(3));
    else if (name == "backend") r = backend_suite(a.instances.value_or(100), seed(4));
    else if (name == "search") r = search_suite(a.trials.value_or(2000), seed(5));
    else if (name == "quantum") r = quantum_suite(a.trials.value_or(5000), a.d, a.repeats, seed(6));
    else if (name == "scaling") r = scaling_suite(a.trials.value_or(400), seed(7));
    else r = tree_suite(a.builds.value_or(1000), a.d, 4, seed(8));
    all_passed &= r.passed;
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision trees with classical and simulated quantum attribute selection"};
  app.require_subcommand(1);

  TrainArgs ta;
  auto* train_cmd = app.add_subcommand("train", "Train a tree and write the model file");
  train_cmd->add_option("--data", ta.data, "Labeled CSV")->required();
  train_cmd->add_option("--schema", ta.schema, "Schema file")->required();
  train_cmd->add_option("--out", ta.out, "Model output path")->required();
  train_cmd->add_option("--backend", ta.backend, "baseline, treemap or quantum")
      ->check(CLI::IsMember({"baseline", "treemap", "quantum"}));
  train_cmd->add_option("--max-height", ta.max_height, "Height limit h");
  train_cmd->add_option("--min-split", ta.min_split, "Smallest subset that is split");
  train_cmd->add_option("--seed", ta.seed, "Seed (required for quantum)");
  train_cmd->add_option("--repeats", ta.repeats, "Maximum-finding repetitions per node");
  train_cmd->add_flag("--verify", ta.verify, "Check each quantum choice classically");
  train_cmd->add_option("--report", ta.report, "Write the quantum build report here");

  PredictArgs pa;
  auto* predict_cmd = app.add_subcommand("predict", "Classify rows with a saved model");
  predict_cmd->add_option("--model", pa.model, "Model file")->required();
  predict_cmd->add_option("--data", pa.data, "CSV with the model's attribute columns")->required();
  predict_cmd->add_option("--out", pa.out, "Output path (default stdout)");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Emit a metrics table as CSV");
  bench_cmd->add_option("--backend", ba.backends, "Backends")->delimiter(',');
  bench_cmd->add_option("--n", ba.n, "Sample counts")->delimiter(',');
  bench_cmd->add_option("--d", ba.d, "Attribute counts")->delimiter(',');
  bench_cmd->add_option("--m", ba.m, "Class counts")->delimiter(',');
  bench_cmd->add_option("--seed", ba.seeds, "Seeds")->delimiter(',');
  bench_cmd->add_option("--data", ba.data, "Labeled CSV instead of synthetic data");
  bench_cmd->add_option("--schema", ba.schema, "Schema for each --data");
  bench_cmd->add_option("--classes-present", ba.classes_present,
                        "Distinct labels generated (0 = all)");
  bench_cmd->add_option("--mix", ba.mix, "real, discrete or mixed")
      ->check(CLI::IsMember({"real", "discrete", "mixed"}));
  bench_cmd->add_option("--domain", ba.domain, "Discrete domain size T");
  bench_cmd->add_option("--planted-depth", ba.planted_depth, "Depth of the hidden label tree");
  bench_cmd->add_option("--noise", ba.noise, "Label noise probability");
  bench_cmd->add_option("--max-height", ba.max_height, "Height limit h");
  bench_cmd->add_option("--min-split", ba.min_split, "Smallest subset that is split");
  bench_cmd->add_option("--repeats", ba.repeats, "Maximum-finding repetitions per node");
  bench_cmd->add_flag("--timing", ba.timing, "Fill the wall_ms column");
  bench_cmd->add_option("--out", ba.out, "Output path (default stdout)");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized self-checks");
  verify_cmd->add_option("--suite", va.suite,
                         "all, oracle, prefix, discrete, backend, search, quantum, scaling, tree");
  verify_cmd->add_option("--instances", va.instances, "Instances for the deterministic suites");
  verify_cmd->add_option("--trials", va.trials, "Trials for search, quantum and scaling");
  verify_cmd->add_option("--builds", va.builds, "Quantum builds for the tree suite");
  verify_cmd->add_option("--d", va.d, "Attribute count for quantum and tree");
  verify_cmd->add_option("--repeats", va.repeats, "Repetitions for the quantum suite");
  verify_cmd->add_option("--seed", va.seed, "Seed for every selected suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) return cmd_train(ta);
    if (*predict_cmd) return cmd_predict(pa);
    if (*bench_cmd) return cmd_bench(ba);
    if (*verify_cmd) return cmd_verify(va);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
