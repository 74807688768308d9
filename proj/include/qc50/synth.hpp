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

#ifndef QC50_SYNTH_HPP
#define QC50_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "random.hpp"

namespace qc50 {

enum class AttributeMix { Real, Discrete, Mixed };

inline AttributeMix parse_mix(const std::string& s) {
  if (s == "real") return AttributeMix::Real;
  if (s == "discrete") return AttributeMix::Discrete;
  if (s == "mixed") return AttributeMix::Mixed;
  throw Error("unknown attribute mix '" + s + "'");
}

/// Synthetic training data. Real attributes are uniform on [0,1), discrete
/// ones uniform on {1..domain}; Mixed alternates real (even index) and
/// discrete (odd index).
///
/// Labels come from a hidden random tree of depth `planted_depth` (random
/// labels when 0), optionally flipped to a random class with probability
/// `label_noise`. Only `classes_present` distinct labels are generated
/// (0 means all); label c is then stored as class c * classes /
/// classes_present, so raising `classes` alone renames the classes without
/// changing the partition structure.
struct SynthConfig {
  std::size_t samples = 256;
  std::size_t attributes = 4;
  std::size_t classes = 2;
  std::size_t classes_present = 0;
  AttributeMix mix = AttributeMix::Mixed;
  int domain = 4;
  int planted_depth = 0;
  double label_noise = 0.0;
  std::uint64_t seed = 1;
};

namespace detail {

struct HiddenNode {
  std::size_t attr = 0;
  double theta = 0.0;
  std::vector<std::unique_ptr<HiddenNode>> children;
  std::size_t label = 0;
};

inline std::unique_ptr<HiddenNode> plant(const AttributeSchema& schema, int depth,
                                         std::size_t labels, Rng& rng) {
  auto node = std::make_unique<HiddenNode>();
  if (depth == 0) {
    node->label = static_cast<std::size_t>(rng.below(labels));
    return node;
  }
  node->attr = static_cast<std::size_t>(rng.below(schema.size()));
  const Attribute& a = schema[node->attr];
  const std::size_t fanout = a.is_real() ? 2 : static_cast<std::size_t>(a.domain_size);
  node->theta = 0.25 + 0.5 * rng.uniform();
  for (std::size_t c = 0; c < fanout; ++c)
    node->children.push_back(plant(schema, depth - 1, labels, rng));
  return node;
}

inline std::size_t hidden_label(const HiddenNode& node, const std::vector<double>& row,
                                const AttributeSchema& schema) {
  const HiddenNode* n = &node;
  while (!n->children.empty()) {
    const double v = row[n->attr];
    const std::size_t c = schema[n->attr].is_real()
                              ? (v <= n->theta ? 0 : 1)
                              : static_cast<std::size_t>(v) - 1;
    n = n->children[c].get();
  }
  return n->label;
}

}  // namespace detail

inline AttributeSchema synthetic_schema(const SynthConfig& cfg) {
  std::vector<Attribute> attrs;
  for (std::size_t j = 0; j < cfg.attributes; ++j) {
    const bool real = cfg.mix == AttributeMix::Real ||
                      (cfg.mix == AttributeMix::Mixed && j % 2 == 0);
    const std::string name = "x" + std::to_string(j + 1);
    attrs.push_back(real ? Attribute::real(name) : Attribute::discrete(name, cfg.domain));
  }
  return AttributeSchema(std::move(attrs));
}

inline Dataset make_synthetic(const SynthConfig& cfg) {
  if (cfg.samples == 0) throw Error("synthetic data needs at least one sample");
  if (cfg.classes == 0) throw Error("synthetic data needs at least one class");
  const std::size_t present = cfg.classes_present == 0 ? cfg.classes : cfg.classes_present;
  if (present > cfg.classes) throw Error("classes_present exceeds classes");

  const AttributeSchema schema = synthetic_schema(cfg);
  Rng root(cfg.seed);
  Rng value_rng = root.split();
  Rng tree_rng = root.split();
  Rng label_rng = root.split();

  const std::size_t d = schema.size();
  std::vector<double> values(cfg.samples * d);
  for (std::size_t i = 0; i < cfg.samples; ++i)
    for (std::size_t j = 0; j < d; ++j)
      values[i * d + j] = schema[j].is_real()
                              ? value_rng.uniform()
                              : static_cast<double>(1 + value_rng.below(
                                                            static_cast<std::uint64_t>(cfg.domain)));

  std::unique_ptr<detail::HiddenNode> hidden;
  if (cfg.planted_depth > 0) hidden = detail::plant(schema, cfg.planted_depth, present, tree_rng);

  std::vector<std::uint32_t> labels(cfg.samples);
  std::vector<double> row(d);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    std::size_t c;
    if (hidden) {
      for (std::size_t j = 0; j < d; ++j) row[j] = values[i * d + j];
      c = detail::hidden_label(*hidden, row, schema);
      if (cfg.label_noise > 0 && label_rng.bernoulli(cfg.label_noise))
        c = static_cast<std::size_t>(label_rng.below(present));
    } else {
      c = static_cast<std::size_t>(label_rng.below(present));
    }
    labels[i] = static_cast<std::uint32_t>(c * cfg.classes / present);
  }

  std::vector<std::string> names(cfg.classes);
  for (std::size_t c = 0; c < cfg.classes; ++c) names[c] = "c" + std::to_string(c);
  return Dataset(schema, std::move(values), std::move(labels), std::move(names));
}

}  // namespace qc50

#endif  // QC50_SYNTH_HPP
