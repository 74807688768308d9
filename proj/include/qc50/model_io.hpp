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

#ifndef QC50_MODEL_IO_HPP
#define QC50_MODEL_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "tree.hpp"

namespace qc50 {

// Model file layout (field order fixed, reals printed with %.17g):
//   {"schema": [{"name", "kind", "domain"?}...],
//    "class_label_mapping": [label of class 0, ...],
//    "root": node}
//   node = {"kind": "real"|"discrete", "attr", "theta"?, "children", "support"}
//        | {"kind": "leaf", "class", "support"}
// Attribute and class indices are 0-based.

namespace detail {

inline std::string json_string(const std::string& s) {
  return nlohmann::json(s).dump();
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_support(std::ostream& out, const ClassHistogram& h) {
  out << "\"support\": [";
  for (std::size_t j = 0; j < h.class_count(); ++j)
    out << (j ? "," : "") << h.count(j);
  out << ']';
}

inline void write_node(std::ostream& out, const TreeNode& n, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent) + 2, ' ');
  out << "{\n";
  if (n.is_leaf()) {
    out << inner << "\"kind\": \"leaf\",\n";
    out << inner << "\"class\": " << n.cls << ",\n";
  } else {
    const SplitTest& t = *n.test;
    out << inner << "\"kind\": \"" << (t.is_real() ? "real" : "discrete")
        << "\",\n";
    out << inner << "\"attr\": " << t.attr << ",\n";
    if (t.is_real()) out << inner << "\"theta\": " << format_real(t.theta()) << ",\n";
    out << inner << "\"children\": [";
    for (std::size_t c = 0; c < n.children.size(); ++c) {
      out << (c ? ", " : "");
      write_node(out, n.children[c], indent + 2);
    }
    out << "],\n";
  }
  out << inner;
  write_support(out, n.support);
  out << '\n' << pad << '}';
}

inline TreeNode read_node(const nlohmann::json& j, const AttributeSchema& schema,
                          std::size_t classes) {
  TreeNode n;
  std::vector<std::uint64_t> support = j.at("support").get<std::vector<std::uint64_t>>();
  if (support.size() != classes) throw Error("model: support size mismatch");
  n.support = ClassHistogram(std::move(support));
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "leaf") {
    n.cls = j.at("class").get<std::uint32_t>();
    if (n.cls >= classes) throw Error("model: leaf class out of range");
    return n;
  }
  const auto attr = j.at("attr").get<std::size_t>();
  if (attr >= schema.size()) throw Error("model: attribute out of range");
  if (kind == "real") {
    if (!schema[attr].is_real()) throw Error("model: test kind mismatch");
    n.test = SplitTest::real(attr, j.at("theta").get<double>());
  } else if (kind == "discrete") {
    if (schema[attr].is_real()) throw Error("model: test kind mismatch");
    n.test = SplitTest::discrete(attr, schema[attr].domain_size);
  } else {
    throw Error("model: unknown node kind '" + kind + "'");
  }
  for (const auto& c : j.at("children")) n.children.push_back(read_node(c, schema, classes));
  if (n.children.size() != n.test->outcome_count())
    throw Error("model: wrong number of children");
  n.cls = static_cast<std::uint32_t>(n.support.majority());
  return n;
}

}  // namespace detail

inline void write_model(std::ostream& out, const DecisionTree& tree) {
  out << "{\n  \"schema\": [";
  for (std::size_t j = 0; j < tree.schema.size(); ++j) {
    const Attribute& a = tree.schema[j];
    out << (j ? ", " : "") << "{\"name\": " << detail::json_string(a.name)
        << ", \"kind\": \"" << (a.is_real() ? "real" : "discrete") << '"';
    if (!a.is_real()) out << ", \"domain\": " << a.domain_size;
    out << '}';
  }
  out << "],\n  \"class_label_mapping\": [";
  for (std::size_t c = 0; c < tree.class_labels.size(); ++c)
    out << (c ? ", " : "") << detail::json_string(tree.class_labels[c]);
  out << "],\n  \"root\": ";
  detail::write_node(out, tree.root, 2);
  out << "\n}\n";
}

inline std::string model_to_string(const DecisionTree& tree) {
  std::ostringstream out;
  write_model(out, tree);
  return out.str();
}

/// Statistics are not part of the model file and come back empty.
inline DecisionTree read_model(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model: ") + e.what());
  }
  try {
    DecisionTree tree;
    std::vector<Attribute> attrs;
    for (const auto& a : j.at("schema")) {
      const auto kind = a.at("kind").get<std::string>();
      if (kind == "real")
        attrs.push_back(Attribute::real(a.at("name").get<std::string>()));
      else if (kind == "discrete")
        attrs.push_back(Attribute::discrete(a.at("name").get<std::string>(),
                                            a.at("domain").get<int>()));
      else
        throw Error("model: unknown attribute kind '" + kind + "'");
    }
    tree.schema = AttributeSchema(std::move(attrs));
    tree.class_labels = j.at("class_label_mapping").get<std::vector<std::string>>();
    if (tree.class_labels.empty()) throw Error("model: no classes");
    tree.root = detail::read_node(j.at("root"), tree.schema, tree.class_labels.size());
    tree.height_limit = static_cast<int>(depth(tree.root));
    return tree;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model: ") + e.what());
  }
}

inline DecisionTree load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  return read_model(in);
}

}  // namespace qc50

#endif  // QC50_MODEL_IO_HPP
