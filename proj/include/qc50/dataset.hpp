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

#ifndef QC50_DATASET_HPP
#define QC50_DATASET_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "split_test.hpp"

namespace qc50 {

enum class AttributeKind { Real, Discrete };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::Real;
  int domain_size = 0;  // T_j for discrete attributes, 0 for real ones

  bool is_real() const { return kind == AttributeKind::Real; }

  static Attribute real(std::string name) {
    return {std::move(name), AttributeKind::Real, 0};
  }
  static Attribute discrete(std::string name, int domain_size) {
    return {std::move(name), AttributeKind::Discrete, domain_size};
  }

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// Ordered attribute list. Real attributes take threshold tests, discrete
/// attributes over {1..T} take multiway tests.
class AttributeSchema {
 public:
  AttributeSchema() = default;
  explicit AttributeSchema(std::vector<Attribute> attributes)
      : attributes_(std::move(attributes)) {
    if (attributes_.empty()) throw Error("schema has no attributes");
    for (const auto& a : attributes_) {
      if (a.name.empty()) throw Error("schema attribute with empty name");
      if (!a.is_real() && a.domain_size < 2)
        throw Error("discrete attribute '" + a.name +
                    "' needs a domain of at least 2 values");
    }
  }

  std::size_t size() const { return attributes_.size(); }
  const Attribute& operator[](std::size_t j) const { return attributes_[j]; }
  const std::vector<Attribute>& attributes() const { return attributes_; }

  friend bool operator==(const AttributeSchema&,
                         const AttributeSchema&) = default;

 private:
  std::vector<Attribute> attributes_;
};

/// Immutable training matrix. Values are row-major; discrete values are the
/// literal integers 1..T_j stored exactly as doubles. Labels are 0-based
/// indices into class_labels().
class Dataset {
 public:
  Dataset(AttributeSchema schema, std::vector<double> values,
          std::vector<std::uint32_t> labels,
          std::vector<std::string> class_labels)
      : schema_(std::move(schema)),
        values_(std::move(values)),
        labels_(std::move(labels)),
        class_labels_(std::move(class_labels)) {
    const std::size_t d = schema_.size();
    if (d == 0) throw Error("schema has no attributes");
    if (labels_.empty()) throw DataError("empty training set");
    if (values_.size() != labels_.size() * d)
      throw Error("value matrix does not match N x d");
    if (class_labels_.empty()) throw Error("no class labels");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] >= class_labels_.size())
        throw DomainError("class index out of range in row " +
                          std::to_string(i + 1));
      for (std::size_t j = 0; j < d; ++j) {
        const double v = values_[i * d + j];
        if (!std::isfinite(v))
          throw DomainError("non-finite value in row " + std::to_string(i + 1));
        if (!schema_[j].is_real() && !in_domain(v, schema_[j].domain_size))
          throw DomainError("discrete value out of domain in row " +
                            std::to_string(i + 1) + ", attribute '" +
                            schema_[j].name + "'");
      }
    }
  }

  static bool in_domain(double v, int domain_size) {
    return v >= 1.0 && v <= domain_size && v == std::floor(v);
  }

  const AttributeSchema& schema() const { return schema_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t attribute_count() const { return schema_.size(); }
  std::size_t class_count() const { return class_labels_.size(); }

  double value(std::size_t row, std::size_t attr) const {
    return values_[row * schema_.size() + attr];
  }
  std::uint32_t label(std::size_t row) const { return labels_[row]; }

  const std::vector<double>& values() const { return values_; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }
  const std::vector<std::string>& class_labels() const { return class_labels_; }

 private:
  AttributeSchema schema_;
  std::vector<double> values_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::string> class_labels_;
};

/// The subset X' handled at one node: a base dataset plus row indices.
class SubsetView {
 public:
  using Index = std::uint32_t;

  SubsetView(const Dataset& base, std::vector<Index> indices)
      : base_(&base), indices_(std::move(indices)) {}

  static SubsetView all(const Dataset& base) {
    std::vector<Index> idx(base.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Index>(i);
    return SubsetView(base, std::move(idx));
  }

  /// Validating constructor: indices in range and pairwise distinct.
  static SubsetView checked(const Dataset& base, std::vector<Index> indices) {
    std::vector<bool> seen(base.size(), false);
    for (Index i : indices) {
      if (i >= base.size()) throw Error("subset index out of range");
      if (seen[i]) throw Error("duplicate subset index");
      seen[i] = true;
    }
    return SubsetView(base, std::move(indices));
  }

  const Dataset& base() const { return *base_; }
  const std::vector<Index>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  Index operator[](std::size_t k) const { return indices_[k]; }

  double value(std::size_t k, std::size_t attr) const {
    return base_->value(indices_[k], attr);
  }
  std::uint32_t label(std::size_t k) const { return base_->label(indices_[k]); }

 private:
  const Dataset* base_;
  std::vector<Index> indices_;
};

/// Divide step: one view per test outcome, index order preserved.
inline std::vector<SubsetView> partition(const SubsetView& view,
                                         const SplitTest& test) {
  const Dataset& data = view.base();
  if (test.attr >= data.attribute_count())
    throw Error("split test references unknown attribute");
  if (test.is_real() != data.schema()[test.attr].is_real())
    throw Error("split test kind does not match attribute kind");
  std::vector<std::vector<SubsetView::Index>> parts(test.outcome_count());
  for (SubsetView::Index i : view.indices())
    parts[test.outcome(data.value(i, test.attr))].push_back(i);
  std::vector<SubsetView> out;
  out.reserve(parts.size());
  for (auto& p : parts) out.emplace_back(data, std::move(p));
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

inline bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_int(std::string_view s, long long& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool blank(std::string_view line) { return trim(line).empty(); }

/// Parses one attribute cell; throws DataError naming line/column.
inline double parse_cell(std::string_view cell, const Attribute& attr,
                         std::size_t line, std::size_t column) {
  if (attr.is_real()) {
    double v;
    if (!parse_double(cell, v))
      throw DataError("cannot parse real value '" + std::string(cell) +
                          "' for attribute '" + attr.name + "'",
                      line, column);
    return v;
  }
  long long v;
  if (!parse_int(cell, v))
    throw DataError("cannot parse discrete value '" + std::string(cell) +
                        "' for attribute '" + attr.name + "'",
                    line, column);
  if (v < 1 || v > attr.domain_size)
    throw DataError("discrete value " + std::to_string(v) +
                        " outside domain 1.." +
                        std::to_string(attr.domain_size) + " of attribute '" +
                        attr.name + "'",
                    line, column);
  return static_cast<double>(v);
}

inline void check_header(std::string_view header, const AttributeSchema& schema,
                         bool class_required, bool& has_class) {
  const auto fields = split_fields(header);
  const std::size_t d = schema.size();
  has_class = fields.size() == d + 1;
  if (fields.size() != d + 1 && (class_required || fields.size() != d))
    throw DataError("header has " + std::to_string(fields.size()) +
                        " columns, schema expects " +
                        std::to_string(d + (class_required ? 1 : 0)),
                    1);
  for (std::size_t j = 0; j < d; ++j)
    if (fields[j] != schema[j].name)
      throw DataError("header column '" + std::string(fields[j]) +
                          "' does not match schema attribute '" +
                          schema[j].name + "'",
                      1, j + 1);
  if (has_class && fields[d] != "class")
    throw DataError("last header column must be 'class'", 1, d + 1);
}

}  // namespace detail

/// Schema sidecar: one line per attribute, `name,real` or `name,discrete,T`.
inline AttributeSchema read_schema(std::istream& in) {
  std::vector<Attribute> attrs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    const auto f = detail::split_fields(line);
    if (f.size() == 2 && f[1] == "real") {
      attrs.push_back(Attribute::real(std::string(f[0])));
    } else if (f.size() == 3 && f[1] == "discrete") {
      long long t;
      if (!detail::parse_int(f[2], t) || t < 2 || t > 1'000'000)
        throw DataError("invalid discrete domain size '" + std::string(f[2]) +
                            "'",
                        lineno, 3);
      attrs.push_back(Attribute::discrete(std::string(f[0]), static_cast<int>(t)));
    } else {
      throw DataError("expected 'name,real' or 'name,discrete,T'", lineno);
    }
  }
  if (attrs.empty()) throw DataError("schema has no attributes");
  return AttributeSchema(std::move(attrs));
}

inline AttributeSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema file '" + path + "'");
  return read_schema(in);
}

/// Labeled CSV. Class labels are mapped to indices by first appearance.
inline Dataset read_csv(std::istream& in, const AttributeSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("missing header row", 1);
  bool has_class = false;
  detail::check_header(line, schema, /*class_required=*/true, has_class);

  const std::size_t d = schema.size();
  std::vector<double> values;
  std::vector<std::uint32_t> labels;
  std::vector<std::string> class_labels;
  std::unordered_map<std::string, std::uint32_t> class_index;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    const auto f = detail::split_fields(line);
    if (f.size() != d + 1)
      throw DataError("expected " + std::to_string(d + 1) + " columns, found " +
                          std::to_string(f.size()),
                      lineno);
    for (std::size_t j = 0; j < d; ++j)
      values.push_back(detail::parse_cell(f[j], schema[j], lineno, j + 1));
    const std::string label(f[d]);
    if (label.empty()) throw DataError("empty class label", lineno, d + 1);
    auto [it, inserted] = class_index.emplace(
        label, static_cast<std::uint32_t>(class_labels.size()));
    if (inserted) class_labels.push_back(label);
    labels.push_back(it->second);
  }
  if (labels.empty()) throw DataError("empty training set");
  return Dataset(schema, std::move(values), std::move(labels),
                 std::move(class_labels));
}

inline Dataset load_csv(const std::string& path, const AttributeSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open data file '" + path + "'");
  return read_csv(in, schema);
}

/// Unlabeled rows for prediction. A trailing class column is accepted and
/// ignored. Row numbers in errors count data rows from 1.
inline std::vector<std::vector<double>> read_feature_rows(
    std::istream& in, const AttributeSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("missing header row", 1);
  bool has_class = false;
  detail::check_header(line, schema, /*class_required=*/false, has_class);
  const std::size_t d = schema.size();
  const std::size_t width = d + (has_class ? 1 : 0);
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    const auto f = detail::split_fields(line);
    if (f.size() != width)
      throw DataError("row " + std::to_string(rows.size() + 1) + ": expected " +
                          std::to_string(width) + " columns, found " +
                          std::to_string(f.size()),
                      lineno);
    std::vector<double> row(d);
    for (std::size_t j = 0; j < d; ++j) {
      try {
        row[j] = detail::parse_cell(f[j], schema[j], lineno, j + 1);
      } catch (const DataError& e) {
        throw DataError("row " + std::to_string(rows.size() + 1) + ": " +
                            e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Shortest round-trip decimal for a double.
inline std::string format_shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline void write_csv(std::ostream& out, const Dataset& data) {
  const auto& schema = data.schema();
  for (std::size_t j = 0; j < schema.size(); ++j) out << schema[j].name << ',';
  out << "class\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < schema.size(); ++j) {
      const double v = data.value(i, j);
      if (schema[j].is_real())
        out << format_shortest(v);
      else
        out << static_cast<long long>(v);
      out << ',';
    }
    out << data.class_labels()[data.label(i)] << '\n';
  }
}

inline void write_schema(std::ostream& out, const AttributeSchema& schema) {
  for (const auto& a : schema.attributes()) {
    if (a.is_real())
      out << a.name << ",real\n";
    else
      out << a.name << ",discrete," << a.domain_size << '\n';
  }
}

}  // namespace qc50

#endif  // QC50_DATASET_HPP
