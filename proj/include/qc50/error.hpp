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

#ifndef QC50_ERROR_HPP
#define QC50_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qc50 {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line` and `column` are 1-based; 0 means unknown.
class DataError : public Error {
 public:
  DataError(const std::string& what, std::size_t line = 0,
            std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A discrete value outside {1..T} or a class outside {0..M-1}.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Histogram families that do not add up (gain over inconsistent branches).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace qc50

#endif  // QC50_ERROR_HPP
