// Copyright 2026 The bpmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bpmeasure/diagnostic.hpp"

namespace bpm {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::string expected, const std::string& found = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

// A name declared twice in one scope; reported with the second position.
class DuplicateNameError : public SyntaxError {
 public:
  DuplicateNameError(int line, int column, const std::string& name)
      : SyntaxError(line, column, "unique name", "duplicate '" + name + "'") {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::string path, std::string found, std::string expected);

  const std::string& path() const { return path_; }
  const std::string& found() const { return found_; }
  const std::string& expected() const { return expected_; }

 private:
  std::string path_;
  std::string found_;
  std::string expected_;
};

class UnknownUnit : public Error {
 public:
  explicit UnknownUnit(const std::string& symbol) : Error("unknown unit '" + symbol + "'") {}
};

class UnknownElement : public Error {
 public:
  explicit UnknownElement(const std::string& name) : Error("unknown element '" + name + "'") {}
};

class UnknownMeasure : public Error {
 public:
  explicit UnknownMeasure(const std::string& name) : Error("unknown measure '" + name + "'") {}
};

class UnresolvedRef : public Error {
 public:
  using Error::Error;
};

class UnboundRef : public Error {
 public:
  using Error::Error;
};

class EmptyAggregation : public Error {
 public:
  using Error::Error;
};

// Overflow, division by zero, negative durations.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class MissingField : public Error {
 public:
  using Error::Error;
};

class UnknownInstance : public Error {
 public:
  explicit UnknownInstance(const std::string& id) : Error("unknown process instance '" + id + "'") {}
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class RowError : public Error {
 public:
  RowError(int row, std::string column, std::string reason);

  int row() const { return row_; }
  const std::string& column() const { return column_; }
  const std::string& reason() const { return reason_; }

 private:
  int row_;
  std::string column_;
  std::string reason_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DeadlockError : public Error {
 public:
  DeadlockError(long long time, std::vector<std::string> waiting);

  long long time() const { return time_; }
  const std::vector<std::string>& waiting() const { return waiting_; }

 private:
  long long time_;
  std::vector<std::string> waiting_;
};

// Carries a batch of error-level diagnostics (graph build, registry load).
class DiagnosticError : public Error {
 public:
  DiagnosticError(const std::string& what, std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace bpm
