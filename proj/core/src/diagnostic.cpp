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

#include "bpmeasure/diagnostic.hpp"

#include <algorithm>

#include "bpmeasure/csv.hpp"
#include "bpmeasure/error.hpp"

namespace bpm {

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::Info: return "INFO";
    case Severity::Warning: return "WARNING";
    case Severity::Error: return "ERROR";
  }
  return "ERROR";
}

Diagnostic make_error(std::string rule, std::string location, std::string message) {
  return {Severity::Error, std::move(rule), std::move(location), std::move(message)};
}

Diagnostic make_warning(std::string rule, std::string location, std::string message) {
  return {Severity::Warning, std::move(rule), std::move(location), std::move(message)};
}

Diagnostic make_info(std::string rule, std::string location, std::string message) {
  return {Severity::Info, std::move(rule), std::move(location), std::move(message)};
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format_line(const Diagnostic& d) {
  std::string out(to_string(d.severity));
  out += ' ';
  out += d.rule;
  out += ' ';
  out += d.location.empty() ? "-" : "'" + d.location + "'";
  if (d.line > 0) out += ":" + std::to_string(d.line) + ":" + std::to_string(d.column);
  out += ' ';
  out += d.message;
  return out;
}

std::string format_csv_header() { return "Level,Rule,Location,Line,Column,Message"; }

std::string format_csv(const Diagnostic& d) {
  return csv::join({std::string(to_string(d.severity)), d.rule, d.location, std::to_string(d.line),
                    std::to_string(d.column), d.message});
}

SyntaxError::SyntaxError(int line, int column, std::string expected, const std::string& found)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected +
            (found.empty() ? "" : ", found " + found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

DimensionMismatch::DimensionMismatch(std::string path, std::string found, std::string expected)
    : Error("dimension mismatch at " + path + ": found " + found + ", expected " + expected),
      path_(std::move(path)),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

RowError::RowError(int row, std::string column, std::string reason)
    : Error("row " + std::to_string(row) + ", column '" + column + "': " + reason),
      row_(row),
      column_(std::move(column)),
      reason_(std::move(reason)) {}

DeadlockError::DeadlockError(long long time, std::vector<std::string> waiting)
    : Error("deadlock at t=" + std::to_string(time) + "s with " + std::to_string(waiting.size()) +
            " waiting token(s)"),
      time_(time),
      waiting_(std::move(waiting)) {}

DiagnosticError::DiagnosticError(const std::string& what, std::vector<Diagnostic> diagnostics)
    : Error(what + (diagnostics.empty() ? "" : ": " + format_line(diagnostics.front()))),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace bpm
