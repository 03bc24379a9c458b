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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bpm {

enum class Severity { Info, Warning, Error };

std::string_view to_string(Severity severity);

// One finding about a model, log, registry or evaluation.
// `rule` is a stable identifier such as RULE_ONE_START; `location` names the
// element, measure or row the finding is about.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string rule;
  std::string location;
  std::string message;
  int line = 0;
  int column = 0;

  bool operator==(const Diagnostic&) const = default;
};

Diagnostic make_error(std::string rule, std::string location, std::string message);
Diagnostic make_warning(std::string rule, std::string location, std::string message);
Diagnostic make_info(std::string rule, std::string location, std::string message);

bool has_errors(std::span<const Diagnostic> diagnostics);

// `LEVEL RULE_ID location message`, with `:line:col` appended to the location
// when known.
std::string format_line(const Diagnostic& diagnostic);

std::string format_csv_header();
std::string format_csv(const Diagnostic& diagnostic);

}  // namespace bpm
