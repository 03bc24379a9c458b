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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpmeasure/diagnostic.hpp"
#include "bpmeasure/measure_expr.hpp"
#include "bpmeasure/model.hpp"
#include "bpmeasure/units.hpp"

namespace bpm {

enum class MeasureGroup { Time, Money, Resource, Work, Quality };

// Log column a primitive measure is read from.
enum class LogSource { StartTime, EndTime, ProcessingTime, Occurrence };

std::string_view to_string(MeasureGroup group);
std::optional<MeasureGroup> parse_measure_group(std::string_view text);
std::string_view to_string(LogSource source);
std::optional<LogSource> parse_log_source(std::string_view text);
Dimension dimension_of(LogSource source);

struct MeasureKind {
  std::string name;
  MeasureGroup group = MeasureGroup::Time;
  Dimension dimension = Dimension::Duration;
  std::string default_unit;
  std::vector<ElementKind> attaches_to;  // sorted, unique
  std::optional<LogSource> primitive_source;
  ExprPtr container_implicit;  // may be null

  bool attaches(ElementKind kind) const;

  bool operator==(const MeasureKind& other) const;
};

// Catalog of measure kinds and units. Immutable once built; share freely.
class Registry {
 public:
  UnitTable units = UnitTable::defaults();
  std::vector<MeasureKind> kinds;

  const MeasureKind* find(std::string_view name) const;
  // Throws UnknownMeasure.
  const MeasureKind& at(std::string_view name) const;

  bool operator==(const Registry&) const = default;
};

// Start Time, End Time, Processing Time, Total Time, Cost, Execution Count.
const Registry& default_registry();

// nullopt when `measure_name` may be attached to `kind`; otherwise an
// UNKNOWN_MEASURE or ATTACHMENT diagnostic. Calls count as processes.
std::optional<Diagnostic> check_attachment(const Registry& registry, std::string_view measure_name, ElementKind kind);

// The metamodel declaration for a measure on a primitive or container object.
// Primitive objects never get one: their values come from the log or from an
// explicit declaration. Null when there is none. Throws UnknownMeasure.
ExprPtr implicit_declaration(const Registry& registry, std::string_view measure_name, Structure structure);

// Invariant checks: unique names, known default units of the right
// dimension, implicit declarations and log sources matching the dimension.
std::vector<Diagnostic> validate_registry(const Registry& registry);

// Line-oriented registry file:
//
//   extend | replace                       (first directive)
//   @unit SYMBOL | DIMENSION | SCALE
//   NAME | GROUP | DIMENSION | UNIT | ATTACHES | source:COL; implicit:EXPR | -
//
// `extend` starts from `base` and overrides kinds by name; `replace` starts
// empty (units always start from `base`). Throws SyntaxError for malformed
// lines and DiagnosticError for invariant violations.
Registry load_registry(std::string_view text, const Registry& base = default_registry());

// `replace` file that loads back to an equal registry.
std::string serialize_registry(const Registry& registry);

}  // namespace bpm
