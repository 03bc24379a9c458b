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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bpmeasure/diagnostic.hpp"
#include "bpmeasure/execution_log.hpp"
#include "bpmeasure/measure_expr.hpp"
#include "bpmeasure/model.hpp"
#include "bpmeasure/registry.hpp"

namespace bpm {

// The object a measure is attached to: a process (`element` empty) or an
// element inside `process`. Measures written on a subprocess call belong to
// the called process.
struct NodeOwner {
  std::string process;
  std::string element;

  bool is_process() const { return element.empty(); }
  const std::string& object() const { return is_process() ? process : element; }

  auto operator<=>(const NodeOwner&) const = default;
};

struct MeasureNode {
  enum class Source { Log, Declared, Implicit };

  NodeOwner owner;
  ElementKind kind = ElementKind::Task;
  MeasureAnnotation annotation;
  std::string text;  // canonical annotation text
  Source source = Source::Log;
  std::optional<LogSource> log_column;  // set when source == Log
  ExprPtr expr;                         // explicit or implicit declaration
  // Nodes each reference in `expr` reads, in collect_refs order. Children
  // references list every child node that carries the measure.
  std::vector<std::vector<std::size_t>> ref_targets;
  std::vector<std::size_t> deps;  // union of ref_targets, ascending
};

class MeasureGraph {
 public:
  const std::vector<MeasureNode>& nodes() const { return nodes_; }
  std::optional<std::size_t> find(const NodeOwner& owner, std::string_view measure) const;
  // Nodes attached to a process or to its elements, in declaration order.
  std::vector<std::size_t> nodes_of(const std::string& process) const;

 private:
  friend MeasureGraph build_measure_graph(const ProcessModel&, const Registry&);
  std::vector<MeasureNode> nodes_;
  std::map<std::pair<NodeOwner, std::string>, std::size_t> index_;
};

// Resolves every annotation: explicit declarations are kept, missing ones
// come from the registry (containers) or the log (primitives). Throws
// DiagnosticError listing MEASURE_SYNTAX, UNKNOWN_UNIT, UNKNOWN_MEASURE,
// ATTACHMENT, DUPLICATE_MEASURE, DECL_REQUIRED, UNRESOLVED_REF,
// DIMENSION_MISMATCH and CYCLE findings.
MeasureGraph build_measure_graph(const ProcessModel& model, const Registry& registry);

// Same checks, returned instead of thrown.
std::vector<Diagnostic> check_measures(const ProcessModel& model, const Registry& registry);

// Log rows of one object within one process instance, combined.
struct FoldedOccurrences {
  std::optional<std::int64_t> start;            // earliest
  std::optional<std::int64_t> end;              // latest
  std::optional<std::int64_t> processing_time;  // sum over rows that report it
  std::int64_t count = 0;
  std::vector<std::int64_t> rows;  // contributing row numbers, ascending

  // Latest end, or latest start when no row has an end.
  std::optional<std::int64_t> completion;
};

// Drops rows identical in every field but `no` (first one wins), then folds.
FoldedOccurrences fold_occurrences(std::span<const LogRecord> rows);

// Reads one log column from folded rows. Throws MissingField.
Quantity primitive_value(const FoldedOccurrences& folded, LogSource column, const Unit& unit, const std::string& context);

struct MeasureInstance {
  int no = 0;
  ObjectType object_type = ObjectType::Task;
  std::string object;
  std::string measure;       // measure name
  std::string measure_text;  // canonical `Name[=decl], Unit`
  Quantity value;            // exact; rounding happens when rendered
  std::int64_t time = 0;     // availability time
  std::vector<int> sources;  // instance numbers this value was computed from
  std::vector<std::int64_t> log_rows;
};

struct InstanceResult {
  std::string scope;
  std::string process_id;
  std::vector<MeasureInstance> instances;
  std::vector<Diagnostic> diagnostics;
};

// Measure table for one process within one process instance. Log-sourced
// values first in log order, derived values right after their sources, the
// scope's own totals last. Throws UnknownInstance, MissingField,
// EmptyAggregation (with element and measure in the message).
InstanceResult evaluate_instance(const ProcessModel& model, const ExecutionLog& log, const Registry& registry,
                                 const std::string& scope, const std::string& process_id);
InstanceResult evaluate_instance(const MeasureGraph& graph, const ProcessModel& model, const ExecutionLog& log,
                                 const std::string& scope, const std::string& process_id);

struct EvaluationTable {
  std::vector<InstanceResult> results;  // by scope declaration order, then first appearance of the id
  std::vector<Diagnostic> diagnostics;
};

// Every process carrying measures, for every instance that ran it. Failures
// are reported per instance and do not stop the others.
EvaluationTable evaluate_all(const ProcessModel& model, const ExecutionLog& log, const Registry& registry);
EvaluationTable evaluate_all(const MeasureGraph& graph, const ProcessModel& model, const ExecutionLog& log);

inline constexpr std::string_view kTableHeader = "No,Object Type,Object,Measure Declaration Unit,Value,Time,Source No";

// One instance: `No,Object Type,Object,Measure Declaration Unit,Value,Time,Source No`.
std::string render_table(const InstanceResult& result);
// Several instances: the same columns prefixed by `Scope,Process ID`.
std::string render_table(const EvaluationTable& table);

}  // namespace bpm
