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

#include "bpmeasure/evaluator.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <unordered_map>

#include "bpmeasure/csv.hpp"
#include "bpmeasure/error.hpp"
#include "bpmeasure/time_format.hpp"

namespace bpm {

namespace {

std::string owner_path(const NodeOwner& owner) {
  return owner.is_process() ? owner.process : owner.process + "/" + owner.element;
}

std::string node_path(const MeasureNode& node) { return owner_path(node.owner) + "/" + node.annotation.name; }

struct RawAnnotation {
  NodeOwner owner;
  ElementKind kind;
  std::string text;
  std::string where;  // where it was written, for diagnostics
};

std::vector<RawAnnotation> gather_annotations(const ProcessModel& model) {
  std::vector<RawAnnotation> out;
  for (const auto& process : model.processes) {
    NodeOwner self{process.name, {}};
    for (const auto& text : process.measures) out.push_back({self, ElementKind::BusinessProcess, text, process.name});
    for (const auto& caller : model.processes) {
      for (const auto& child : caller.children) {
        const auto* call = std::get_if<SubprocessCall>(&child);
        if (call == nullptr || call->target != process.name) continue;
        for (const auto& text : call->measures) {
          out.push_back({self, ElementKind::BusinessProcess, text, caller.name + "/" + call->name});
        }
      }
    }
    for (const auto& child : process.children) {
      if (std::holds_alternative<SubprocessCall>(child)) continue;
      const auto& base = node(child);
      for (const auto& text : base.measures) {
        out.push_back({{process.name, base.name}, kind_of(child), text, process.name + "/" + base.name});
      }
    }
  }
  return out;
}

std::optional<ObjectType> object_type_of(ElementKind kind) {
  switch (kind) {
    case ElementKind::BusinessProcess:
    case ElementKind::SubprocessCall:
      return ObjectType::BusinessProcess;
    case ElementKind::Task:
      return ObjectType::Task;
    case ElementKind::Decision:
      return ObjectType::Decision;
    default:
      return std::nullopt;
  }
}

Diagnostic located(Diagnostic d, int column = 0) {
  d.column = column;
  return d;
}

}  // namespace

std::optional<std::size_t> MeasureGraph::find(const NodeOwner& owner, std::string_view measure) const {
  auto it = index_.find({owner, std::string(measure)});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> MeasureGraph::nodes_of(const std::string& process) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].owner.process == process) out.push_back(i);
  }
  return out;
}

namespace {

std::optional<NodeOwner> resolve_element(const ProcessModel& model, const NodeOwner& from, const std::string& name) {
  const auto* process = model.find_process(from.process);
  if (process != nullptr) {
    if (const auto* element = process->find(name)) {
      if (const auto* call = std::get_if<SubprocessCall>(element)) return NodeOwner{call->target, {}};
      return NodeOwner{from.process, name};
    }
  }
  if (model.find_process(name) != nullptr) return NodeOwner{name, {}};
  return std::nullopt;
}

std::vector<Diagnostic> build_graph(const ProcessModel& model, const Registry& registry, MeasureGraph& graph,
                                    std::vector<MeasureNode>& nodes,
                                    std::map<std::pair<NodeOwner, std::string>, std::size_t>& index) {
  std::vector<Diagnostic> diags;

  for (auto& raw : gather_annotations(model)) {
    MeasureAnnotation annotation;
    try {
      annotation = parse_measure(raw.text, registry.units);
    } catch (const UnknownUnit& e) {
      diags.push_back(make_error("UNKNOWN_UNIT", raw.where, std::string(e.what()) + " in '" + raw.text + "'"));
      continue;
    } catch (const SyntaxError& e) {
      diags.push_back(located(make_error("MEASURE_SYNTAX", raw.where, std::string(e.what()) + " in '" + raw.text + "'"),
                              e.column()));
      continue;
    }
    std::string where = raw.where + "/" + annotation.name;
    if (auto d = check_attachment(registry, annotation.name, raw.kind)) {
      d->location = where;
      diags.push_back(std::move(*d));
      continue;
    }
    const auto& kind = registry.at(annotation.name);
    if (annotation.unit.dimension != kind.dimension) {
      diags.push_back(make_error("DIMENSION_MISMATCH", where,
                                 "unit '" + annotation.unit.symbol + "' is " +
                                     std::string(to_string(annotation.unit.dimension)) + ", measure is " +
                                     std::string(to_string(kind.dimension))));
      continue;
    }
    if (index.count({raw.owner, annotation.name}) != 0) {
      diags.push_back(make_error("DUPLICATE_MEASURE", where, "measure attached twice to " + owner_path(raw.owner)));
      continue;
    }

    MeasureNode n;
    n.owner = raw.owner;
    n.kind = raw.kind;
    n.text = print(annotation);
    if (annotation.decl) {
      n.source = MeasureNode::Source::Declared;
      n.expr = annotation.decl;
    } else if (auto implicit = implicit_declaration(registry, annotation.name, structure_of(raw.kind))) {
      n.source = MeasureNode::Source::Implicit;
      n.expr = implicit;
    } else if (kind.primitive_source) {
      n.source = MeasureNode::Source::Log;
      n.log_column = kind.primitive_source;
    } else {
      diags.push_back(make_error("DECL_REQUIRED", where, "no declaration and no log column for this measure"));
      continue;
    }
    n.annotation = std::move(annotation);
    index.emplace(std::make_pair(n.owner, n.annotation.name), nodes.size());
    nodes.push_back(std::move(n));
  }

  // References and dimensions.
  for (auto& n : nodes) {
    if (!n.expr) continue;
    std::string where = node_path(n);
    std::vector<const RefExpr*> refs;
    collect_refs(*n.expr, refs);
    bool ok = true;
    for (const auto* ref : refs) {
      std::vector<std::size_t> targets;
      switch (ref->target.kind) {
        case RefTarget::Kind::Self:
          if (auto t = graph.find(n.owner, ref->measure)) targets.push_back(*t);
          break;
        case RefTarget::Kind::Element:
          if (auto owner = resolve_element(model, n.owner, ref->target.element)) {
            if (auto t = graph.find(*owner, ref->measure)) targets.push_back(*t);
          }
          break;
        case RefTarget::Kind::Children:
          if (n.owner.is_process()) {
            for (const auto& child : model.find_process(n.owner.process)->children) {
              NodeOwner owner{n.owner.process, name_of(child)};
              if (const auto* call = std::get_if<SubprocessCall>(&child)) owner = {call->target, {}};
              if (auto t = graph.find(owner, ref->measure)) targets.push_back(*t);
            }
          }
          break;
      }
      if (targets.empty()) {
        ok = false;
        diags.push_back(make_error("UNRESOLVED_REF", where, "'" + print(Expr{*ref}) + "' names no annotated measure"));
      }
      n.ref_targets.push_back(std::move(targets));
    }
    if (!ok) continue;

    std::set<std::size_t> deps;
    for (const auto& t : n.ref_targets) deps.insert(t.begin(), t.end());
    n.deps.assign(deps.begin(), deps.end());

    for (std::size_t r = 0; r < refs.size(); ++r) {
      const auto& targets = n.ref_targets[r];
      Dimension first = nodes[targets.front()].annotation.unit.dimension;
      for (auto t : targets) {
        if (nodes[t].annotation.unit.dimension != first) {
          ok = false;
          diags.push_back(make_error("DIMENSION_MISMATCH", where,
                                     "children of '" + print(Expr{*refs[r]}) + "' mix dimensions"));
          break;
        }
      }
    }
    if (!ok) continue;

    auto resolver = [&](const RefExpr& ref) -> std::optional<Dimension> {
      for (std::size_t r = 0; r < refs.size(); ++r) {
        if (refs[r] == &ref) return nodes[n.ref_targets[r].front()].annotation.unit.dimension;
      }
      return std::nullopt;
    };
    try {
      Dimension d = typecheck(*n.expr, resolver);
      if (d != n.annotation.unit.dimension) {
        diags.push_back(make_error("DIMENSION_MISMATCH", where,
                                   "declaration yields " + std::string(to_string(d)) + ", unit '" +
                                       n.annotation.unit.symbol + "' is " +
                                       std::string(to_string(n.annotation.unit.dimension))));
      }
    } catch (const DimensionMismatch& e) {
      diags.push_back(make_error("DIMENSION_MISMATCH", where,
                                 "at " + e.path() + ": found " + e.found() + ", expected " + e.expected()));
    } catch (const UnresolvedRef& e) {
      diags.push_back(make_error("UNRESOLVED_REF", where, e.what()));
    }
  }

  // Cycles.
  std::vector<int> color(nodes.size(), 0);
  std::vector<std::size_t> stack;
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    color[i] = 1;
    stack.push_back(i);
    for (auto d : nodes[i].deps) {
      if (color[d] == 0) {
        visit(d);
      } else if (color[d] == 1) {
        auto from = std::find(stack.begin(), stack.end(), d);
        std::string text;
        for (auto it = from; it != stack.end(); ++it) text += node_path(nodes[*it]) + " -> ";
        text += node_path(nodes[d]);
        diags.push_back(make_error("CYCLE", node_path(nodes[d]), "measure depends on itself: " + text));
      }
    }
    stack.pop_back();
    color[i] = 2;
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (color[i] == 0) visit(i);
  }
  return diags;
}

}  // namespace

MeasureGraph build_measure_graph(const ProcessModel& model, const Registry& registry) {
  MeasureGraph graph;
  auto diags = build_graph(model, registry, graph, graph.nodes_, graph.index_);
  if (has_errors(diags)) {
    std::string what = std::to_string(diags.size()) + " measure finding(s)";
    throw DiagnosticError(what, std::move(diags));
  }
  return graph;
}

std::vector<Diagnostic> check_measures(const ProcessModel& model, const Registry& registry) {
  try {
    build_measure_graph(model, registry);
  } catch (const DiagnosticError& e) {
    return e.diagnostics();
  }
  return {};
}

FoldedOccurrences fold_occurrences(std::span<const LogRecord> rows) {
  FoldedOccurrences out;
  std::vector<const LogRecord*> kept;
  for (const auto& row : rows) {
    bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const LogRecord* k) { return k->same_fields(row); });
    if (!duplicate) kept.push_back(&row);
  }
  std::optional<std::int64_t> latest_start;
  for (const auto* row : kept) {
    ++out.count;
    out.rows.push_back(row->no);
    if (row->start) {
      out.start = out.start ? std::min(*out.start, *row->start) : *row->start;
      latest_start = latest_start ? std::max(*latest_start, *row->start) : *row->start;
    }
    if (row->end) out.end = out.end ? std::max(*out.end, *row->end) : *row->end;
    if (row->processing_time) out.processing_time = out.processing_time.value_or(0) + *row->processing_time;
  }
  std::sort(out.rows.begin(), out.rows.end());
  out.completion = out.end ? out.end : latest_start;
  return out;
}

Quantity primitive_value(const FoldedOccurrences& folded, LogSource column, const Unit& unit,
                         const std::string& context) {
  auto need = [&](const std::optional<std::int64_t>& v, const char* field) {
    if (!v) throw MissingField(context + ": no " + field + " in the log");
    return *v;
  };
  switch (column) {
    case LogSource::StartTime:
      return from_base(need(folded.start, "Start Time"), unit);
    case LogSource::EndTime:
      return from_base(need(folded.end, "End Time"), unit);
    case LogSource::ProcessingTime:
      return from_base(need(folded.processing_time, "Processing Time"), unit);
    case LogSource::Occurrence:
      return from_base(folded.count, unit);
  }
  throw MissingField(context);
}

namespace {

using RowIndex = std::unordered_map<std::string, std::vector<const LogRecord*>>;

RowIndex index_rows(const ExecutionLog& log, const std::string* only_id) {
  RowIndex out;
  for (const auto& r : log.records) {
    if (only_id == nullptr || r.process_id == *only_id) out[r.process_id].push_back(&r);
  }
  return out;
}

std::string rule_for(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const MissingField&) {
    return "MISSING_FIELD";
  } catch (const EmptyAggregation&) {
    return "EMPTY_AGGREGATION";
  } catch (const UnboundRef&) {
    return "UNBOUND_REF";
  } catch (const ArithmeticError&) {
    return "ARITHMETIC";
  } catch (const DimensionMismatch&) {
    return "DIMENSION_MISMATCH";
  } catch (...) {
    return "EVALUATION";
  }
}

[[noreturn]] void rethrow_with_context(const std::exception_ptr& error, const std::string& context) {
  try {
    std::rethrow_exception(error);
  } catch (const MissingField& e) {
    throw MissingField(context + ": " + e.what());
  } catch (const EmptyAggregation& e) {
    throw EmptyAggregation(context + ": " + e.what());
  } catch (const UnboundRef& e) {
    throw UnboundRef(context + ": " + e.what());
  } catch (const ArithmeticError& e) {
    throw ArithmeticError(context + ": " + e.what());
  }
}

class InstanceEvaluator {
 public:
  InstanceEvaluator(const MeasureGraph& graph, const ProcessModel& model, const std::string& scope,
                    const std::string& id, const std::vector<const LogRecord*>& rows, bool strict)
      : graph_(graph), model_(model), scope_(scope), id_(id), strict_(strict) {
    for (const auto* r : rows) rows_[{r->object_type, r->object}].push_back(*r);
    collect_subtree(scope);
  }

  InstanceResult run() {
    InstanceResult result;
    result.scope = scope_;
    result.process_id = id_;

    const auto* scope_rows = folded({scope_, {}}, ElementKind::BusinessProcess);
    bool incomplete = scope_rows != nullptr && !scope_rows->end;
    if (incomplete) {
      result.diagnostics.push_back(
          make_warning("INCOMPLETE", scope_ + "@" + id_, "process instance has no End Time; results are partial"));
    }

    const auto& nodes = graph_.nodes();
    state_.assign(nodes.size(), State{});
    for (std::size_t p = 0; p < subtree_.size(); ++p) {
      for (auto i : graph_.nodes_of(subtree_[p])) evaluate(i);
    }

    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (state_[i].status != Status::Failed) continue;
      std::string where = node_path(nodes[i]) + "@" + id_;
      auto rule = rule_for(state_[i].error);
      result.diagnostics.push_back(incomplete ? make_warning(rule, where, state_[i].message)
                                              : make_error(rule, where, state_[i].message));
    }

    // Preferred order: log-driven values in log order, derived values after.
    std::vector<std::size_t> rank(nodes.size(), nodes.size());
    std::size_t next = 0;
    std::set<std::string> visited;
    std::function<void(const std::string&)> emit = [&](const std::string& process_name) {
      if (!visited.insert(process_name).second) return;
      auto own = nodes_of_owner({process_name, {}});
      for (auto i : own) {
        if (nodes[i].log_column == LogSource::StartTime) rank[i] = next++;
      }
      const auto* process = model_.find_process(process_name);
      std::vector<std::pair<std::int64_t, const Element*>> ordered;
      for (const auto& child : process->children) {
        const FoldedOccurrences* f = nullptr;
        if (const auto* call = std::get_if<SubprocessCall>(&child)) {
          f = folded({call->target, {}}, ElementKind::BusinessProcess);
        } else {
          f = folded({process_name, name_of(child)}, kind_of(child));
        }
        if (f != nullptr) ordered.emplace_back(f->rows.front(), &child);
      }
      std::stable_sort(ordered.begin(), ordered.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [first_row, child] : ordered) {
        if (const auto* call = std::get_if<SubprocessCall>(child)) {
          emit(call->target);
          continue;
        }
        for (auto i : nodes_of_owner({process_name, name_of(*child)})) rank[i] = next++;
      }
      for (auto i : own) {
        if (rank[i] == nodes.size()) rank[i] = next++;
      }
    };
    emit(scope_);

    // Topological order over successful nodes, lowest rank first.
    std::vector<std::size_t> pending(nodes.size(), 0);
    std::vector<std::vector<std::size_t>> users(nodes.size());
    auto cmp = [&](std::size_t a, std::size_t b) { return rank[a] > rank[b]; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> ready(cmp);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (state_[i].status != Status::Done) continue;
      pending[i] = state_[i].sources.size();
      for (auto s : state_[i].sources) users[s].push_back(i);
      if (pending[i] == 0) ready.push(i);
    }
    std::vector<int> number(nodes.size(), 0);
    while (!ready.empty()) {
      auto i = ready.top();
      ready.pop();
      number[i] = static_cast<int>(result.instances.size()) + 1;
      const auto& n = nodes[i];
      MeasureInstance m;
      m.no = number[i];
      m.object_type = *object_type_of(n.kind);
      m.object = n.owner.object();
      m.measure = n.annotation.name;
      m.measure_text = n.text;
      m.value = *state_[i].value;
      m.time = state_[i].time;
      for (auto s : state_[i].sources) m.sources.push_back(number[s]);
      std::sort(m.sources.begin(), m.sources.end());
      m.log_rows = state_[i].log_rows;
      result.instances.push_back(std::move(m));
      for (auto u : users[i]) {
        if (--pending[u] == 0) ready.push(u);
      }
    }
    return result;
  }

 private:
  enum class Status { Pending, Running, Done, Failed, Skipped };

  struct State {
    Status status = Status::Pending;
    std::optional<Quantity> value;
    std::int64_t time = 0;
    std::vector<std::size_t> sources;
    std::vector<std::int64_t> log_rows;
    std::exception_ptr error;
    std::string message;
  };

  void collect_subtree(const std::string& process_name) {
    if (std::find(subtree_.begin(), subtree_.end(), process_name) != subtree_.end()) return;
    const auto* process = model_.find_process(process_name);
    if (process == nullptr) return;
    subtree_.push_back(process_name);
    for (const auto& child : process->children) {
      if (const auto* call = std::get_if<SubprocessCall>(&child)) collect_subtree(call->target);
    }
  }

  bool in_subtree(const std::string& process_name) const {
    return std::find(subtree_.begin(), subtree_.end(), process_name) != subtree_.end();
  }

  std::vector<std::size_t> nodes_of_owner(const NodeOwner& owner) const {
    std::vector<std::size_t> out;
    for (auto i : graph_.nodes_of(owner.process)) {
      if (graph_.nodes()[i].owner == owner) out.push_back(i);
    }
    return out;
  }

  const FoldedOccurrences* folded(const NodeOwner& owner, ElementKind kind) {
    auto type = object_type_of(kind);
    if (!type) return nullptr;
    auto key = std::make_pair(owner, std::string());
    auto cached = folded_.find(key);
    if (cached != folded_.end()) return cached->second ? &*cached->second : nullptr;
    std::optional<FoldedOccurrences> f;
    auto it = rows_.find({*type, owner.object()});
    if (it != rows_.end()) f = fold_occurrences(it->second);
    auto& slot = folded_[key];
    slot = std::move(f);
    return slot ? &*slot : nullptr;
  }

  void fail(std::size_t i, std::exception_ptr error) {
    auto& st = state_[i];
    st.status = Status::Failed;
    st.error = error;
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      st.message = e.what();
    }
    if (strict_) rethrow_with_context(error, node_path(graph_.nodes()[i]) + "@" + id_);
  }

  void evaluate(std::size_t i) {
    auto& st = state_[i];
    if (st.status != Status::Pending) return;
    const auto& n = graph_.nodes()[i];
    const auto* own = in_subtree(n.owner.process) ? folded(n.owner, n.kind) : nullptr;
    if (own == nullptr) {
      st.status = Status::Skipped;
      return;
    }
    st.status = Status::Running;

    if (n.source == MeasureNode::Source::Log) {
      try {
        state_[i].value = primitive_value(*own, *n.log_column, n.annotation.unit, "log");
      } catch (...) {
        fail(i, std::current_exception());
        return;
      }
      auto& s = state_[i];
      s.log_rows = own->rows;
      if (n.log_column == LogSource::StartTime) {
        s.time = *own->start;
      } else if (n.log_column == LogSource::EndTime) {
        s.time = *own->end;
      } else {
        s.time = own->completion.value_or(0);
      }
      s.status = Status::Done;
      return;
    }

    std::vector<const RefExpr*> refs;
    collect_refs(*n.expr, refs);
    std::set<std::size_t> used;
    Bindings bind = [&](const RefExpr& ref) -> std::optional<std::vector<Quantity>> {
      std::size_t r = 0;
      while (r < refs.size() && refs[r] != &ref) ++r;
      if (r == refs.size()) return std::nullopt;
      std::vector<Quantity> values;
      for (auto t : n.ref_targets[r]) {
        evaluate(t);
        const auto& ts = state_[t];
        if (ts.status == Status::Done) {
          values.push_back(*ts.value);
          used.insert(t);
        } else if (ts.status == Status::Failed) {
          throw UnboundRef("'" + node_path(graph_.nodes()[t]) + "' is unavailable: " + ts.message);
        } else if (ref.target.kind != RefTarget::Kind::Children) {
          throw UnboundRef("'" + node_path(graph_.nodes()[t]) + "' was not executed in this instance");
        }
      }
      return values;
    };

    std::optional<Quantity> value;
    try {
      auto base = eval_expr(*n.expr, bind);
      value = from_base(base.base_value(), n.annotation.unit);
    } catch (...) {
      fail(i, std::current_exception());
      return;
    }
    auto& s = state_[i];
    s.value = std::move(value);
    s.sources.assign(used.begin(), used.end());
    if (s.sources.empty()) {
      s.time = own->completion.value_or(0);
    } else {
      s.time = state_[s.sources.front()].time;
      for (auto src : s.sources) s.time = std::max(s.time, state_[src].time);
    }
    s.status = Status::Done;
  }

  const MeasureGraph& graph_;
  const ProcessModel& model_;
  std::string scope_;
  std::string id_;
  bool strict_;
  std::vector<std::string> subtree_;
  std::map<std::pair<ObjectType, std::string>, std::vector<LogRecord>> rows_;
  std::map<std::pair<NodeOwner, std::string>, std::optional<FoldedOccurrences>> folded_;
  std::vector<State> state_;
};

bool ran_scope(const std::vector<const LogRecord*>& rows, const std::string& scope) {
  return std::any_of(rows.begin(), rows.end(), [&](const LogRecord* r) {
    return r->object_type == ObjectType::BusinessProcess && r->object == scope;
  });
}

}  // namespace

InstanceResult evaluate_instance(const ProcessModel& model, const ExecutionLog& log, const Registry& registry,
                                 const std::string& scope, const std::string& process_id) {
  return evaluate_instance(build_measure_graph(model, registry), model, log, scope, process_id);
}

InstanceResult evaluate_instance(const MeasureGraph& graph, const ProcessModel& model, const ExecutionLog& log,
                                 const std::string& scope, const std::string& process_id) {
  if (model.find_process(scope) == nullptr) throw UnknownElement(scope);
  auto index = index_rows(log, &process_id);
  auto it = index.find(process_id);
  if (it == index.end() || !ran_scope(it->second, scope)) throw UnknownInstance(process_id);
  return InstanceEvaluator(graph, model, scope, process_id, it->second, true).run();
}

EvaluationTable evaluate_all(const ProcessModel& model, const ExecutionLog& log, const Registry& registry) {
  return evaluate_all(build_measure_graph(model, registry), model, log);
}

EvaluationTable evaluate_all(const MeasureGraph& graph, const ProcessModel& model, const ExecutionLog& log) {
  EvaluationTable table;
  auto index = index_rows(log, nullptr);
  auto ids = instances(log);
  for (const auto& process : model.processes) {
    if (graph.nodes_of(process.name).empty()) continue;
    for (const auto& id : ids) {
      const auto& rows = index.at(id);
      if (!ran_scope(rows, process.name)) continue;
      auto result = InstanceEvaluator(graph, model, process.name, id, rows, false).run();
      table.diagnostics.insert(table.diagnostics.end(), result.diagnostics.begin(), result.diagnostics.end());
      table.results.push_back(std::move(result));
    }
  }
  for (const auto& id : ids) {
    const auto& rows = index.at(id);
    bool any = std::any_of(rows.begin(), rows.end(),
                           [](const LogRecord* r) { return r->object_type == ObjectType::BusinessProcess; });
    if (!any) table.diagnostics.push_back(make_warning("ORPHAN_INSTANCE", id, "no process row for this instance"));
  }
  return table;
}

namespace {

std::vector<std::string> row_fields(const MeasureInstance& m) {
  std::string sources;
  for (auto s : m.sources) {
    if (!sources.empty()) sources += ",";
    sources += std::to_string(s);
  }
  if (sources.empty()) sources = "-";
  return {std::to_string(m.no),
          std::string(to_string(m.object_type)),
          m.object,
          m.measure_text,
          format_value(m.value),
          timefmt::format_timepoint(m.time),
          sources};
}

}  // namespace

std::string render_table(const InstanceResult& result) {
  std::string out(kTableHeader);
  out += '\n';
  for (const auto& m : result.instances) {
    out += csv::join(row_fields(m));
    out += '\n';
  }
  return out;
}

std::string render_table(const EvaluationTable& table) {
  std::string out = "Scope,Process ID,";
  out += kTableHeader;
  out += '\n';
  for (const auto& r : table.results) {
    for (const auto& m : r.instances) {
      auto fields = row_fields(m);
      fields.insert(fields.begin(), {r.scope, r.process_id});
      out += csv::join(fields);
      out += '\n';
    }
  }
  return out;
}

}  // namespace bpm
