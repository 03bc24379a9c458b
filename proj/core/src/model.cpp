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

#include "bpmeasure/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "bpmeasure/error.hpp"

namespace bpm {

std::string_view to_string(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::People: return "people";
    case ResourceKind::Equipment: return "equipment";
    case ResourceKind::Material: return "material";
  }
  return "people";
}

const NodeBase& node(const Element& element) {
  return std::visit([](const auto& e) -> const NodeBase& { return e; }, element);
}

NodeBase& node(Element& element) {
  return std::visit([](auto& e) -> NodeBase& { return e; }, element);
}

const std::string& name_of(const Element& element) { return node(element).name; }

const Element* BusinessProcess::find(std::string_view element_name) const {
  for (const auto& child : children) {
    if (name_of(child) == element_name) return &child;
  }
  return nullptr;
}

const StartNode* BusinessProcess::start() const {
  for (const auto& child : children) {
    if (const auto* s = std::get_if<StartNode>(&child)) return s;
  }
  return nullptr;
}

const BusinessProcess* ProcessModel::find_process(std::string_view process_name) const {
  for (const auto& p : processes) {
    if (p.name == process_name) return &p;
  }
  return nullptr;
}

const Resource* ProcessModel::find_resource(std::string_view resource_name) const {
  for (const auto& r : resources) {
    if (r.name == resource_name) return &r;
  }
  return nullptr;
}

const OrgUnit* ProcessModel::find_org_unit(std::string_view unit_name) const {
  for (const auto& u : org_units) {
    if (u.name == unit_name) return &u;
  }
  return nullptr;
}

std::vector<const BusinessProcess*> ProcessModel::root_processes() const {
  std::set<std::string> called;
  for (const auto& p : processes) {
    for (const auto& child : p.children) {
      if (const auto* call = std::get_if<SubprocessCall>(&child)) called.insert(call->target);
    }
  }
  std::vector<const BusinessProcess*> roots;
  for (const auto& p : processes) {
    if (!called.count(p.name)) roots.push_back(&p);
  }
  return roots;
}

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::BusinessProcess: return "process";
    case ElementKind::Task: return "task";
    case ElementKind::SubprocessCall: return "subprocess";
    case ElementKind::Decision: return "decision";
    case ElementKind::Start: return "start";
    case ElementKind::Finish: return "finish";
    case ElementKind::Datastore: return "datastore";
  }
  return "task";
}

std::optional<ElementKind> parse_element_kind(std::string_view text) {
  for (ElementKind k : {ElementKind::BusinessProcess, ElementKind::Task, ElementKind::SubprocessCall,
                        ElementKind::Decision, ElementKind::Start, ElementKind::Finish,
                        ElementKind::Datastore}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

ElementKind kind_of(const Element& element) {
  struct Visitor {
    ElementKind operator()(const Task&) const { return ElementKind::Task; }
    ElementKind operator()(const SubprocessCall&) const { return ElementKind::SubprocessCall; }
    ElementKind operator()(const Decision&) const { return ElementKind::Decision; }
    ElementKind operator()(const StartNode&) const { return ElementKind::Start; }
    ElementKind operator()(const FinishNode&) const { return ElementKind::Finish; }
    ElementKind operator()(const Datastore&) const { return ElementKind::Datastore; }
  };
  return std::visit(Visitor{}, element);
}

Structure structure_of(ElementKind kind) {
  return (kind == ElementKind::BusinessProcess || kind == ElementKind::SubprocessCall) ? Structure::Container
                                                                                       : Structure::Primitive;
}

Structure element_kind(const Element& element) { return structure_of(kind_of(element)); }

Structure element_kind(const BusinessProcess&) { return Structure::Container; }

const std::vector<Element>& children_of(const ProcessModel& model, std::string_view process_name) {
  const BusinessProcess* p = model.find_process(process_name);
  if (!p) throw UnknownElement(std::string(process_name));
  return p->children;
}

std::vector<std::string> successors(const BusinessProcess& process, std::string_view element_name) {
  std::vector<std::string> out;
  auto is_datastore = [&](std::string_view n) {
    const Element* e = process.find(n);
    return e && std::holds_alternative<Datastore>(*e);
  };
  if (is_datastore(element_name)) return out;
  if (const Element* e = process.find(element_name)) {
    if (const auto* d = std::get_if<Decision>(e)) {
      for (const auto& b : d->branches) out.push_back(b.target);
    }
  }
  for (const auto& f : process.flows) {
    if (f.from == element_name && !is_datastore(f.to)) out.push_back(f.to);
  }
  return out;
}

namespace {

void check_process(const ProcessModel& model, const BusinessProcess& process, std::vector<Diagnostic>& out) {
  const std::string& pname = process.name;
  if (process.children.empty()) {
    out.push_back(make_error("RULE_EMPTY_PROCESS", pname, "process has no elements"));
    return;
  }

  std::set<std::string> seen;
  int starts = 0;
  int finishes = 0;
  for (const auto& child : process.children) {
    const NodeBase& n = node(child);
    if (!seen.insert(n.name).second) {
      out.push_back(make_error("RULE_DUPLICATE_NAME", n.name, "name used twice in process '" + pname + "'"));
    }
    if (!n.lane.empty() && !model.org_units.empty() && !model.find_org_unit(n.lane)) {
      out.push_back(make_warning("RULE_UNKNOWN_LANE", n.name, "lane '" + n.lane + "' is not an org unit"));
    }
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, StartNode>) {
            ++starts;
          } else if constexpr (std::is_same_v<T, FinishNode>) {
            ++finishes;
          } else if constexpr (std::is_same_v<T, Task>) {
            if (e.performer.mode == Performer::Mode::Named) {
              const Resource* r = model.find_resource(e.performer.name);
              if (!r) {
                out.push_back(make_error("RULE_PERFORMER", e.name,
                                         "performer '" + e.performer.name + "' is not a resource"));
              } else if (r->kind == ResourceKind::Material) {
                out.push_back(make_error("RULE_PERFORMER", e.name,
                                         "performer '" + e.performer.name + "' is a material, not people or equipment"));
              }
            }
            if (e.every && e.every->count() <= 0) {
              out.push_back(make_error("RULE_TIME_TRIGGER", e.name, "schedule period must be positive"));
            }
            if (e.duration && (e.duration->low.count() < 0 || e.duration->high < e.duration->low)) {
              out.push_back(make_error("RULE_DURATION", e.name, "invalid duration range"));
            }
          } else if constexpr (std::is_same_v<T, SubprocessCall>) {
            if (!model.find_process(e.target)) {
              out.push_back(make_error("RULE_UNKNOWN_SUBPROCESS", e.name, "no process named '" + e.target + "'"));
            }
          } else if constexpr (std::is_same_v<T, Decision>) {
            if (e.branches.size() < 2) {
              out.push_back(make_error("RULE_DECISION_BRANCHES", e.name, "decision needs at least two branches"));
            }
            std::size_t with_p = 0;
            double sum = 0.0;
            for (const auto& b : e.branches) {
              if (!process.find(b.target)) {
                out.push_back(make_error("RULE_UNKNOWN_ENDPOINT", e.name, "branch target '" + b.target + "' not found"));
              } else if (std::holds_alternative<StartNode>(*process.find(b.target))) {
                out.push_back(make_error("RULE_START_INCOMING", b.target, "start node has an incoming branch"));
              }
              if (b.target == e.name) {
                out.push_back(make_error("RULE_SELF_LOOP", e.name, "branch targets its own decision"));
              }
              if (b.probability) {
                ++with_p;
                sum += *b.probability;
                if (!(*b.probability >= 0.0 && *b.probability <= 1.0)) {
                  out.push_back(make_error("RULE_PROB_RANGE", e.name, "branch probability outside [0, 1]"));
                }
              }
            }
            if (with_p != 0 && with_p != e.branches.size()) {
              out.push_back(make_error("RULE_PROB_PARTIAL", e.name, "either all branches carry a probability or none"));
            } else if (with_p != 0 && !(std::fabs(sum - 1.0) <= 1e-9)) {
              out.push_back(make_error("RULE_PROB_SUM", e.name,
                                       "branch probabilities sum to " + std::to_string(sum) + ", not 1"));
            }
          } else if constexpr (std::is_same_v<T, Datastore>) {
            if (e.material) {
              const Resource* r = model.find_resource(*e.material);
              if (!r || r->kind != ResourceKind::Material) {
                out.push_back(make_error("RULE_DATASTORE_MATERIAL", e.name,
                                         "material '" + *e.material + "' is not a material resource"));
              }
            }
          }
        },
        child);
  }
  if (starts != 1) {
    out.push_back(make_error("RULE_ONE_START", pname,
                             "process must have exactly one start node, found " + std::to_string(starts)));
  }
  if (finishes != 1) {
    out.push_back(make_error("RULE_ONE_FINISH", pname,
                             "process must have exactly one finish node, found " + std::to_string(finishes)));
  }

  for (const auto& f : process.flows) {
    const Element* from = process.find(f.from);
    const Element* to = process.find(f.to);
    if (!from) out.push_back(make_error("RULE_UNKNOWN_ENDPOINT", f.from, "flow source not found in '" + pname + "'"));
    if (!to) out.push_back(make_error("RULE_UNKNOWN_ENDPOINT", f.to, "flow target not found in '" + pname + "'"));
    if (f.from == f.to) out.push_back(make_error("RULE_SELF_LOOP", f.from, "flow from an element to itself"));
    if (to && std::holds_alternative<StartNode>(*to)) {
      out.push_back(make_error("RULE_START_INCOMING", f.to, "start node has an incoming flow"));
    }
    if (from && std::holds_alternative<FinishNode>(*from)) {
      out.push_back(make_error("RULE_FINISH_OUTGOING", f.from, "finish node has an outgoing flow"));
    }
    if (from && std::holds_alternative<Decision>(*from)) {
      out.push_back(make_error("RULE_DECISION_FLOW", f.from, "decision successors are declared as branches"));
    }
  }

  if (starts == 1) {
    std::set<std::string> reached;
    std::vector<std::string> stack{process.start()->name};
    while (!stack.empty()) {
      std::string cur = stack.back();
      stack.pop_back();
      if (!reached.insert(cur).second) continue;
      for (auto& next : successors(process, cur)) stack.push_back(next);
    }
    for (const auto& child : process.children) {
      if (std::holds_alternative<Datastore>(child)) continue;
      if (!reached.count(name_of(child))) {
        out.push_back(make_error("RULE_UNREACHABLE", name_of(child), "not reachable from the start node"));
      }
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate_model(const ProcessModel& model) {
  std::vector<Diagnostic> out;

  std::set<std::string> names;
  for (const auto& r : model.resources) {
    if (!names.insert(r.name).second) out.push_back(make_error("RULE_DUPLICATE_RESOURCE", r.name, "resource declared twice"));
    if (r.capacity < 0) out.push_back(make_error("RULE_CAPACITY", r.name, "capacity must be non-negative"));
  }
  names.clear();
  for (const auto& u : model.org_units) {
    if (!names.insert(u.name).second) out.push_back(make_error("RULE_DUPLICATE_ORGUNIT", u.name, "org unit declared twice"));
    for (const auto& m : u.members) {
      const Resource* r = model.find_resource(m);
      if (!r) {
        out.push_back(make_error("RULE_ORGUNIT_MEMBER", u.name, "member '" + m + "' is not a resource"));
      } else if (r->kind == ResourceKind::Material) {
        out.push_back(make_error("RULE_ORGUNIT_MEMBER", u.name, "member '" + m + "' is a material"));
      }
    }
  }
  names.clear();
  for (const auto& p : model.processes) {
    if (!names.insert(p.name).second) out.push_back(make_error("RULE_DUPLICATE_PROCESS", p.name, "process declared twice"));
  }

  for (const auto& p : model.processes) check_process(model, p, out);

  // Subprocess call graph must be acyclic.
  std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
  std::function<void(const BusinessProcess&, std::vector<std::string>&)> visit =
      [&](const BusinessProcess& p, std::vector<std::string>& path) {
        state[p.name] = 1;
        path.push_back(p.name);
        for (const auto& child : p.children) {
          const auto* call = std::get_if<SubprocessCall>(&child);
          if (!call) continue;
          const BusinessProcess* target = model.find_process(call->target);
          if (!target) continue;
          if (state[target->name] == 1) {
            std::string cycle;
            auto it = std::find(path.begin(), path.end(), target->name);
            for (; it != path.end(); ++it) cycle += *it + " -> ";
            cycle += target->name;
            out.push_back(make_error("RULE_PROCESS_CYCLE", p.name, "process contains itself: " + cycle));
          } else if (state[target->name] == 0) {
            visit(*target, path);
          }
        }
        path.pop_back();
        state[p.name] = 2;
      };
  for (const auto& p : model.processes) {
    if (state[p.name] == 0) {
      std::vector<std::string> path;
      visit(p, path);
    }
  }

  // Tasks and decisions are matched to log rows by name alone.
  std::map<std::string, std::set<std::string>> owners;
  for (const auto& p : model.processes) {
    for (const auto& child : p.children) {
      if (std::holds_alternative<Task>(child) || std::holds_alternative<Decision>(child)) {
        owners[name_of(child)].insert(p.name);
      }
    }
  }
  for (const auto& [n, ps] : owners) {
    if (ps.size() > 1) {
      out.push_back(make_warning("RULE_AMBIGUOUS_NAME", n, "name appears in " + std::to_string(ps.size()) +
                                                               " processes; log rows cannot be told apart"));
    }
  }
  return out;
}

}  // namespace bpm
