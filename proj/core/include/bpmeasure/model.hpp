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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bpmeasure/diagnostic.hpp"

namespace bpm {

using Seconds = std::chrono::seconds;

enum class ResourceKind { People, Equipment, Material };

std::string_view to_string(ResourceKind kind);

struct Resource {
  std::string name;
  ResourceKind kind = ResourceKind::People;
  std::int64_t capacity = 0;  // units for People/Equipment, initial amount for Material

  bool operator==(const Resource&) const = default;
};

struct OrgUnit {
  std::string name;
  std::vector<std::string> members;

  bool operator==(const OrgUnit&) const = default;
};

// How a task picks who performs it. Unspecified and Any both draw from the
// lane's org unit; Named pins one resource.
struct Performer {
  enum class Mode { Unspecified, Any, Named };
  Mode mode = Mode::Unspecified;
  std::string name;

  bool operator==(const Performer&) const = default;
};

// Simulation duration of one task occurrence.
struct DurationSpec {
  enum class Kind { Fixed, Uniform };
  Kind kind = Kind::Fixed;
  Seconds low{0};
  Seconds high{0};  // equal to low for Fixed

  bool operator==(const DurationSpec&) const = default;
};

// Fields shared by every element: name, owning lane (org unit) and the raw
// measure annotation strings in declaration order.
struct NodeBase {
  std::string name;
  std::string lane;
  std::vector<std::string> measures;

  bool operator==(const NodeBase&) const = default;
};

struct Task : NodeBase {
  Performer performer;
  std::optional<Seconds> every;  // time event: fires on this schedule
  std::optional<DurationSpec> duration;

  bool operator==(const Task&) const = default;
};

// Reference to a process defined at top level. Measures written on the call
// belong to the called process.
struct SubprocessCall : NodeBase {
  std::string target;

  bool operator==(const SubprocessCall&) const = default;
};

struct Branch {
  std::string label;
  std::string target;
  std::optional<double> probability;

  bool operator==(const Branch&) const = default;
};

struct Decision : NodeBase {
  std::vector<Branch> branches;

  bool operator==(const Decision&) const = default;
};

struct StartNode : NodeBase {
  bool operator==(const StartNode&) const = default;
};

struct FinishNode : NodeBase {
  bool operator==(const FinishNode&) const = default;
};

struct Datastore : NodeBase {
  std::optional<std::string> material;

  bool operator==(const Datastore&) const = default;
};

using Element = std::variant<Task, SubprocessCall, Decision, StartNode, FinishNode, Datastore>;

const NodeBase& node(const Element& element);
NodeBase& node(Element& element);
const std::string& name_of(const Element& element);

struct Flow {
  std::string from;
  std::string to;
  std::optional<std::string> object;  // set for object flows

  bool operator==(const Flow&) const = default;
};

struct BusinessProcess {
  std::string name;
  std::optional<std::string> realizes_goal;
  std::vector<Element> children;
  std::vector<Flow> flows;  // endpoints name children of this process
  std::vector<std::string> measures;

  const Element* find(std::string_view element_name) const;
  const StartNode* start() const;

  bool operator==(const BusinessProcess&) const = default;
};

struct ProcessModel {
  std::string name;
  std::vector<Resource> resources;
  std::vector<OrgUnit> org_units;
  std::vector<BusinessProcess> processes;

  const BusinessProcess* find_process(std::string_view process_name) const;
  const Resource* find_resource(std::string_view resource_name) const;
  const OrgUnit* find_org_unit(std::string_view unit_name) const;

  // Processes never referenced by a SubprocessCall, in declaration order.
  std::vector<const BusinessProcess*> root_processes() const;

  bool operator==(const ProcessModel&) const = default;
};

// Every kind of object a measure can be attached to.
enum class ElementKind { BusinessProcess, Task, SubprocessCall, Decision, Start, Finish, Datastore };

std::string_view to_string(ElementKind kind);
std::optional<ElementKind> parse_element_kind(std::string_view text);
ElementKind kind_of(const Element& element);

enum class Structure { Primitive, Container };

Structure element_kind(const Element& element);
Structure element_kind(const BusinessProcess& process);
Structure structure_of(ElementKind kind);

// Throws UnknownElement.
const std::vector<Element>& children_of(const ProcessModel& model, std::string_view process_name);

// Control-flow successors of an element inside its process: flow targets
// plus decision branch targets, skipping datastores.
std::vector<std::string> successors(const BusinessProcess& process, std::string_view element_name);

std::vector<Diagnostic> validate_model(const ProcessModel& model);

}  // namespace bpm
