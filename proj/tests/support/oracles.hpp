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
#include <vector>

#include "bpmeasure/execution_log.hpp"
#include "bpmeasure/model.hpp"
#include "bpmeasure/rational.hpp"
#include "bpmeasure/simulator.hpp"

// Reference computations written directly against log rows, sharing no code
// with the evaluator or the simulator.
namespace bpm::test {

// Seconds of processing time a process instance accumulates: processing
// times of the unique rows of its tasks annotated with "Processing Time",
// plus the same total of every called process that ran. nullopt when
// nothing contributes.
std::optional<std::int64_t> brute_force_processing_time(const ProcessModel& model, const ExecutionLog& log,
                                                        const std::string& process, const std::string& process_id);

// Performers running more task rows at once than their capacity.
std::vector<std::string> capacity_violations(const ProcessModel& model, const ExecutionLog& log);

// Resource trace steps that go negative, exceed capacity or do not move by
// exactly one unit.
std::vector<std::string> resource_trace_violations(const ProcessModel& model, const std::vector<ResourceEvent>& trace);

// Task rows starting before a required predecessor finished. Datastore
// flows carry material, not control, and are ignored. Elements on a
// loop need one finished predecessor, all others need every predecessor.
std::vector<std::string> ordering_violations(const ProcessModel& model, const ExecutionLog& log);

}  // namespace bpm::test
