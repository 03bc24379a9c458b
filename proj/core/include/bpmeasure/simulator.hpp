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
#include <optional>
#include <string>
#include <vector>

#include "bpmeasure/diagnostic.hpp"
#include "bpmeasure/execution_log.hpp"
#include "bpmeasure/model.hpp"

namespace bpm {

struct Arrival {
  enum class Kind { Fixed, Exponential };
  Kind kind = Kind::Fixed;
  std::int64_t seconds = 3600;  // interval, or mean gap for Exponential

  bool operator==(const Arrival&) const = default;
};

// "fixed:<duration>" or "exp:<duration>", durations as in the model text
// ("0:30:00", "45min"). Throws ConfigError.
Arrival parse_arrival(std::string_view text);

struct SimConfig {
  int runs = 1;
  std::uint64_t seed = 0;
  std::int64_t start_epoch = 0;  // first arrival
  Arrival arrival;
  std::int64_t base_row_no = 10001;
  // Process started by each arrival. Defaults to the only top-level process.
  std::optional<std::string> root;
};

// Resource level after a change. People and equipment report the free
// count, materials the remaining amount.
struct ResourceEvent {
  enum class Kind { Acquire, Release, Consume, Produce };
  std::int64_t time = 0;
  std::string resource;
  Kind kind = Kind::Acquire;
  std::int64_t level = 0;
};

struct SimResult {
  ExecutionLog log;
  std::vector<Diagnostic> diagnostics;  // MATERIAL_EXHAUSTED events
  std::vector<ResourceEvent> trace;
};

// Tasks without a duration and decisions without branch probabilities on
// paths reachable from the top-level processes.
std::vector<Diagnostic> check_sim_annotations(const ProcessModel& model);

// Discrete-event run on a virtual clock in whole seconds. Each arrival
// starts a new instance ("00101", "00102", ...). A task starts when every
// forward incoming flow has delivered a token (loop-back flows trigger it
// alone) and a performer is free: the named resource, or the first free
// member of the lane's org unit; waiting tasks are served first come first
// served. Scheduled tasks start only on their period. Material read by a task
// through a datastore flow is consumed at completion; material written
// through a flow is produced. Rows are ordered by start time, then process
// id, then the order occurrences began.
//
// Throws ConfigError (invalid model, missing annotations, bad config) and
// DeadlockError.
SimResult simulate_detailed(const ProcessModel& model, const SimConfig& config);
ExecutionLog simulate(const ProcessModel& model, const SimConfig& config);

}  // namespace bpm
