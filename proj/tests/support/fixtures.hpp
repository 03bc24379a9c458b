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

#include <string>
#include <string_view>

#include "bpmeasure/execution_log.hpp"
#include "bpmeasure/model.hpp"

namespace bpm::test {

std::string fixture_path(std::string_view name);
std::string read_file(const std::string& path);
std::string read_fixture(std::string_view name);

// Parsed once and shared.
const ProcessModel& pizza_model();
const ExecutionLog& runtime_log();

}  // namespace bpm::test
