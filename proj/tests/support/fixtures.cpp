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

#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bpmeasure/model_text.hpp"

namespace bpm::test {

std::string fixture_path(std::string_view name) { return std::string(BPMEASURE_FIXTURE_DIR) + "/" + std::string(name); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_fixture(std::string_view name) { return read_file(fixture_path(name)); }

const ProcessModel& pizza_model() {
  static const ProcessModel model = parse_model(read_fixture("pizza.bpm"));
  return model;
}

const ExecutionLog& runtime_log() {
  static const ExecutionLog log = parse_log(read_fixture("pizza_runtime_log.csv"));
  return log;
}

}  // namespace bpm::test
