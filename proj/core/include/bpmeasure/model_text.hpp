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

#include "bpmeasure/model.hpp"

namespace bpm {

// Parses the textual model format:
//
//   resources { "Clerk1": people x 1  "Dough": material x 500 }
//   orgunit "Sales" { members: "Clerk1", "Clerk2" }
//   process "Make Order" {
//     lane "Sales" {
//       start "Start"
//       task "Check Order" { performer: any  duration: fixed(0:03:00)
//                            measure "Processing Time, min" }
//       decision "Need Correction" { branch "yes" -> "Fix" p=0.3  branch "no" -> "Finish" p=0.7 }
//       finish "Finish"
//     }
//     measure "Total Time, min"
//     flow "Start" -> "Check Order"
//   }
//
// Measure strings are kept verbatim. Throws SyntaxError (1-based line and
// column) or DuplicateNameError.
ProcessModel parse_model(std::string_view text);

// Canonical text: two-space indent, one element per line, elements before
// process measures before flows. parse_model(serialize_model(m)) == m.
std::string serialize_model(const ProcessModel& model);

}  // namespace bpm
