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

#include <gtest/gtest.h>

#include <random>

#include "bpmeasure/error.hpp"
#include "bpmeasure/model_text.hpp"
#include "support/fixtures.hpp"
#include "support/model_gen.hpp"

namespace bpm {
namespace {

TEST(ParseModel, PizzaFixtureShape) {
  const auto& m = test::pizza_model();
  EXPECT_EQ(m.name, "Pizza Shop");
  ASSERT_EQ(m.processes.size(), 2u);
  EXPECT_EQ(m.processes[0].name, "Make Order");
  EXPECT_EQ(m.processes[1].realizes_goal, "Deliver hot pizzas");
  EXPECT_EQ(m.find_resource("Oven")->kind, ResourceKind::Equipment);
  EXPECT_EQ(m.find_resource("Dough")->capacity, 40);
  EXPECT_EQ(m.find_org_unit("Sales")->members, (std::vector<std::string>{"Clerk1", "Clerk2"}));

  const auto& check = std::get<Task>(*m.processes[0].find("Check Order"));
  EXPECT_EQ(check.lane, "Sales");
  EXPECT_EQ(check.performer.mode, Performer::Mode::Any);
  EXPECT_EQ(check.measures,
            (std::vector<std::string>{"Processing Time, min", "Cost=2 EUR/hour*Processing Time, EUR"}));
  EXPECT_EQ(check.duration->kind, DurationSpec::Kind::Uniform);
  EXPECT_EQ(check.duration->high, Seconds(180));

  const auto& deliver = std::get<Task>(*m.processes[1].find("Deliver"));
  EXPECT_EQ(deliver.every, Seconds(1800));
  EXPECT_EQ(deliver.performer.name, "Courier");

  const auto& decision = std::get<Decision>(*m.processes[0].find("Need Correction"));
  ASSERT_EQ(decision.branches.size(), 2u);
  EXPECT_EQ(decision.branches[0].probability, 0.3);
  EXPECT_EQ(m.processes[0].flows[1].object, "Order");
}

TEST(ParseModel, CapacityShorthand) {
  auto m = parse_model(R"(resources { "Pool": people x3 })");
  EXPECT_EQ(m.resources.at(0).capacity, 3);
}

TEST(ParseModel, CommentsAndEscapes) {
  auto m = parse_model("# comment\n// another\nmodel \"a\\\"b\\\\c\\x41\\n\"\n");
  EXPECT_EQ(m.name, "a\"b\\cA\n");
}

TEST(ParseModel, ErrorPositions) {
  try {
    parse_model("process \"P\" {\n  lane \"L\" {\n    tusk \"T\"\n  }\n}\n");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 5);
  }
  try {
    parse_model("resources { \"R\": people x 1 ");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1);
  }
  EXPECT_THROW(parse_model("model \"unterminated"), SyntaxError);
  EXPECT_THROW(parse_model("model \"bad \\q escape\""), SyntaxError);
  EXPECT_THROW(parse_model("resources { \"R\": gold x 1 }"), SyntaxError);
  EXPECT_THROW(parse_model("process \"P\" { task \"T\" { duration: fixed(0:61:00) } }"), SyntaxError);
}

TEST(ParseModel, DuplicateNameReportsSecondPosition) {
  try {
    parse_model("process \"P\" {\n  task \"T\"\n  task \"T\"\n}\n");
    FAIL() << "expected DuplicateNameError";
  } catch (const DuplicateNameError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 8);
  }
  EXPECT_THROW(parse_model("process \"P\" {} process \"P\" {}"), DuplicateNameError);
}

TEST(SerializeModel, PizzaFixedPoint) {
  const auto& m = test::pizza_model();
  auto text = serialize_model(m);
  auto again = parse_model(text);
  EXPECT_EQ(again, m);
  EXPECT_EQ(serialize_model(again), text);
}

TEST(SerializeModelProperty, RandomModelsRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    auto m = test::random_model(rng);
    auto text = serialize_model(m);
    ProcessModel back;
    ASSERT_NO_THROW(back = parse_model(text)) << text;
    EXPECT_EQ(back, m) << text;
    EXPECT_EQ(serialize_model(back), text);
  }
}

TEST(RandomModels, AreValid) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto m = test::random_model(rng);
    for (const auto& d : validate_model(m)) {
      EXPECT_NE(d.severity, Severity::Error) << format_line(d) << "\n" << serialize_model(m);
    }
  }
}

}  // namespace
}  // namespace bpm
