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

#include "bpmeasure/error.hpp"
#include "bpmeasure/registry.hpp"
#include "support/fixtures.hpp"

namespace bpm {
namespace {

TEST(DefaultRegistry, Kinds) {
  const auto& r = default_registry();
  EXPECT_TRUE(validate_registry(r).empty());
  ASSERT_NE(r.find("Processing Time"), nullptr);
  EXPECT_EQ(r.at("Processing Time").primitive_source, LogSource::ProcessingTime);
  EXPECT_EQ(r.at("Cost").dimension, Dimension::Currency);
  EXPECT_EQ(r.at("Start Time").dimension, Dimension::TimePoint);
  EXPECT_EQ(r.at("Execution Count").default_unit, "count");
  EXPECT_EQ(r.find("Ghost"), nullptr);
  EXPECT_THROW(r.at("Ghost"), UnknownMeasure);
}

TEST(DefaultRegistry, AttachmentMatrix) {
  const auto& r = default_registry();
  EXPECT_FALSE(check_attachment(r, "Processing Time", ElementKind::Task));
  EXPECT_FALSE(check_attachment(r, "Total Time", ElementKind::BusinessProcess));
  EXPECT_FALSE(check_attachment(r, "Total Time", ElementKind::SubprocessCall));
  EXPECT_FALSE(check_attachment(r, "Start Time", ElementKind::Decision));

  auto d = check_attachment(r, "Total Time", ElementKind::Task);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->rule, "ATTACHMENT");
  EXPECT_EQ(d->severity, Severity::Error);

  auto c = check_attachment(r, "Cost", ElementKind::Decision);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->rule, "ATTACHMENT");

  auto u = check_attachment(r, "Ghost", ElementKind::Task);
  ASSERT_TRUE(u);
  EXPECT_EQ(u->rule, "UNKNOWN_MEASURE");
}

TEST(DefaultRegistry, ImplicitDeclarations) {
  const auto& r = default_registry();
  EXPECT_EQ(implicit_declaration(r, "Processing Time", Structure::Primitive), nullptr);
  EXPECT_EQ(implicit_declaration(r, "Cost", Structure::Primitive), nullptr);
  auto pt = implicit_declaration(r, "Processing Time", Structure::Container);
  ASSERT_NE(pt, nullptr);
  EXPECT_EQ(print(*pt), "Sum(children.Processing Time)");
  auto total = implicit_declaration(r, "Total Time", Structure::Container);
  ASSERT_NE(total, nullptr);
  EXPECT_EQ(print(*total), "Minus(End Time, Start Time)");
  EXPECT_THROW(implicit_declaration(r, "Ghost", Structure::Container), UnknownMeasure);
}

TEST(LoadRegistry, QualityFixtureExtendsDefaults) {
  auto r = load_registry(test::read_fixture("registry_quality.txt"));
  EXPECT_NE(r.find("Cost"), nullptr);
  ASSERT_NE(r.find("Defects"), nullptr);
  EXPECT_EQ(r.at("Defects").group, MeasureGroup::Quality);
  EXPECT_EQ(r.at("Defects").dimension, Dimension::Count);
  EXPECT_TRUE(r.at("Defects").attaches(ElementKind::Task));
  EXPECT_FALSE(r.at("Defects").attaches(ElementKind::Decision));
  ASSERT_NE(r.at("Defects").container_implicit, nullptr);
  EXPECT_EQ(print(*r.at("Defects").container_implicit), "Sum(children.Defects)");
  ASSERT_NE(r.units.find("day"), nullptr);
  EXPECT_EQ(r.units.at("day").scale, Rational(86400));
  EXPECT_EQ(r.at("Wait Time").default_unit, "min");
}

TEST(LoadRegistry, ReplaceStartsEmpty) {
  auto r = load_registry("replace\nWait Time | Time | Duration | min | task | -\n");
  EXPECT_EQ(r.kinds.size(), 1u);
  EXPECT_EQ(r.find("Cost"), nullptr);
}

TEST(LoadRegistry, ExtendOverridesByName) {
  auto r = load_registry("extend\nCost | Money | Currency | EUR | task | -\n");
  EXPECT_EQ(r.kinds.size(), default_registry().kinds.size());
  EXPECT_FALSE(r.at("Cost").attaches(ElementKind::BusinessProcess));
  EXPECT_EQ(r.at("Cost").container_implicit, nullptr);
}

TEST(LoadRegistry, Errors) {
  EXPECT_THROW(load_registry("extend\nBroken | Time\n"), SyntaxError);
  EXPECT_THROW(load_registry("extend\nX | Nope | Duration | min | task | -\n"), SyntaxError);
  EXPECT_THROW(load_registry("extend\n@unit fortnight | Duration | 0\n"), Error);
  // Default unit of the wrong dimension.
  EXPECT_THROW(load_registry("extend\nX | Time | Duration | EUR | task | -\n"), DiagnosticError);
  // Duplicate names inside one file.
  EXPECT_THROW(load_registry("replace\nX | Time | Duration | min | task | -\nX | Time | Duration | min | task | -\n"),
               Error);
}

TEST(SerializeRegistry, RoundTrips) {
  const auto& d = default_registry();
  EXPECT_EQ(load_registry(serialize_registry(d)), d);
  auto q = load_registry(test::read_fixture("registry_quality.txt"));
  auto text = serialize_registry(q);
  EXPECT_EQ(load_registry(text), q);
  EXPECT_EQ(serialize_registry(load_registry(text)), text);
}

TEST(ValidateRegistry, ReportsBrokenKinds) {
  Registry r = default_registry();
  r.kinds.push_back(r.kinds.front());
  auto diags = validate_registry(r);
  ASSERT_FALSE(diags.empty());
  EXPECT_TRUE(has_errors(diags));
}

}  // namespace
}  // namespace bpm
