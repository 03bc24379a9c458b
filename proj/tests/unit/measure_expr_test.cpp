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

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <map>
#include <random>

#include "bpmeasure/error.hpp"
#include "bpmeasure/measure_expr.hpp"

namespace bpm {
namespace {

const UnitTable& units() {
  static const UnitTable table = UnitTable::defaults();
  return table;
}

Quantity q(Rational v, const char* unit) { return {v, units().at(unit)}; }

// Bindings from measure name to a single value; `children.X` reads `many`.
struct Env {
  std::map<std::string, Quantity> one;
  std::map<std::string, std::vector<Quantity>> many;

  Bindings bindings() const {
    return [this](const RefExpr& ref) -> std::optional<std::vector<Quantity>> {
      if (ref.target.kind == RefTarget::Kind::Children) {
        auto it = many.find(ref.measure);
        if (it == many.end()) return std::nullopt;
        return it->second;
      }
      auto it = one.find(ref.measure);
      if (it == one.end()) return std::nullopt;
      return std::vector<Quantity>{it->second};
    };
  }

  DimensionResolver resolver() const {
    return [this](const RefExpr& ref) -> std::optional<Dimension> {
      if (auto it = one.find(ref.measure); it != one.end()) return it->second.dimension();
      if (auto it = many.find(ref.measure); it != many.end() && !it->second.empty()) return it->second[0].dimension();
      return std::nullopt;
    };
  }
};

TEST(ParseMeasure, RateTimesProcessingTime) {
  auto m = parse_measure("Cost=2 EUR/hour*Processing Time, EUR");
  EXPECT_EQ(m.name, "Cost");
  EXPECT_EQ(m.unit.symbol, "EUR");
  auto expected = make_binary(BinaryOp::Mul, make_const(q(2, "EUR/hour")), make_ref("Processing Time"));
  EXPECT_TRUE(equal(m.decl, expected)) << print(*m.decl);
}

TEST(ParseMeasure, NoDeclaration) {
  auto m = parse_measure("Processing Time, min");
  EXPECT_EQ(m.name, "Processing Time");
  EXPECT_EQ(m.unit.symbol, "min");
  EXPECT_EQ(m.decl, nullptr);
}

TEST(ParseMeasure, BareConstantTakesAnnotationUnit) {
  for (const char* text : {"Cost=0.1, EUR", "Cost =0.1, EUR", "Cost = 0.1 ,EUR"}) {
    auto m = parse_measure(text);
    ASSERT_TRUE(m.decl) << text;
    const auto& c = std::get<ConstExpr>(m.decl->node);
    EXPECT_EQ(c.value, q(Rational(1, 10), "EUR")) << text;
    EXPECT_EQ(print(m), "Cost=0.1, EUR");
  }
}

TEST(ParseMeasure, ElementAndChildrenRefs) {
  auto m = parse_measure("Total Time=Minus(Make Order.End Time, Make Order.Start Time), min");
  const auto& call = std::get<CallExpr>(m.decl->node);
  EXPECT_EQ(call.fn, Fn::Minus);
  const auto& ref = std::get<RefExpr>(call.args[0]->node);
  EXPECT_EQ(ref.measure, "End Time");
  EXPECT_EQ(ref.target.kind, RefTarget::Kind::Element);
  EXPECT_EQ(ref.target.element, "Make Order");

  auto s = parse_measure("Cost=Sum(children.Cost), EUR");
  const auto& sum_ref = std::get<RefExpr>(std::get<CallExpr>(s.decl->node).args[0]->node);
  EXPECT_EQ(sum_ref.target.kind, RefTarget::Kind::Children);
}

TEST(ParseMeasure, Errors) {
  EXPECT_THROW(parse_measure("Cost EUR"), SyntaxError);
  EXPECT_THROW(parse_measure("Cost=, EUR"), SyntaxError);
  EXPECT_THROW(parse_measure("Cost=(1, EUR"), SyntaxError);
  EXPECT_THROW(parse_measure("Cost=1 EUR, dollars"), UnknownUnit);
  EXPECT_THROW(parse_measure("Cost=Foo(1), EUR"), SyntaxError);
  try {
    parse_measure("Cost=2 EUR/hour*, EUR");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_GT(e.column(), 5);
  }
}

TEST(ParseExpression, DeepNestingIsAnErrorNotACrash) {
  std::string deep(5000, '(');
  deep += "1";
  deep += std::string(5000, ')');
  EXPECT_THROW(parse_expression(deep), SyntaxError);
}

TEST(Print, CanonicalForms) {
  EXPECT_EQ(print(*parse_expression("Sum( children.Cost )")), "Sum(children.Cost)");
  EXPECT_EQ(print(*parse_expression("(1 EUR + 2 EUR) * 3")), "(1 EUR + 2 EUR)*3");
  EXPECT_EQ(print(*parse_expression("Minus(9:15:47, 9:05:34)")), "Minus(9:15:47, 9:05:34)");
  for (const char* text : {"Minus(End Time, Start Time)", "2 EUR/hour*Processing Time", "1 EUR - 2 EUR - 3 EUR",
                           "1 EUR - (2 EUR - 3 EUR)", "Avg(a.X, b.X)*2", "10:00:00 datetime",
                           "2024-01-02T03:04:05"}) {
    auto e = parse_expression(text);
    EXPECT_TRUE(equal(parse_expression(print(*e)), e)) << text << " -> " << print(*e);
  }
}

TEST(Typecheck, RateAndTimeDifference) {
  Env env;
  env.one.emplace("Processing Time", q(3, "min"));
  env.one.emplace("End Time", q(0, "datetime"));
  env.one.emplace("Start Time", q(0, "datetime"));
  EXPECT_EQ(typecheck(*parse_expression("2 EUR/hour*Processing Time"), env.resolver()), Dimension::Currency);
  EXPECT_EQ(typecheck(*parse_expression("Minus(End Time, Start Time)"), env.resolver()), Dimension::Duration);
}

TEST(Typecheck, Mismatches) {
  Env env;
  try {
    typecheck(*parse_expression("2 EUR + 3 min"), env.resolver());
    FAIL();
  } catch (const DimensionMismatch& e) {
    EXPECT_EQ(e.path(), "decl/rhs");
    EXPECT_EQ(e.found(), "Duration");
  }
  EXPECT_THROW(typecheck(*parse_expression("Sum(1 EUR, 2 min)"), env.resolver()), DimensionMismatch);
  EXPECT_THROW(parse_expression("Minus(1 EUR)"), SyntaxError);
  EXPECT_THROW(typecheck(*parse_expression("1 EUR * 2 EUR"), env.resolver()), DimensionMismatch);
  EXPECT_THROW(typecheck(*parse_expression("Sum(9:00:00 datetime, 9:00:00 datetime)"), env.resolver()),
               DimensionMismatch);
  EXPECT_THROW(typecheck(*parse_expression("Ghost * 2"), env.resolver()), UnresolvedRef);
  EXPECT_EQ(typecheck(*parse_expression("Count(1 EUR, 2 EUR)"), env.resolver()), Dimension::Count);
  EXPECT_EQ(typecheck(*parse_expression("9:00:00 datetime + 0:30:00"), env.resolver()), Dimension::TimePoint);
}

TEST(Eval, CostTotalTimeAndSum) {
  Env env;
  env.one.emplace("Processing Time", q(3, "min"));
  auto cost = eval_expr(*parse_expression("2 EUR/hour*Processing Time"), env.bindings());
  EXPECT_EQ(cost.dimension(), Dimension::Currency);
  EXPECT_EQ(cost.base_value(), Rational(1, 10));
  EXPECT_EQ(format_value(cost), "0.10");

  auto total = eval_expr(*parse_expression("Minus(9:15:47, 9:05:34)"), env.bindings());
  EXPECT_EQ(total.base_value(), Rational(613));
  EXPECT_EQ(format_value(total), "0:10:13");

  auto sum = eval_expr(*parse_expression("Sum(0:03:00, 0:02:00)"), env.bindings());
  EXPECT_EQ(format_value(sum), "0:05:00");
}

TEST(Eval, Aggregations) {
  Env env;
  env.many["Cost"] = {q(Rational(1, 10), "EUR"), q(Rational(3, 10), "EUR"), q(2, "EUR")};
  auto b = env.bindings();
  EXPECT_EQ(eval_expr(*parse_expression("Sum(children.Cost)"), b).base_value(), Rational(24, 10));
  EXPECT_EQ(eval_expr(*parse_expression("children.Cost"), b).base_value(), Rational(24, 10));
  EXPECT_EQ(eval_expr(*parse_expression("Avg(children.Cost)"), b).base_value(), Rational(8, 10));
  EXPECT_EQ(eval_expr(*parse_expression("Min(children.Cost)"), b).base_value(), Rational(1, 10));
  EXPECT_EQ(eval_expr(*parse_expression("Max(children.Cost)"), b).base_value(), Rational(2));
  EXPECT_EQ(eval_expr(*parse_expression("Count(children.Cost)"), b).base_value(), Rational(3));
  EXPECT_EQ(eval_expr(*parse_expression("Mult(2, 3 EUR)"), b).base_value(), Rational(6));

  env.many["Cost"].clear();
  EXPECT_THROW(eval_expr(*parse_expression("Sum(children.Cost)"), env.bindings()), EmptyAggregation);
  EXPECT_EQ(eval_expr(*parse_expression("Count(children.Cost)"), env.bindings()).base_value(), Rational(0));
}

TEST(Eval, Errors) {
  Env env;
  EXPECT_THROW(eval_expr(*parse_expression("Ghost + 1 EUR"), env.bindings()), UnboundRef);
  EXPECT_THROW(eval_expr(*parse_expression("0:01:00 - 0:02:00"), env.bindings()), ArithmeticError);
}

// Rate x duration against an independent big-rational computation.
TEST(EvalProperty, RateTimesDurationMatchesOracle) {
  using Oracle = boost::multiprecision::cpp_rational;
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::int64_t> cents(0, 100000);
  std::uniform_int_distribution<std::int64_t> secs(0, 86400);
  const char* rates[] = {"EUR/hour", "EUR/min", "EUR/s"};
  const std::int64_t per[] = {3600, 60, 1};
  for (int i = 0; i < 1000; ++i) {
    int r = i % 3;
    Rational rate(cents(rng), 100);
    std::int64_t d = secs(rng);
    Env env;
    env.one.emplace("Processing Time", q(d, "s"));
    auto expr = make_binary(BinaryOp::Mul, make_const(q(rate, rates[r])), make_ref("Processing Time"));
    auto got = eval_expr(*expr, env.bindings());
    Oracle expected = Oracle(rate.num(), rate.den()) * Oracle(d) / Oracle(per[r]);
    Oracle actual(got.base_value().num(), got.base_value().den());
    EXPECT_EQ(actual, expected) << rate.to_string() << " " << rates[r] << " * " << d << " s";
  }
}

TEST(EvalProperty, SumEqualsLeftFoldOfPlus) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::int64_t> v(0, 100000);
  std::uniform_int_distribution<int> n(1, 8);
  const char* unit_names[] = {"EUR", "min", "s", "count"};
  Env env;
  for (int i = 0; i < 500; ++i) {
    const char* u = unit_names[i % 4];
    std::vector<ExprPtr> args;
    for (int k = n(rng); k > 0; --k) args.push_back(make_const(q(Rational(v(rng), 100), u)));
    ExprPtr fold = args[0];
    for (std::size_t k = 1; k < args.size(); ++k) fold = make_binary(BinaryOp::Add, fold, args[k]);
    EXPECT_EQ(eval_expr(*make_call(Fn::Sum, args), env.bindings()), eval_expr(*fold, env.bindings()));
  }
}

TEST(EvalProperty, MinusOfSameTimePointIsZero) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> t(0, 4'000'000'000LL);
  Env env;
  for (int i = 0; i < 500; ++i) {
    auto x = make_const(q(t(rng), "datetime"), ConstExpr::Form::Timestamp);
    auto r = eval_expr(*make_call(Fn::Minus, {x, x}), env.bindings());
    EXPECT_EQ(r.dimension(), Dimension::Duration);
    EXPECT_TRUE(r.value.is_zero());
  }
}

// Random expression trees: whenever typecheck accepts one, evaluation yields
// that dimension or fails with an evaluation-time error only.
class RandomExpr {
 public:
  explicit RandomExpr(std::mt19937_64& rng) : rng_(rng) {}

  ExprPtr build(int depth) {
    int choice = pick(0, depth <= 0 ? 1 : 4);
    switch (choice) {
      case 0: {
        static const char* us[] = {"EUR", "min", "s", "count", "EUR/hour", "ratio", "datetime"};
        const char* u = us[pick(0, 6)];
        return make_const(q(Rational(pick(0, 5000), pick(1, 4)), u));
      }
      case 1: {
        static const char* refs[] = {"PT", "Cost", "Start", "N"};
        return make_ref(refs[pick(0, 3)]);
      }
      case 2:
      case 3: {
        auto op = static_cast<BinaryOp>(pick(0, 2));
        return make_binary(op, build(depth - 1), build(depth - 1));
      }
      default: {
        auto fn = static_cast<Fn>(pick(0, 6));
        std::vector<ExprPtr> args;
        for (int k = pick(1, 3); k > 0; --k) args.push_back(build(depth - 1));
        return make_call(fn, args);
      }
    }
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& rng_;
};

TEST(TypecheckProperty, SoundOnRandomTrees) {
  std::mt19937_64 rng(31337);
  RandomExpr gen(rng);
  Env env;
  env.one.emplace("PT", q(7, "min"));
  env.one.emplace("Cost", q(Rational(3, 2), "EUR"));
  env.one.emplace("Start", q(36000, "datetime"));
  env.one.emplace("N", q(4, "count"));
  int typed = 0;
  for (int i = 0; i < 5000; ++i) {
    auto e = gen.build(4);
    Dimension d;
    try {
      d = typecheck(*e, env.resolver());
    } catch (const DimensionMismatch&) {
      continue;
    }
    ++typed;
    try {
      auto v = eval_expr(*e, env.bindings());
      EXPECT_EQ(v.dimension(), d) << print(*e);
    } catch (const ArithmeticError&) {
    } catch (const EmptyAggregation&) {
    }
  }
  EXPECT_GT(typed, 500);
}

}  // namespace
}  // namespace bpm
