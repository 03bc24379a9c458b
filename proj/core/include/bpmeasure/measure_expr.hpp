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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bpmeasure/units.hpp"

namespace bpm {

enum class Fn { Sum, Minus, Mult, Avg, Min, Max, Count };
enum class BinaryOp { Add, Sub, Mul };

std::string_view to_string(Fn fn);
std::optional<Fn> parse_fn(std::string_view name);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct ConstExpr {
  // How the literal was written; only affects printing.
  enum class Form { Number, Clock, Timestamp };
  Quantity value;
  Form form = Form::Number;
  // The literal had no unit and took the annotation's unit ("Cost=0.1, EUR").
  bool unit_implied = false;

  bool operator==(const ConstExpr&) const = default;
};

// Which object a measure reference reads from. A bare name means the object
// the annotation is attached to.
struct RefTarget {
  enum class Kind { Self, Element, Children };
  Kind kind = Kind::Self;
  std::string element;  // only for Element

  bool operator==(const RefTarget&) const = default;
};

struct RefExpr {
  std::string measure;
  RefTarget target;

  bool operator==(const RefExpr&) const = default;
};

struct CallExpr {
  Fn fn = Fn::Sum;
  std::vector<ExprPtr> args;
};

struct BinaryExpr {
  BinaryOp op = BinaryOp::Add;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<ConstExpr, RefExpr, CallExpr, BinaryExpr> node;
};

// Deep structural equality.
bool operator==(const Expr& lhs, const Expr& rhs);
bool equal(const ExprPtr& lhs, const ExprPtr& rhs);

ExprPtr make_const(Quantity value, ConstExpr::Form form = ConstExpr::Form::Number);
ExprPtr make_ref(std::string measure, RefTarget target = {});
ExprPtr make_call(Fn fn, std::vector<ExprPtr> args);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

// Every Ref in the tree, depth first.
void collect_refs(const Expr& expr, std::vector<const RefExpr*>& out);

// `Name[=declaration],Unit`.
struct MeasureAnnotation {
  std::string name;
  Unit unit;
  ExprPtr decl;  // null when the annotation has no declaration

  bool operator==(const MeasureAnnotation& other) const {
    return name == other.name && unit == other.unit && equal(decl, other.decl);
  }
};

// Splits at the first unparenthesized '=' and the last top-level ','.
// A declaration made of a single unitless number takes the annotation unit.
// Throws SyntaxError (line 1, 1-based column) or UnknownUnit.
MeasureAnnotation parse_measure(std::string_view text, const UnitTable& units = UnitTable::defaults());

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := NUMBER UNIT? | CLOCK 'datetime'? | TIMESTAMP | NAME | NAME '.' NAME
//           | FN '(' expr (',' expr)* ')' | '(' expr ')'
ExprPtr parse_expression(std::string_view text, const UnitTable& units = UnitTable::defaults());

std::string print(const Expr& expr);
// Canonical `Name[=decl], Unit`.
std::string print(const MeasureAnnotation& annotation);

// Dimension of a reference; nullopt means the reference cannot be resolved.
using DimensionResolver = std::function<std::optional<Dimension>(const RefExpr&)>;

// Throws DimensionMismatch {path, found, expected} or UnresolvedRef.
Dimension typecheck(const Expr& expr, const DimensionResolver& resolve);

// Values of a reference: exactly one for Self/Element targets, any number
// for Children. nullopt means unbound.
using Bindings = std::function<std::optional<std::vector<Quantity>>(const RefExpr&)>;

// Exact evaluation in base units; the result carries the base unit of its
// dimension. `children.X` outside a call sums. Throws UnboundRef,
// EmptyAggregation, DimensionMismatch or ArithmeticError (negative duration,
// overflow).
Quantity eval_expr(const Expr& expr, const Bindings& bindings, const UnitTable& units = UnitTable::defaults());

}  // namespace bpm
