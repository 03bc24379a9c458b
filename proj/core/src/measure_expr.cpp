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

#include "bpmeasure/measure_expr.hpp"

#include <algorithm>
#include <cctype>

#include "bpmeasure/error.hpp"
#include "bpmeasure/time_format.hpp"

namespace bpm {

std::string_view to_string(Fn fn) {
  switch (fn) {
    case Fn::Sum: return "Sum";
    case Fn::Minus: return "Minus";
    case Fn::Mult: return "Mult";
    case Fn::Avg: return "Avg";
    case Fn::Min: return "Min";
    case Fn::Max: return "Max";
    case Fn::Count: return "Count";
  }
  return "Sum";
}

std::optional<Fn> parse_fn(std::string_view name) {
  for (Fn fn : {Fn::Sum, Fn::Minus, Fn::Mult, Fn::Avg, Fn::Min, Fn::Max, Fn::Count}) {
    if (to_string(fn) == name) return fn;
  }
  return std::nullopt;
}

bool equal(const ExprPtr& lhs, const ExprPtr& rhs) {
  if (!lhs || !rhs) return !lhs && !rhs;
  return *lhs == *rhs;
}

bool operator==(const Expr& lhs, const Expr& rhs) {
  if (lhs.node.index() != rhs.node.index()) return false;
  return std::visit(
      [&](const auto& l) -> bool {
        using T = std::decay_t<decltype(l)>;
        const auto& r = std::get<T>(rhs.node);
        if constexpr (std::is_same_v<T, CallExpr>) {
          if (l.fn != r.fn || l.args.size() != r.args.size()) return false;
          for (std::size_t i = 0; i < l.args.size(); ++i) {
            if (!equal(l.args[i], r.args[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return l.op == r.op && equal(l.lhs, r.lhs) && equal(l.rhs, r.rhs);
        } else {
          return l == r;
        }
      },
      lhs.node);
}

ExprPtr make_const(Quantity value, ConstExpr::Form form) {
  return std::make_shared<Expr>(Expr{ConstExpr{std::move(value), form, false}});
}

ExprPtr make_ref(std::string measure, RefTarget target) {
  return std::make_shared<Expr>(Expr{RefExpr{std::move(measure), std::move(target)}});
}

ExprPtr make_call(Fn fn, std::vector<ExprPtr> args) {
  return std::make_shared<Expr>(Expr{CallExpr{fn, std::move(args)}});
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<Expr>(Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}});
}

void collect_refs(const Expr& expr, std::vector<const RefExpr*>& out) {
  if (const auto* ref = std::get_if<RefExpr>(&expr.node)) {
    out.push_back(ref);
  } else if (const auto* call = std::get_if<CallExpr>(&expr.node)) {
    for (const auto& a : call->args) collect_refs(*a, out);
  } else if (const auto* bin = std::get_if<BinaryExpr>(&expr.node)) {
    collect_refs(*bin->lhs, out);
    collect_refs(*bin->rhs, out);
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

constexpr int kMaxDepth = 200;

bool is_word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;
}

bool is_word_start(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalpha(u) || c == '_' || u >= 0x80;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class ExprParser {
 public:
  ExprParser(std::string_view text, const UnitTable& units, int column_offset)
      : text_(text), units_(units), offset_(column_offset) {}

  ExprPtr parse_all() {
    skip_space();
    if (pos_ >= text_.size()) fail("expression");
    ExprPtr e = parse_expr(0);
    skip_space();
    if (pos_ < text_.size()) fail("operator or end of expression");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of expression";
    throw SyntaxError(1, offset_ + static_cast<int>(pos_) + 1, expected, found);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr parse_expr(int depth) {
    if (depth > kMaxDepth) fail("shallower nesting");
    ExprPtr lhs = parse_term(depth);
    while (true) {
      skip_space();
      if (consume('+')) {
        lhs = make_binary(BinaryOp::Add, lhs, parse_term(depth));
      } else if (consume('-')) {
        lhs = make_binary(BinaryOp::Sub, lhs, parse_term(depth));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term(int depth) {
    ExprPtr lhs = parse_factor(depth);
    while (consume('*')) lhs = make_binary(BinaryOp::Mul, lhs, parse_factor(depth));
    return lhs;
  }

  std::string parse_name() {
    std::string name;
    while (true) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
      name.append(text_.substr(start, pos_ - start));
      std::size_t save = pos_;
      skip_space();
      if (pos_ < text_.size() && pos_ > save && is_word_start(text_[pos_])) {
        name += ' ';
        continue;
      }
      pos_ = save;
      return name;
    }
  }

  ExprPtr parse_factor(int depth) {
    skip_space();
    if (pos_ >= text_.size()) fail("operand");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr(depth + 1);
      if (!consume(')')) fail("')'");
      return inner;
    }
    if (is_digit(c)) return parse_literal();
    if (is_word_start(c)) {
      std::size_t name_pos = pos_;
      std::string name = parse_name();
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        auto fn = parse_fn(name);
        if (!fn) {
          pos_ = name_pos;
          fail("function name (Sum, Minus, Mult, Avg, Min, Max, Count)");
        }
        ++pos_;
        std::vector<ExprPtr> args;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ')' && *fn == Fn::Count) {
          ++pos_;
        } else {
          args.push_back(parse_expr(depth + 1));
          while (consume(',')) args.push_back(parse_expr(depth + 1));
          if (!consume(')')) fail("',' or ')'");
        }
        if (*fn == Fn::Minus && args.size() != 2) {
          pos_ = name_pos;
          fail("Minus with exactly two arguments");
        }
        return make_call(*fn, std::move(args));
      }
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        skip_space();
        if (pos_ >= text_.size() || !is_word_start(text_[pos_])) fail("measure name after '.'");
        std::string measure = parse_name();
        RefTarget target;
        if (name == "children") {
          target.kind = RefTarget::Kind::Children;
        } else {
          target.kind = RefTarget::Kind::Element;
          target.element = name;
        }
        return make_ref(std::move(measure), std::move(target));
      }
      return make_ref(std::move(name));
    }
    fail("number, name, function call or '('");
  }

  ExprPtr parse_literal() {
    // ISO timestamp
    if (pos_ + 19 <= text_.size()) {
      if (auto ts = timefmt::parse_iso(text_.substr(pos_, 19))) {
        pos_ += 19;
        return make_const(Quantity{Rational(*ts), units_.base(Dimension::TimePoint)}, ConstExpr::Form::Timestamp);
      }
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '.' || text_[pos_] == ':')) ++pos_;
    std::string_view lit = text_.substr(start, pos_ - start);
    if (lit.find(':') != std::string_view::npos) {
      auto secs = timefmt::parse_clock(lit);
      if (!secs) {
        pos_ = start;
        fail("clock literal H:MM:SS");
      }
      std::size_t save = pos_;
      skip_space();
      if (const Unit* u = units_.match_prefix(text_.substr(pos_)); u && u->dimension == Dimension::TimePoint) {
        pos_ += u->symbol.size();
        return make_const(Quantity{Rational(*secs) / u->scale, *u}, ConstExpr::Form::Timestamp);
      }
      pos_ = save;
      return make_const(Quantity{Rational(*secs), units_.base(Dimension::Duration)}, ConstExpr::Form::Clock);
    }
    auto value = Rational::parse(lit);
    if (!value) {
      pos_ = start;
      fail("number");
    }
    std::size_t save = pos_;
    skip_space();
    if (pos_ < text_.size()) {
      if (const Unit* u = units_.match_prefix(text_.substr(pos_))) {
        pos_ += u->symbol.size();
        return make_const(Quantity{*value, *u});
      }
    }
    pos_ = save;
    return make_const(Quantity{*value, units_.base(Dimension::Dimensionless)});
  }

  std::string_view text_;
  const UnitTable& units_;
  int offset_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

ExprPtr parse_expression(std::string_view text, const UnitTable& units) {
  return ExprParser(text, units, 0).parse_all();
}

MeasureAnnotation parse_measure(std::string_view text, const UnitTable& units) {
  int depth = 0;
  std::size_t eq = std::string_view::npos;
  std::size_t comma = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) throw SyntaxError(1, static_cast<int>(i) + 1, "balanced parentheses", "')'");
    } else if (depth == 0 && c == '=' && eq == std::string_view::npos) {
      eq = i;
    } else if (depth == 0 && c == ',') {
      comma = i;
    }
  }
  if (depth != 0) throw SyntaxError(1, static_cast<int>(text.size()) + 1, "')'", "end of annotation");
  if (comma == std::string_view::npos || (eq != std::string_view::npos && eq > comma)) {
    throw SyntaxError(1, static_cast<int>(text.size()) + 1, "', Unit' after the measure name", "end of annotation");
  }

  MeasureAnnotation out;
  std::string_view name = trim(text.substr(0, eq == std::string_view::npos ? comma : eq));
  if (name.empty()) throw SyntaxError(1, 1, "measure name");
  for (char c : name) {
    if (!is_word_char(c) && c != ' ') throw SyntaxError(1, 1, "measure name of letters, digits and spaces", "'" + std::string(1, c) + "'");
  }
  out.name = std::string(name);

  std::string_view unit_text = trim(text.substr(comma + 1));
  if (unit_text.empty()) throw SyntaxError(1, static_cast<int>(comma) + 2, "unit");
  out.unit = units.at(unit_text);

  if (eq != std::string_view::npos) {
    std::string_view decl_text = text.substr(eq + 1, comma - eq - 1);
    if (trim(decl_text).empty()) throw SyntaxError(1, static_cast<int>(eq) + 2, "declaration after '='");
    out.decl = ExprParser(decl_text, units, static_cast<int>(eq) + 1).parse_all();
    if (const auto* c = std::get_if<ConstExpr>(&out.decl->node);
        c && c->form == ConstExpr::Form::Number && c->value.unit.dimension == Dimension::Dimensionless &&
        out.unit.dimension != Dimension::Dimensionless) {
      ConstExpr adopted{Quantity{c->value.value, out.unit}, ConstExpr::Form::Number, true};
      out.decl = std::make_shared<Expr>(Expr{adopted});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) return b->op == BinaryOp::Mul ? 2 : 1;
  return 3;
}

}  // namespace

std::string print(const Expr& expr) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstExpr>) {
          switch (n.form) {
            case ConstExpr::Form::Clock:
              return timefmt::format_clock(n.value.base_value().round_to_integer());
            case ConstExpr::Form::Timestamp: {
              std::int64_t secs = n.value.base_value().round_to_integer();
              if (secs >= 0 && secs < timefmt::kSecondsPerDay) return timefmt::format_clock(secs) + " " + n.value.unit.symbol;
              return timefmt::format_iso(secs);
            }
            case ConstExpr::Form::Number:
              break;
          }
          std::string out = n.value.value.to_string();
          if (!n.unit_implied && !(n.value.unit.dimension == Dimension::Dimensionless && n.value.unit.scale == Rational(1)))
            out += " " + n.value.unit.symbol;
          return out;
        } else if constexpr (std::is_same_v<T, RefExpr>) {
          switch (n.target.kind) {
            case RefTarget::Kind::Self: return n.measure;
            case RefTarget::Kind::Element: return n.target.element + "." + n.measure;
            case RefTarget::Kind::Children: return "children." + n.measure;
          }
          return n.measure;
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          std::string out(to_string(n.fn));
          out += '(';
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            out += print(*n.args[i]);
          }
          return out + ")";
        } else {
          int prec = n.op == BinaryOp::Mul ? 2 : 1;
          std::string l = print(*n.lhs);
          std::string r = print(*n.rhs);
          if (precedence(*n.lhs) < prec) l = "(" + l + ")";
          if (precedence(*n.rhs) <= prec) r = "(" + r + ")";
          switch (n.op) {
            case BinaryOp::Add: return l + " + " + r;
            case BinaryOp::Sub: return l + " - " + r;
            case BinaryOp::Mul: return l + "*" + r;
          }
          return l;
        }
      },
      expr.node);
}

std::string print(const MeasureAnnotation& annotation) {
  std::string out = annotation.name;
  if (annotation.decl) out += "=" + print(*annotation.decl);
  return out + ", " + annotation.unit.symbol;
}

// ---------------------------------------------------------------------------
// Dimension rules

namespace {

bool is_scalar(Dimension d) { return d == Dimension::Dimensionless || d == Dimension::Count; }

std::optional<Dimension> add_rule(Dimension a, Dimension b) {
  if (a == Dimension::TimePoint && b == Dimension::Duration) return Dimension::TimePoint;
  if (a == Dimension::Duration && b == Dimension::TimePoint) return Dimension::TimePoint;
  if (a == b && a != Dimension::TimePoint) return a;
  return std::nullopt;
}

std::optional<Dimension> sub_rule(Dimension a, Dimension b) {
  if (a == Dimension::TimePoint && b == Dimension::TimePoint) return Dimension::Duration;
  if (a == Dimension::TimePoint && b == Dimension::Duration) return Dimension::TimePoint;
  if (a == b) return a;
  return std::nullopt;
}

std::optional<Dimension> mul_rule(Dimension a, Dimension b) {
  if ((a == Dimension::Duration && b == Dimension::CurrencyPerDuration) ||
      (a == Dimension::CurrencyPerDuration && b == Dimension::Duration))
    return Dimension::Currency;
  if (a == Dimension::TimePoint || b == Dimension::TimePoint) return std::nullopt;
  if (is_scalar(a) && is_scalar(b)) {
    return (a == Dimension::Count || b == Dimension::Count) ? Dimension::Count : Dimension::Dimensionless;
  }
  if (is_scalar(a)) return b;
  if (is_scalar(b)) return a;
  return std::nullopt;
}

std::string name(Dimension d) { return std::string(to_string(d)); }

class Checker {
 public:
  explicit Checker(const DimensionResolver& resolve) : resolve_(resolve) {}

  Dimension check(const Expr& e, const std::string& path) {
    return std::visit(
        [&](const auto& n) -> Dimension {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ConstExpr>) {
            return n.value.unit.dimension;
          } else if constexpr (std::is_same_v<T, RefExpr>) {
            auto d = resolve_(n);
            if (!d) throw UnresolvedRef("unresolved reference '" + print(e) + "' at " + path);
            return *d;
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            Dimension l = check(*n.lhs, path + "/lhs");
            Dimension r = check(*n.rhs, path + "/rhs");
            std::optional<Dimension> out;
            switch (n.op) {
              case BinaryOp::Add: out = add_rule(l, r); break;
              case BinaryOp::Sub: out = sub_rule(l, r); break;
              case BinaryOp::Mul: out = mul_rule(l, r); break;
            }
            if (!out) throw DimensionMismatch(path + "/rhs", name(r), expected_for(n.op, l));
            return *out;
          } else {
            return check_call(n, path + "/" + std::string(to_string(n.fn)));
          }
        },
        e.node);
  }

 private:
  static std::string expected_for(BinaryOp op, Dimension lhs) {
    switch (op) {
      case BinaryOp::Mul:
        if (lhs == Dimension::Duration) return "CurrencyPerDuration or a scalar";
        if (lhs == Dimension::CurrencyPerDuration) return "Duration or a scalar";
        return "a dimension compatible with " + name(lhs);
      case BinaryOp::Sub:
        if (lhs == Dimension::TimePoint) return "TimePoint or Duration";
        return name(lhs);
      case BinaryOp::Add:
        if (lhs == Dimension::TimePoint) return "Duration";
        return name(lhs);
    }
    return name(lhs);
  }

  Dimension check_call(const CallExpr& call, const std::string& path) {
    std::vector<Dimension> dims;
    for (std::size_t i = 0; i < call.args.size(); ++i) {
      dims.push_back(check(*call.args[i], path + "/arg" + std::to_string(i)));
    }
    switch (call.fn) {
      case Fn::Count:
        return Dimension::Count;
      case Fn::Minus: {
        if (dims.size() != 2) throw DimensionMismatch(path, std::to_string(dims.size()) + " arguments", "2 arguments");
        auto out = sub_rule(dims[0], dims[1]);
        if (!out) throw DimensionMismatch(path + "/arg1", name(dims[1]), expected_for(BinaryOp::Sub, dims[0]));
        return *out;
      }
      case Fn::Mult: {
        if (dims.empty()) throw DimensionMismatch(path, "0 arguments", "at least 1 argument");
        Dimension acc = dims[0];
        for (std::size_t i = 1; i < dims.size(); ++i) {
          auto out = mul_rule(acc, dims[i]);
          if (!out) throw DimensionMismatch(path + "/arg" + std::to_string(i), name(dims[i]), expected_for(BinaryOp::Mul, acc));
          acc = *out;
        }
        return acc;
      }
      case Fn::Sum:
      case Fn::Avg:
      case Fn::Min:
      case Fn::Max: {
        if (dims.empty()) throw DimensionMismatch(path, "0 arguments", "at least 1 argument");
        for (std::size_t i = 1; i < dims.size(); ++i) {
          if (dims[i] != dims[0]) throw DimensionMismatch(path + "/arg" + std::to_string(i), name(dims[i]), name(dims[0]));
        }
        if (call.fn == Fn::Sum && dims[0] == Dimension::TimePoint) {
          throw DimensionMismatch(path + "/arg0", name(dims[0]), "a summable dimension (not TimePoint)");
        }
        return dims[0];
      }
    }
    return Dimension::Dimensionless;
  }

  const DimensionResolver& resolve_;
};

// Base-unit arithmetic.
class Evaluator {
 public:
  Evaluator(const Bindings& bindings, const UnitTable& units) : bindings_(bindings), units_(units) {}

  Quantity eval(const Expr& e) {
    return std::visit(
        [&](const auto& n) -> Quantity {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ConstExpr>) {
            return base(n.value.base_value(), n.value.unit.dimension);
          } else if constexpr (std::is_same_v<T, RefExpr>) {
            auto values = bind(n);
            if (n.target.kind == RefTarget::Kind::Children) return fold(Fn::Sum, values, print(e));
            if (values.size() != 1) throw UnboundRef("reference '" + print(e) + "' must bind exactly one value");
            return values.front();
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            Quantity l = eval(*n.lhs);
            Quantity r = eval(*n.rhs);
            return apply(n.op, l, r);
          } else {
            std::vector<Quantity> args;
            for (const auto& a : n.args) {
              const auto* ref = std::get_if<RefExpr>(&a->node);
              if (ref && ref->target.kind == RefTarget::Kind::Children) {
                auto values = bind(*ref);
                args.insert(args.end(), values.begin(), values.end());
              } else {
                args.push_back(eval(*a));
              }
            }
            return fold(n.fn, args, print(e));
          }
        },
        e.node);
  }

 private:
  Quantity base(const Rational& v, Dimension d) const { return Quantity{v, units_.base(d)}; }

  std::vector<Quantity> bind(const RefExpr& ref) {
    auto values = bindings_(ref);
    if (!values) {
      std::string text = ref.target.kind == RefTarget::Kind::Self       ? ref.measure
                         : ref.target.kind == RefTarget::Kind::Children ? "children." + ref.measure
                                                                         : ref.target.element + "." + ref.measure;
      throw UnboundRef("no value bound for '" + text + "'");
    }
    std::vector<Quantity> out;
    for (const auto& q : *values) out.push_back(base(q.base_value(), q.dimension()));
    return out;
  }

  Quantity apply(BinaryOp op, const Quantity& l, const Quantity& r) {
    Dimension ld = l.dimension();
    Dimension rd = r.dimension();
    std::optional<Dimension> d;
    Rational v;
    switch (op) {
      case BinaryOp::Add:
        d = add_rule(ld, rd);
        if (d) v = l.value + r.value;
        break;
      case BinaryOp::Sub:
        d = sub_rule(ld, rd);
        if (d) v = l.value - r.value;
        break;
      case BinaryOp::Mul:
        d = mul_rule(ld, rd);
        if (d) v = l.value * r.value;
        break;
    }
    if (!d) throw DimensionMismatch("eval", name(rd), name(ld));
    if (*d == Dimension::Duration && v.is_negative()) throw ArithmeticError("negative duration " + v.to_string() + " s");
    return base(v, *d);
  }

  Quantity fold(Fn fn, const std::vector<Quantity>& args, const std::string& where) {
    if (fn == Fn::Count) return base(Rational(static_cast<std::int64_t>(args.size())), Dimension::Count);
    if (args.empty()) throw EmptyAggregation(std::string(to_string(fn)) + " over no values in '" + where + "'");
    switch (fn) {
      case Fn::Minus:
        if (args.size() != 2) throw DimensionMismatch(where, std::to_string(args.size()) + " arguments", "2 arguments");
        return apply(BinaryOp::Sub, args[0], args[1]);
      case Fn::Mult: {
        Quantity acc = args[0];
        for (std::size_t i = 1; i < args.size(); ++i) acc = apply(BinaryOp::Mul, acc, args[i]);
        return acc;
      }
      case Fn::Sum: {
        Quantity acc = args[0];
        if (acc.dimension() == Dimension::TimePoint) throw DimensionMismatch(where, "TimePoint", "a summable dimension");
        for (std::size_t i = 1; i < args.size(); ++i) acc = apply(BinaryOp::Add, acc, args[i]);
        return acc;
      }
      case Fn::Avg:
      case Fn::Min:
      case Fn::Max: {
        Dimension d = args[0].dimension();
        for (const auto& a : args) {
          if (a.dimension() != d) throw DimensionMismatch(where, name(a.dimension()), name(d));
        }
        if (fn == Fn::Avg) {
          Rational sum;
          for (const auto& a : args) sum += a.value;
          return base(sum / Rational(static_cast<std::int64_t>(args.size())), d);
        }
        auto cmp = [](const Quantity& a, const Quantity& b) { return a.value < b.value; };
        return fn == Fn::Min ? *std::min_element(args.begin(), args.end(), cmp)
                             : *std::max_element(args.begin(), args.end(), cmp);
      }
      case Fn::Count:
        break;
    }
    return args[0];
  }

  const Bindings& bindings_;
  const UnitTable& units_;
};

}  // namespace

Dimension typecheck(const Expr& expr, const DimensionResolver& resolve) {
  return Checker(resolve).check(expr, "decl");
}

Quantity eval_expr(const Expr& expr, const Bindings& bindings, const UnitTable& units) {
  return Evaluator(bindings, units).eval(expr);
}

}  // namespace bpm
