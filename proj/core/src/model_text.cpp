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

#include "bpmeasure/model_text.hpp"

#include <charconv>
#include <cstdio>
#include <set>

#include "bpmeasure/error.hpp"
#include "bpmeasure/time_format.hpp"

namespace bpm {
namespace {

enum class Tok { End, String, Ident, Number, LBrace, RBrace, LParen, RParen, Comma, Colon, Equals, Arrow };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "string \"" + t.text + "\"";
    case Tok::Ident: return "'" + t.text + "'";
    case Tok::Number: return "number " + t.text;
    default: return "'" + t.text + "'";
  }
}

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (c == '"') {
        t.kind = Tok::String;
        t.text = lex_string(t);
      } else if (is_ident_start(c)) {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() && (is_ident_start(src_[pos_]) || is_digit(src_[pos_]))) t.text += advance();
      } else if (is_digit(c) || (c == '-' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
        t.kind = Tok::Number;
        t.text += advance();
        while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '.' || src_[pos_] == ':'))
          t.text += advance();
        while (pos_ < src_.size() && is_ident_start(src_[pos_])) t.text += advance();
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        t.kind = Tok::Arrow;
        t.text = "->";
        advance();
        advance();
      } else {
        switch (c) {
          case '{': t.kind = Tok::LBrace; break;
          case '}': t.kind = Tok::RBrace; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ',': t.kind = Tok::Comma; break;
          case ':': t.kind = Tok::Colon; break;
          case '=': t.kind = Tok::Equals; break;
          default: {
            char buf[8];
            std::snprintf(buf, sizeof buf, "0x%02X", static_cast<unsigned char>(c));
            throw SyntaxError(line_, col_, "token", "unexpected character " + std::string(buf));
          }
        }
        t.text = std::string(1, advance());
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#' || (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string lex_string(const Token& start) {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= src_.size()) throw SyntaxError(start.line, start.column, "closing '\"'", "end of input");
      char c = advance();
      if (c == '"') return out;
      if (c == '\n') throw SyntaxError(line_ - 1, start.column, "closing '\"'", "end of line");
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= src_.size()) throw SyntaxError(line_, col_, "escape sequence", "end of input");
      char e = advance();
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case 'x': {
          int hi = pos_ < src_.size() ? hex_value(src_[pos_]) : -1;
          int lo = pos_ + 1 < src_.size() ? hex_value(src_[pos_ + 1]) : -1;
          if (hi < 0 || lo < 0) throw SyntaxError(line_, col_, "two hex digits after \\x");
          advance();
          advance();
          out += static_cast<char>(hi * 16 + lo);
          break;
        }
        default: throw SyntaxError(line_, col_ - 1, "escape sequence", std::string("\\") + e);
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ProcessModel run() {
    ProcessModel model;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (is_word("process")) {
        parse_process(model);
      } else if (is_word("resources")) {
        parse_resources(model);
      } else if (is_word("orgunit")) {
        parse_orgunit(model);
      } else if (is_word("model")) {
        next();
        model.name = expect(Tok::String, "model name string").text;
      } else {
        throw SyntaxError(t.line, t.column, "'process', 'resources', 'orgunit' or 'model'", describe(t));
      }
    }
    return model;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool is_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  const Token& expect(Tok kind, std::string_view what) {
    const Token& t = peek();
    if (t.kind != kind) throw SyntaxError(t.line, t.column, std::string(what), describe(t));
    return next();
  }

  void expect_word(std::string_view w) {
    const Token& t = peek();
    if (!(t.kind == Tok::Ident && t.text == w)) throw SyntaxError(t.line, t.column, "'" + std::string(w) + "'", describe(t));
    next();
  }

  Seconds duration_value() {
    const Token& t = expect(Tok::Number, "duration");
    auto secs = timefmt::parse_duration(t.text);
    if (!secs) throw SyntaxError(t.line, t.column, "duration like 90s, 3min or 0:03:00", describe(t));
    return Seconds{*secs};
  }

  std::int64_t int_value() {
    const Token& t = expect(Tok::Number, "integer");
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw SyntaxError(t.line, t.column, "integer", describe(t));
    return v;
  }

  double number_value() {
    const Token& t = expect(Tok::Number, "number");
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw SyntaxError(t.line, t.column, "number", describe(t));
    return v;
  }

  void parse_resources(ProcessModel& model) {
    next();
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      const Token& name_tok = expect(Tok::String, "resource name string or '}'");
      for (const auto& r : model.resources) {
        if (r.name == name_tok.text) throw DuplicateNameError(name_tok.line, name_tok.column, name_tok.text);
      }
      Resource r;
      r.name = name_tok.text;
      expect(Tok::Colon, "':'");
      const Token& kind = expect(Tok::Ident, "'people', 'equipment' or 'material'");
      if (kind.text == "people") {
        r.kind = ResourceKind::People;
      } else if (kind.text == "equipment") {
        r.kind = ResourceKind::Equipment;
      } else if (kind.text == "material") {
        r.kind = ResourceKind::Material;
      } else {
        throw SyntaxError(kind.line, kind.column, "'people', 'equipment' or 'material'", describe(kind));
      }
      const Token& x = expect(Tok::Ident, "'x'");
      if (x.text == "x") {
        r.capacity = int_value();
      } else if (x.text.size() > 1 && x.text[0] == 'x') {
        // "x2" lexes as one identifier
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(x.text.data() + 1, x.text.data() + x.text.size(), v);
        if (ec != std::errc() || ptr != x.text.data() + x.text.size()) throw SyntaxError(x.line, x.column, "'x'", describe(x));
        r.capacity = v;
      } else {
        throw SyntaxError(x.line, x.column, "'x'", describe(x));
      }
      if (r.capacity < 0) throw SyntaxError(x.line, x.column, "non-negative capacity");
      model.resources.push_back(std::move(r));
    }
    next();
  }

  void parse_orgunit(ProcessModel& model) {
    next();
    const Token& name_tok = expect(Tok::String, "org unit name string");
    if (model.find_org_unit(name_tok.text)) throw DuplicateNameError(name_tok.line, name_tok.column, name_tok.text);
    OrgUnit unit;
    unit.name = name_tok.text;
    expect(Tok::LBrace, "'{'");
    expect_word("members");
    expect(Tok::Colon, "':'");
    if (peek().kind == Tok::String) {
      unit.members.push_back(next().text);
      while (peek().kind == Tok::Comma) {
        next();
        unit.members.push_back(expect(Tok::String, "member name string").text);
      }
    }
    expect(Tok::RBrace, "'}'");
    model.org_units.push_back(std::move(unit));
  }

  void parse_process(ProcessModel& model) {
    next();
    const Token& name_tok = expect(Tok::String, "process name string");
    if (model.find_process(name_tok.text)) throw DuplicateNameError(name_tok.line, name_tok.column, name_tok.text);
    BusinessProcess p;
    p.name = name_tok.text;
    if (is_word("realizes")) {
      next();
      p.realizes_goal = expect(Tok::String, "goal string").text;
    }
    expect(Tok::LBrace, "'{'");
    std::set<std::string> names;
    while (peek().kind != Tok::RBrace) {
      if (is_word("lane")) {
        next();
        std::string lane = expect(Tok::String, "lane name string").text;
        expect(Tok::LBrace, "'{'");
        while (peek().kind != Tok::RBrace) parse_node(p, lane, names);
        next();
      } else if (is_word("flow")) {
        next();
        Flow f;
        f.from = expect(Tok::String, "flow source string").text;
        expect(Tok::Arrow, "'->'");
        f.to = expect(Tok::String, "flow target string").text;
        if (is_word("object")) {
          next();
          f.object = expect(Tok::String, "object name string").text;
        }
        p.flows.push_back(std::move(f));
      } else if (is_word("measure")) {
        next();
        p.measures.push_back(expect(Tok::String, "measure string").text);
      } else {
        parse_node(p, "", names);
      }
    }
    next();
    model.processes.push_back(std::move(p));
  }

  std::string node_name(std::set<std::string>& names) {
    const Token& t = expect(Tok::String, "element name string");
    if (!names.insert(t.text).second) throw DuplicateNameError(t.line, t.column, t.text);
    return t.text;
  }

  void parse_node(BusinessProcess& p, const std::string& lane, std::set<std::string>& names) {
    const Token& kw = peek();
    if (kw.kind != Tok::Ident) {
      throw SyntaxError(kw.line, kw.column, "element ('start', 'finish', 'task', 'subprocess', 'decision', 'datastore')",
                        describe(kw));
    }
    std::string word = kw.text;
    if (word == "start") {
      next();
      StartNode s;
      s.name = node_name(names);
      s.lane = lane;
      p.children.emplace_back(std::move(s));
    } else if (word == "finish") {
      next();
      FinishNode f;
      f.name = node_name(names);
      f.lane = lane;
      p.children.emplace_back(std::move(f));
    } else if (word == "task") {
      next();
      Task t;
      t.name = node_name(names);
      t.lane = lane;
      if (peek().kind == Tok::LBrace) parse_task_block(t);
      p.children.emplace_back(std::move(t));
    } else if (word == "subprocess") {
      next();
      SubprocessCall c;
      c.name = node_name(names);
      c.lane = lane;
      expect_word("ref");
      c.target = expect(Tok::String, "target process string").text;
      if (peek().kind == Tok::LBrace) {
        next();
        while (peek().kind != Tok::RBrace) {
          expect_word("measure");
          c.measures.push_back(expect(Tok::String, "measure string").text);
        }
        next();
      }
      p.children.emplace_back(std::move(c));
    } else if (word == "decision") {
      next();
      Decision d;
      d.name = node_name(names);
      d.lane = lane;
      expect(Tok::LBrace, "'{'");
      while (peek().kind != Tok::RBrace) {
        if (is_word("measure")) {
          next();
          d.measures.push_back(expect(Tok::String, "measure string").text);
          continue;
        }
        expect_word("branch");
        Branch b;
        b.label = expect(Tok::String, "branch label string").text;
        expect(Tok::Arrow, "'->'");
        b.target = expect(Tok::String, "branch target string").text;
        if (is_word("p")) {
          next();
          expect(Tok::Equals, "'='");
          b.probability = number_value();
        }
        d.branches.push_back(std::move(b));
      }
      next();
      p.children.emplace_back(std::move(d));
    } else if (word == "datastore") {
      next();
      Datastore ds;
      ds.name = node_name(names);
      ds.lane = lane;
      if (is_word("material")) {
        next();
        ds.material = expect(Tok::String, "material name string").text;
      }
      p.children.emplace_back(std::move(ds));
    } else {
      throw SyntaxError(kw.line, kw.column, "element ('start', 'finish', 'task', 'subprocess', 'decision', 'datastore')",
                        describe(kw));
    }
  }

  void parse_task_block(Task& t) {
    next();  // '{'
    bool have_perf = false;
    while (peek().kind != Tok::RBrace) {
      const Token& kw = peek();
      if (is_word("performer")) {
        if (have_perf) throw SyntaxError(kw.line, kw.column, "a single 'performer:'", "a second one");
        have_perf = true;
        next();
        expect(Tok::Colon, "':'");
        if (is_word("any")) {
          next();
          t.performer = {Performer::Mode::Any, ""};
        } else {
          t.performer = {Performer::Mode::Named, expect(Tok::String, "performer string or 'any'").text};
        }
      } else if (is_word("every")) {
        if (t.every) throw SyntaxError(kw.line, kw.column, "a single 'every'", "a second one");
        next();
        t.every = duration_value();
      } else if (is_word("duration")) {
        if (t.duration) throw SyntaxError(kw.line, kw.column, "a single 'duration:'", "a second one");
        next();
        expect(Tok::Colon, "':'");
        DurationSpec spec;
        if (is_word("fixed")) {
          next();
          expect(Tok::LParen, "'('");
          spec.kind = DurationSpec::Kind::Fixed;
          spec.low = spec.high = duration_value();
        } else if (is_word("uniform")) {
          next();
          expect(Tok::LParen, "'('");
          spec.kind = DurationSpec::Kind::Uniform;
          spec.low = duration_value();
          expect(Tok::Comma, "','");
          spec.high = duration_value();
        } else {
          const Token& bad = peek();
          throw SyntaxError(bad.line, bad.column, "'fixed' or 'uniform'", describe(bad));
        }
        expect(Tok::RParen, "')'");
        t.duration = spec;
      } else if (is_word("measure")) {
        next();
        t.measures.push_back(expect(Tok::String, "measure string").text);
      } else {
        throw SyntaxError(kw.line, kw.column, "'performer:', 'every', 'duration:', 'measure' or '}'", describe(kw));
      }
    }
    next();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02X", static_cast<unsigned char>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  // fixed notation: the lexer has no exponent form
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  return std::string(buf, ptr);
}

void write_element(std::string& out, const Element& element, const std::string& indent) {
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, StartNode>) {
          out += indent + "start " + quoted(e.name) + "\n";
        } else if constexpr (std::is_same_v<T, FinishNode>) {
          out += indent + "finish " + quoted(e.name) + "\n";
        } else if constexpr (std::is_same_v<T, Datastore>) {
          out += indent + "datastore " + quoted(e.name);
          if (e.material) out += " material " + quoted(*e.material);
          out += "\n";
        } else if constexpr (std::is_same_v<T, SubprocessCall>) {
          out += indent + "subprocess " + quoted(e.name) + " ref " + quoted(e.target);
          if (e.measures.empty()) {
            out += "\n";
          } else {
            out += " {\n";
            for (const auto& m : e.measures) out += indent + "  measure " + quoted(m) + "\n";
            out += indent + "}\n";
          }
        } else if constexpr (std::is_same_v<T, Decision>) {
          out += indent + "decision " + quoted(e.name) + " {\n";
          for (const auto& b : e.branches) {
            out += indent + "  branch " + quoted(b.label) + " -> " + quoted(b.target);
            if (b.probability) out += " p=" + format_double(*b.probability);
            out += "\n";
          }
          for (const auto& m : e.measures) out += indent + "  measure " + quoted(m) + "\n";
          out += indent + "}\n";
        } else if constexpr (std::is_same_v<T, Task>) {
          out += indent + "task " + quoted(e.name);
          bool empty = e.performer.mode == Performer::Mode::Unspecified && !e.every && !e.duration && e.measures.empty();
          if (empty) {
            out += "\n";
            return;
          }
          out += " {\n";
          if (e.performer.mode == Performer::Mode::Any) out += indent + "  performer: any\n";
          if (e.performer.mode == Performer::Mode::Named) out += indent + "  performer: " + quoted(e.performer.name) + "\n";
          if (e.every) out += indent + "  every " + timefmt::format_clock(e.every->count()) + "\n";
          if (e.duration) {
            if (e.duration->kind == DurationSpec::Kind::Fixed) {
              out += indent + "  duration: fixed(" + timefmt::format_clock(e.duration->low.count()) + ")\n";
            } else {
              out += indent + "  duration: uniform(" + timefmt::format_clock(e.duration->low.count()) + ", " +
                     timefmt::format_clock(e.duration->high.count()) + ")\n";
            }
          }
          for (const auto& m : e.measures) out += indent + "  measure " + quoted(m) + "\n";
          out += indent + "}\n";
        }
      },
      element);
}

}  // namespace

ProcessModel parse_model(std::string_view text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

std::string serialize_model(const ProcessModel& model) {
  std::string out;
  if (!model.name.empty()) out += "model " + quoted(model.name) + "\n";
  if (!model.resources.empty()) {
    out += "resources {\n";
    for (const auto& r : model.resources) {
      out += "  " + quoted(r.name) + ": " + std::string(to_string(r.kind)) + " x " + std::to_string(r.capacity) + "\n";
    }
    out += "}\n";
  }
  for (const auto& u : model.org_units) {
    out += "orgunit " + quoted(u.name) + " {\n  members:";
    for (std::size_t i = 0; i < u.members.size(); ++i) out += (i ? ", " : " ") + quoted(u.members[i]);
    out += "\n}\n";
  }
  for (const auto& p : model.processes) {
    out += "process " + quoted(p.name);
    if (p.realizes_goal) out += " realizes " + quoted(*p.realizes_goal);
    out += " {\n";
    std::size_t i = 0;
    while (i < p.children.size()) {
      const std::string& lane = node(p.children[i]).lane;
      if (lane.empty()) {
        write_element(out, p.children[i], "  ");
        ++i;
        continue;
      }
      out += "  lane " + quoted(lane) + " {\n";
      while (i < p.children.size() && node(p.children[i]).lane == lane) {
        write_element(out, p.children[i], "    ");
        ++i;
      }
      out += "  }\n";
    }
    for (const auto& m : p.measures) out += "  measure " + quoted(m) + "\n";
    for (const auto& f : p.flows) {
      out += "  flow " + quoted(f.from) + " -> " + quoted(f.to);
      if (f.object) out += " object " + quoted(*f.object);
      out += "\n";
    }
    out += "}\n";
  }
  return out;
}

}  // namespace bpm
