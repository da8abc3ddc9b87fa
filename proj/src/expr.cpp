// Copyright 2026 The fhh Authors
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

#include "fhh/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fhh/errors.hpp"

namespace fhh {

struct Expr::Node {
  NodeKind kind;
  double a = 0.0;   // literal value, family exponent / slope
  double b = 0.0;   // affine intercept
  std::shared_ptr<const Node> lhs{};
  std::shared_ptr<const Node> rhs{};
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

bool is_integral(double v) { return std::isfinite(v) && std::floor(v) == v; }

// Shortest %g form that reads back to the same double.
std::string format_number(double v) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_signed(double v) {
  return v < 0.0 ? "(" + format_number(v) + ")" : format_number(v);
}

const char* binary_symbol(NodeKind k) {
  switch (k) {
    case NodeKind::kAdd: return " + ";
    case NodeKind::kSub: return " - ";
    case NodeKind::kMul: return " * ";
    case NodeKind::kDiv: return " / ";
    case NodeKind::kPow: return "^";
    default: return "?";
  }
}

const char* call_name(NodeKind k) {
  switch (k) {
    case NodeKind::kExp: return "exp";
    case NodeKind::kLn: return "ln";
    case NodeKind::kSqrt: return "sqrt";
    case NodeKind::kAbs: return "abs";
    default: return "?";
  }
}

std::string print(const Expr::Node& n) {
  switch (n.kind) {
    case NodeKind::kLiteral: return format_signed(n.a);
    case NodeKind::kVariable: return "x";
    case NodeKind::kNegate:
      if (n.lhs->kind == NodeKind::kLiteral) return "(-(" + print(*n.lhs) + "))";
      return "(-" + print(*n.lhs) + ")";
    case NodeKind::kAdd:
    case NodeKind::kSub:
    case NodeKind::kMul:
    case NodeKind::kDiv:
    case NodeKind::kPow:
      return "(" + print(*n.lhs) + binary_symbol(n.kind) + print(*n.rhs) + ")";
    case NodeKind::kExp:
    case NodeKind::kLn:
    case NodeKind::kSqrt:
    case NodeKind::kAbs:
      return std::string(call_name(n.kind)) + "(" + print(*n.lhs) + ")";
    case NodeKind::kPowerFamily: return "power(" + format_number(n.a) + ")";
    case NodeKind::kRecipFamily: return "recip";
    case NodeKind::kAffineFamily:
      return "affine(" + format_number(n.a) + ", " + format_number(n.b) + ")";
  }
  return "?";
}

bool depends_on_x(const Expr::Node& n) {
  switch (n.kind) {
    case NodeKind::kLiteral: return false;
    case NodeKind::kVariable:
    case NodeKind::kPowerFamily:
    case NodeKind::kRecipFamily:
    case NodeKind::kAffineFamily: return true;
    default:
      return (n.lhs && depends_on_x(*n.lhs)) || (n.rhs && depends_on_x(*n.rhs));
  }
}

[[noreturn]] void fail(const Expr::Node& n, const std::string& why, double x) {
  std::string node = print(n);
  throw EvalError(why + " in '" + node + "' at x = " + format_number(x), node);
}

double checked(const Expr::Node& n, double v, double x) {
  if (!std::isfinite(v)) fail(n, "non-finite result", x);
  return v;
}

// base^exponent on the evaluation domain: positive base, zero base with
// non-negative exponent, or negative base with an integral exponent.
double power_value(const Expr::Node& n, double base, double exponent, double x) {
  if (base == 0.0) {
    if (exponent < 0.0) fail(n, "zero raised to a negative power", x);
    return exponent == 0.0 ? 1.0 : 0.0;
  }
  if (base < 0.0 && !is_integral(exponent)) {
    fail(n, "negative base with non-integer exponent", x);
  }
  return std::pow(base, exponent);
}

double eval_node(const Expr::Node& n, double x) {
  switch (n.kind) {
    case NodeKind::kLiteral: return n.a;
    case NodeKind::kVariable: return x;
    case NodeKind::kNegate: return -eval_node(*n.lhs, x);
    case NodeKind::kAdd: return checked(n, eval_node(*n.lhs, x) + eval_node(*n.rhs, x), x);
    case NodeKind::kSub: return checked(n, eval_node(*n.lhs, x) - eval_node(*n.rhs, x), x);
    case NodeKind::kMul: return checked(n, eval_node(*n.lhs, x) * eval_node(*n.rhs, x), x);
    case NodeKind::kDiv: {
      const double num = eval_node(*n.lhs, x);
      const double den = eval_node(*n.rhs, x);
      if (den == 0.0) fail(n, "division by zero", x);
      return checked(n, num / den, x);
    }
    case NodeKind::kPow:
      return checked(n, power_value(n, eval_node(*n.lhs, x), eval_node(*n.rhs, x), x), x);
    case NodeKind::kExp: return checked(n, std::exp(eval_node(*n.lhs, x)), x);
    case NodeKind::kLn: {
      const double arg = eval_node(*n.lhs, x);
      if (!(arg > 0.0)) fail(n, "logarithm of a non-positive value", x);
      return std::log(arg);
    }
    case NodeKind::kSqrt: {
      const double arg = eval_node(*n.lhs, x);
      if (arg < 0.0) fail(n, "square root of a negative value", x);
      return std::sqrt(arg);
    }
    case NodeKind::kAbs: return std::abs(eval_node(*n.lhs, x));
    case NodeKind::kPowerFamily: return checked(n, power_value(n, x, n.a, x), x);
    case NodeKind::kRecipFamily:
      if (x == 0.0) fail(n, "division by zero", x);
      return checked(n, 1.0 / x, x);
    case NodeKind::kAffineFamily: return checked(n, n.a * x + n.b, x);
  }
  fail(n, "unknown node", x);
}

DualValue dual_power(const Expr::Node& n, DualValue base, double exponent, double x) {
  const double value = power_value(n, base.value, exponent, x);
  if (exponent == 0.0) return {value, 0.0};
  if (base.value == 0.0 && exponent < 1.0) fail(n, "not differentiable", x);
  const double slope = exponent == 1.0 ? 1.0 : exponent * std::pow(base.value, exponent - 1.0);
  return {value, checked(n, slope * base.deriv, x)};
}

DualValue dual_node(const Expr::Node& n, double x) {
  switch (n.kind) {
    case NodeKind::kLiteral: return {n.a, 0.0};
    case NodeKind::kVariable: return {x, 1.0};
    case NodeKind::kNegate: {
      const DualValue f = dual_node(*n.lhs, x);
      return {-f.value, -f.deriv};
    }
    case NodeKind::kAdd: {
      const DualValue f = dual_node(*n.lhs, x), g = dual_node(*n.rhs, x);
      return {checked(n, f.value + g.value, x), checked(n, f.deriv + g.deriv, x)};
    }
    case NodeKind::kSub: {
      const DualValue f = dual_node(*n.lhs, x), g = dual_node(*n.rhs, x);
      return {checked(n, f.value - g.value, x), checked(n, f.deriv - g.deriv, x)};
    }
    case NodeKind::kMul: {
      const DualValue f = dual_node(*n.lhs, x), g = dual_node(*n.rhs, x);
      return {checked(n, f.value * g.value, x),
              checked(n, f.deriv * g.value + f.value * g.deriv, x)};
    }
    case NodeKind::kDiv: {
      const DualValue f = dual_node(*n.lhs, x), g = dual_node(*n.rhs, x);
      if (g.value == 0.0) fail(n, "division by zero", x);
      const double q = f.value / g.value;
      return {checked(n, q, x), checked(n, (f.deriv - q * g.deriv) / g.value, x)};
    }
    case NodeKind::kPow: {
      const DualValue f = dual_node(*n.lhs, x);
      if (!depends_on_x(*n.rhs)) return dual_power(n, f, eval_node(*n.rhs, x), x);
      const DualValue g = dual_node(*n.rhs, x);
      if (!(f.value > 0.0)) fail(n, "variable exponent needs a positive base", x);
      const double value = checked(n, std::pow(f.value, g.value), x);
      const double deriv = value * (g.deriv * std::log(f.value) + g.value * f.deriv / f.value);
      return {value, checked(n, deriv, x)};
    }
    case NodeKind::kExp: {
      const DualValue f = dual_node(*n.lhs, x);
      const double e = checked(n, std::exp(f.value), x);
      return {e, checked(n, e * f.deriv, x)};
    }
    case NodeKind::kLn: {
      const DualValue f = dual_node(*n.lhs, x);
      if (!(f.value > 0.0)) fail(n, "logarithm of a non-positive value", x);
      return {std::log(f.value), checked(n, f.deriv / f.value, x)};
    }
    case NodeKind::kSqrt: {
      const DualValue f = dual_node(*n.lhs, x);
      if (f.value < 0.0) fail(n, "square root of a negative value", x);
      if (f.value == 0.0) fail(n, "not differentiable", x);
      const double r = std::sqrt(f.value);
      return {r, checked(n, f.deriv / (2.0 * r), x)};
    }
    case NodeKind::kAbs: {
      const DualValue f = dual_node(*n.lhs, x);
      if (f.value == 0.0) fail(n, "not differentiable", x);
      return f.value > 0.0 ? f : DualValue{-f.value, -f.deriv};
    }
    case NodeKind::kPowerFamily: return dual_power(n, {x, 1.0}, n.a, x);
    case NodeKind::kRecipFamily:
      if (x == 0.0) fail(n, "division by zero", x);
      return {checked(n, 1.0 / x, x), checked(n, -1.0 / (x * x), x)};
    case NodeKind::kAffineFamily: return {checked(n, n.a * x + n.b, x), n.a};
  }
  fail(n, "unknown node", x);
}

bool same_tree(const Expr::Node* a, const Expr::Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  const bool payload_equal = (std::isnan(a->a) ? std::isnan(b->a) : a->a == b->a) &&
                             (std::isnan(a->b) ? std::isnan(b->b) : a->b == b->b);
  return payload_equal && same_tree(a->lhs.get(), b->lhs.get()) &&
         same_tree(a->rhs.get(), b->rhs.get());
}

// ---------------------------------------------------------------------------
// Lexer and Pratt parser.

enum class Tok { kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kComma, kEnd };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

const std::vector<std::string> kExpectExpression = {"number", "x", "identifier", "(", "-"};

class Parser {
 public:
  Parser(std::string_view text, const ConstantTable& constants)
      : text_(text), constants_(constants) {
    advance();
  }

  NodePtr parse_all() {
    NodePtr e = parse_expr(0);
    if (tok_.kind != Tok::kEnd) {
      error("unexpected '" + std::string(tok_.text) + "'", {"operator", ")", "end of input"});
    }
    return e;
  }

 private:
  static int infix_binding(Tok t) {
    switch (t) {
      case Tok::kPlus:
      case Tok::kMinus: return 10;
      case Tok::kStar:
      case Tok::kSlash: return 20;
      case Tok::kCaret: return 40;
      default: return 0;
    }
  }
  static constexpr int kPrefixMinus = 30;

  [[noreturn]] void error(const std::string& msg, std::vector<std::string> expected) const {
    std::string what = "parse error at offset " + std::to_string(tok_.offset) + ": " + msg;
    if (!expected.empty()) {
      what += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        what += (i ? ", " : "") + expected[i];
      }
      what += ")";
    }
    throw ParseError(what, tok_.offset, std::move(expected));
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::kEnd, start, "end of input"};
      return;
    }
    const unsigned char c = static_cast<unsigned char>(text_[pos_]);
    if (c >= 0x80) {
      tok_ = {Tok::kEnd, start, text_.substr(start, 1)};
      error("non-ASCII byte", {});
    }
    if (std::isdigit(c) || c == '.') {
      lex_number(start);
      return;
    }
    if (std::isalpha(c) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      tok_ = {Tok::kIdent, start, text_.substr(start, pos_ - start)};
      return;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::kPlus; break;
      case '-': kind = Tok::kMinus; break;
      case '*': kind = Tok::kStar; break;
      case '/': kind = Tok::kSlash; break;
      case '^': kind = Tok::kCaret; break;
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case ',': kind = Tok::kComma; break;
      default:
        tok_ = {Tok::kEnd, start, text_.substr(start, 1)};
        error("invalid character '" + std::string(1, static_cast<char>(c)) + "'", {});
    }
    ++pos_;
    tok_ = {kind, start, text_.substr(start, 1)};
  }

  void lex_number(std::size_t start) {
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits();
      } else {
        pos_ = save;   // 'e' belongs to whatever follows
      }
    }
    const std::string_view lexeme = text_.substr(start, pos_ - start);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
    tok_ = {Tok::kNumber, start, lexeme, value};
    if (ec != std::errc() || end != lexeme.data() + lexeme.size() || !std::isfinite(value)) {
      error("malformed number '" + std::string(lexeme) + "'", {"number"});
    }
  }

  void expect(Tok kind, const char* spelling) {
    if (tok_.kind != kind) error(std::string("expected '") + spelling + "'", {spelling});
    advance();
  }

  double signed_number() {
    bool negative = false;
    if (tok_.kind == Tok::kMinus) {
      negative = true;
      advance();
    }
    if (tok_.kind != Tok::kNumber) error("expected a numeric literal", {"number", "-"});
    const double v = tok_.number;
    advance();
    return negative ? -v : v;
  }

  NodePtr parse_expr(int min_binding) {
    NodePtr lhs = parse_prefix();
    for (;;) {
      const int binding = infix_binding(tok_.kind);
      if (binding <= min_binding) break;
      const Tok op = tok_.kind;
      advance();
      // '^' is right associative: its right operand may contain another '^'.
      NodePtr rhs = parse_expr(op == Tok::kCaret ? binding - 1 : binding);
      NodeKind kind = NodeKind::kAdd;
      switch (op) {
        case Tok::kPlus: kind = NodeKind::kAdd; break;
        case Tok::kMinus: kind = NodeKind::kSub; break;
        case Tok::kStar: kind = NodeKind::kMul; break;
        case Tok::kSlash: kind = NodeKind::kDiv; break;
        default: kind = NodeKind::kPow; break;
      }
      lhs = std::make_shared<const Expr::Node>(Expr::Node{kind, 0.0, 0.0, lhs, rhs});
    }
    return lhs;
  }

  NodePtr parse_prefix() {
    const Token t = tok_;
    switch (t.kind) {
      case Tok::kNumber:
        advance();
        return make_literal(t.number);
      case Tok::kMinus: {
        advance();
        const bool bare_number = tok_.kind == Tok::kNumber;
        NodePtr operand = parse_expr(kPrefixMinus);
        // "-2" is a negative literal; "-(2)" stays a negation.
        if (bare_number && operand->kind == NodeKind::kLiteral) return make_literal(-operand->a);
        return std::make_shared<const Expr::Node>(
            Expr::Node{NodeKind::kNegate, 0.0, 0.0, operand, nullptr});
      }
      case Tok::kLParen: {
        advance();
        NodePtr inner = parse_expr(0);
        expect(Tok::kRParen, ")");
        return inner;
      }
      case Tok::kIdent: return parse_identifier();
      default: error("expected expression", kExpectExpression);
    }
  }

  NodePtr parse_identifier() {
    const Token t = tok_;
    const std::string_view name = t.text;
    advance();
    if (name == "x") return std::make_shared<const Expr::Node>(Expr::Node{NodeKind::kVariable});
    if (name == "recip") {
      return std::make_shared<const Expr::Node>(Expr::Node{NodeKind::kRecipFamily});
    }
    NodeKind call;
    if (name == "exp") {
      call = NodeKind::kExp;
    } else if (name == "ln") {
      call = NodeKind::kLn;
    } else if (name == "sqrt") {
      call = NodeKind::kSqrt;
    } else if (name == "abs") {
      call = NodeKind::kAbs;
    } else if (name == "pow") {
      expect(Tok::kLParen, "(");
      NodePtr base = parse_expr(0);
      expect(Tok::kComma, ",");
      NodePtr exponent = parse_expr(0);
      expect(Tok::kRParen, ")");
      return std::make_shared<const Expr::Node>(
          Expr::Node{NodeKind::kPow, 0.0, 0.0, base, exponent});
    } else if (name == "power") {
      expect(Tok::kLParen, "(");
      const double c = signed_number();
      expect(Tok::kRParen, ")");
      return std::make_shared<const Expr::Node>(Expr::Node{NodeKind::kPowerFamily, c});
    } else if (name == "affine") {
      expect(Tok::kLParen, "(");
      const double slope = signed_number();
      expect(Tok::kComma, ",");
      const double intercept = signed_number();
      expect(Tok::kRParen, ")");
      return std::make_shared<const Expr::Node>(
          Expr::Node{NodeKind::kAffineFamily, slope, intercept});
    } else if (auto it = constants_.find(name); it != constants_.end()) {
      return make_literal(it->second);
    } else {
      tok_ = t;
      error("unknown identifier '" + std::string(name) + "'", {"x", "function", "constant"});
    }
    expect(Tok::kLParen, "(");
    NodePtr arg = parse_expr(0);
    expect(Tok::kRParen, ")");
    return std::make_shared<const Expr::Node>(Expr::Node{call, 0.0, 0.0, arg, nullptr});
  }

  static NodePtr make_literal(double v) {
    return std::make_shared<const Expr::Node>(Expr::Node{NodeKind::kLiteral, v});
  }

  std::string_view text_;
  const ConstantTable& constants_;
  std::size_t pos_ = 0;
  Token tok_{Tok::kEnd, 0, {}};
};

}  // namespace

Expr Expr::literal(double value) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::kLiteral, value}));
}
Expr Expr::variable() { return Expr(std::make_shared<const Node>(Node{NodeKind::kVariable})); }
Expr Expr::power(double exponent) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::kPowerFamily, exponent}));
}
Expr Expr::recip() { return Expr(std::make_shared<const Node>(Node{NodeKind::kRecipFamily})); }
Expr Expr::affine(double slope, double intercept) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::kAffineFamily, slope, intercept}));
}

Expr Expr::unary(NodeKind kind, const Expr& operand) {
  switch (kind) {
    case NodeKind::kNegate:
    case NodeKind::kExp:
    case NodeKind::kLn:
    case NodeKind::kSqrt:
    case NodeKind::kAbs: break;
    default: throw DomainError("Expr::unary: node kind is not unary");
  }
  return Expr(std::make_shared<const Node>(Node{kind, 0.0, 0.0, operand.root_, nullptr}));
}

Expr Expr::binary(NodeKind kind, const Expr& lhs, const Expr& rhs) {
  switch (kind) {
    case NodeKind::kAdd:
    case NodeKind::kSub:
    case NodeKind::kMul:
    case NodeKind::kDiv:
    case NodeKind::kPow: break;
    default: throw DomainError("Expr::binary: node kind is not binary");
  }
  return Expr(std::make_shared<const Node>(Node{kind, 0.0, 0.0, lhs.root_, rhs.root_}));
}

NodeKind Expr::kind() const { return root_->kind; }
double Expr::eval(double x) const { return eval_node(*root_, x); }
DualValue Expr::eval_dual(double x) const { return dual_node(*root_, x); }
std::string Expr::to_string() const { return print(*root_); }

bool operator==(const Expr& a, const Expr& b) { return same_tree(a.root_.get(), b.root_.get()); }

Expr parse(std::string_view text, const ConstantTable& constants) {
  Parser parser(text, constants);
  return Expr(parser.parse_all());
}

}  // namespace fhh
