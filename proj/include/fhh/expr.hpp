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

#ifndef FHH_EXPR_HPP
#define FHH_EXPR_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace fhh {

// Grammar, loosest to tightest:
//
//   expr    := expr ('+' | '-') expr
//            | expr ('*' | '/') expr
//            | '-' expr
//            | expr '^' expr                    (right associative)
//   primary := number | 'x' | constant | '(' expr ')'
//            | exp(e) | ln(e) | sqrt(e) | abs(e) | pow(e, e)
//            | power(c) | recip | affine(a, b)  (named families, numeric args)
//
// power(c) = x^c, recip = 1/x, affine(a, b) = a*x + b carry their own
// derivative rules.

enum class NodeKind {
  kLiteral,
  kVariable,
  kNegate,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kExp,
  kLn,
  kSqrt,
  kAbs,
  kPowerFamily,
  kRecipFamily,
  kAffineFamily,
};

struct DualValue {
  double value;
  double deriv;
};

/// Named constants substituted as literals at parse time.
using ConstantTable = std::map<std::string, double, std::less<>>;

class Expr {
 public:
  struct Node;

  static Expr literal(double value);
  static Expr variable();
  static Expr power(double exponent);
  static Expr recip();
  static Expr affine(double slope, double intercept);
  static Expr unary(NodeKind kind, const Expr& operand);
  static Expr binary(NodeKind kind, const Expr& lhs, const Expr& rhs);

  NodeKind kind() const;

  double eval(double x) const;
  DualValue eval_dual(double x) const;

  /// Fully parenthesised text that parses back to an identical tree.
  std::string to_string() const;

  /// Structural equality (same node kinds, payloads and shape).
  friend bool operator==(const Expr& a, const Expr& b);

  friend Expr parse(std::string_view text, const ConstantTable& constants);

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

/// Parses ASCII expression text. Throws ParseError with the byte offset and
/// the set of tokens that would have been accepted there.
Expr parse(std::string_view text, const ConstantTable& constants = {});

inline double eval(const Expr& e, double x) { return e.eval(x); }
inline DualValue eval_dual(const Expr& e, double x) { return e.eval_dual(x); }
inline std::string to_string(const Expr& e) { return e.to_string(); }

}  // namespace fhh

#endif  // FHH_EXPR_HPP
