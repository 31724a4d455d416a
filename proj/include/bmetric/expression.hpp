// Copyright 2026 The bmetric Authors
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
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bmetric {

/// Variable bindings used when resolving dynamic attribute values.
using EvaluationContext = std::map<std::string, double, std::less<>>;

/// Immutable arithmetic expression tree. Copies share nodes.
///
/// Grammar (lowest to highest precedence):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | primary
///   primary := number | name | name '(' args ')' | '(' expr ')'
/// Functions: min(a, b), max(a, b), clamp(x).
class Expression {
 public:
  enum class Kind {
    kLiteral,
    kVariable,
    kNegate,
    kAdd,
    kSubtract,
    kMultiply,
    kDivide,
    kMin,
    kMax,
    kClamp,
  };

  struct Node;

  static Expression literal(double value);
  static Expression variable(std::string name);
  static Expression negate(Expression operand);
  /// kAdd, kSubtract, kMultiply, kDivide, kMin or kMax.
  static Expression binary(Kind kind, Expression lhs, Expression rhs);
  static Expression clamp(Expression operand);

  Kind kind() const noexcept;
  /// Only meaningful for kLiteral.
  double value() const noexcept;
  /// Only meaningful for kVariable.
  const std::string& name() const noexcept;
  std::span<const Expression> operands() const noexcept;
  const std::set<std::string, std::less<>>& free_variables() const noexcept;

  /// Unclamped arithmetic result. Throws EvaluationError on an unbound
  /// variable, division by zero or a non-finite intermediate.
  double evaluate_raw(const EvaluationContext& ctx) const;

  /// evaluate_raw() clamped into [0, 1].
  double evaluate(const EvaluationContext& ctx) const;

  /// Canonical text with minimal parentheses. Trees built by
  /// parse_expression() parse back to an equal tree.
  std::string to_string() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  explicit Expression(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Throws ExpressionSyntaxError with the offending offset.
Expression parse_expression(std::string_view text);

inline double evaluate_expression(const Expression& expr,
                                  const EvaluationContext& ctx) {
  return expr.evaluate(ctx);
}

}  // namespace bmetric
