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

#include "bmetric/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "bmetric/error.hpp"

namespace bmetric {

struct Expression::Node {
  Kind kind = Kind::kLiteral;
  double value = 0.0;
  std::string name;
  std::vector<Expression> operands;
  std::set<std::string, std::less<>> free_variables;
};

namespace {

bool is_binary(Expression::Kind k) {
  using K = Expression::Kind;
  return k == K::kAdd || k == K::kSubtract || k == K::kMultiply ||
         k == K::kDivide || k == K::kMin || k == K::kMax;
}

}  // namespace

Expression Expression::literal(double value) {
  if (!std::isfinite(value)) {
    throw EvaluationError("expression literal must be finite");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::kLiteral;
  node->value = value;
  return Expression(std::move(node));
}

Expression Expression::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kVariable;
  node->free_variables.insert(name);
  node->name = std::move(name);
  return Expression(std::move(node));
}

Expression Expression::negate(Expression operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kNegate;
  node->free_variables = operand.free_variables();
  node->operands.push_back(std::move(operand));
  return Expression(std::move(node));
}

Expression Expression::binary(Kind kind, Expression lhs, Expression rhs) {
  if (!is_binary(kind)) {
    throw std::invalid_argument("Expression::binary: not a binary kind");
  }
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->free_variables = lhs.free_variables();
  node->free_variables.insert(rhs.free_variables().begin(),
                              rhs.free_variables().end());
  node->operands.push_back(std::move(lhs));
  node->operands.push_back(std::move(rhs));
  return Expression(std::move(node));
}

Expression Expression::clamp(Expression operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kClamp;
  node->free_variables = operand.free_variables();
  node->operands.push_back(std::move(operand));
  return Expression(std::move(node));
}

Expression::Kind Expression::kind() const noexcept { return node_->kind; }
double Expression::value() const noexcept { return node_->value; }
const std::string& Expression::name() const noexcept { return node_->name; }

std::span<const Expression> Expression::operands() const noexcept {
  return node_->operands;
}

const std::set<std::string, std::less<>>& Expression::free_variables()
    const noexcept {
  return node_->free_variables;
}

double Expression::evaluate_raw(const EvaluationContext& ctx) const {
  const auto& ops = node_->operands;
  double result = 0.0;
  switch (node_->kind) {
    case Kind::kLiteral:
      return node_->value;
    case Kind::kVariable: {
      auto it = ctx.find(node_->name);
      if (it == ctx.end()) {
        throw EvaluationError("unbound variable '" + node_->name + "'");
      }
      result = it->second;
      break;
    }
    case Kind::kNegate:
      result = -ops[0].evaluate_raw(ctx);
      break;
    case Kind::kAdd:
      result = ops[0].evaluate_raw(ctx) + ops[1].evaluate_raw(ctx);
      break;
    case Kind::kSubtract:
      result = ops[0].evaluate_raw(ctx) - ops[1].evaluate_raw(ctx);
      break;
    case Kind::kMultiply:
      result = ops[0].evaluate_raw(ctx) * ops[1].evaluate_raw(ctx);
      break;
    case Kind::kDivide: {
      double num = ops[0].evaluate_raw(ctx);
      double den = ops[1].evaluate_raw(ctx);
      if (den == 0.0) throw EvaluationError("division by zero");
      result = num / den;
      break;
    }
    case Kind::kMin:
      result = std::min(ops[0].evaluate_raw(ctx), ops[1].evaluate_raw(ctx));
      break;
    case Kind::kMax:
      result = std::max(ops[0].evaluate_raw(ctx), ops[1].evaluate_raw(ctx));
      break;
    case Kind::kClamp:
      result = std::clamp(ops[0].evaluate_raw(ctx), 0.0, 1.0);
      break;
  }
  if (!std::isfinite(result)) {
    throw EvaluationError("non-finite result in expression '" + to_string() +
                          "'");
  }
  return result;
}

double Expression::evaluate(const EvaluationContext& ctx) const {
  return std::clamp(evaluate_raw(ctx), 0.0, 1.0);
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expression::Kind::kLiteral:
      return a.value() == b.value();
    case Expression::Kind::kVariable:
      return a.name() == b.name();
    default:
      return std::ranges::equal(a.operands(), b.operands());
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(Expression::Kind k) {
  using K = Expression::Kind;
  switch (k) {
    case K::kAdd:
    case K::kSubtract:
      return 1;
    case K::kMultiply:
    case K::kDivide:
      return 2;
    case K::kNegate:
      return 3;
    default:
      return 4;
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

void print(const Expression& e, std::string& out);

void print_operand(const Expression& e, bool parenthesize, std::string& out) {
  if (parenthesize) out += '(';
  print(e, out);
  if (parenthesize) out += ')';
}

void print(const Expression& e, std::string& out) {
  using K = Expression::Kind;
  auto ops = e.operands();
  switch (e.kind()) {
    case K::kLiteral:
      out += format_number(e.value());
      return;
    case K::kVariable:
      out += e.name();
      return;
    case K::kNegate:
      out += '-';
      print_operand(ops[0], precedence(ops[0].kind()) < 3, out);
      return;
    case K::kMin:
    case K::kMax:
      out += e.kind() == K::kMin ? "min(" : "max(";
      print(ops[0], out);
      out += ", ";
      print(ops[1], out);
      out += ')';
      return;
    case K::kClamp:
      out += "clamp(";
      print(ops[0], out);
      out += ')';
      return;
    default:
      break;
  }
  int p = precedence(e.kind());
  // Right operands of equal precedence keep their parentheses so that the
  // printed text re-parses to the same (left-associative) tree.
  print_operand(ops[0], precedence(ops[0].kind()) < p, out);
  switch (e.kind()) {
    case K::kAdd: out += " + "; break;
    case K::kSubtract: out += " - "; break;
    case K::kMultiply: out += " * "; break;
    default: out += " / "; break;
  }
  print_operand(ops[1], precedence(ops[1].kind()) <= p, out);
}

}  // namespace

std::string Expression::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Expression parse() {
    Expression e = parse_sum();
    skip_space();
    if (pos_ != text_.size()) {
      throw ExpressionSyntaxError(
          pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      throw ExpressionSyntaxError(pos_, std::string("expected '") + c + "'");
    }
  }

  Expression parse_sum() {
    Expression lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = Expression::binary(Expression::Kind::kAdd, std::move(lhs),
                                 parse_product());
      } else if (accept('-')) {
        lhs = Expression::binary(Expression::Kind::kSubtract, std::move(lhs),
                                 parse_product());
      } else {
        return lhs;
      }
    }
  }

  Expression parse_product() {
    Expression lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expression::binary(Expression::Kind::kMultiply, std::move(lhs),
                                 parse_unary());
      } else if (accept('/')) {
        lhs = Expression::binary(Expression::Kind::kDivide, std::move(lhs),
                                 parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expression parse_unary() {
    if (accept('-')) return Expression::negate(parse_unary());
    return parse_primary();
  }

  Expression parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ExpressionSyntaxError(pos_, "unexpected end of expression");
    }
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (accept('(')) return parse_call(name, start);
      return Expression::variable(std::move(name));
    }
    throw ExpressionSyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  Expression parse_call(const std::string& name, std::size_t name_pos) {
    std::vector<Expression> args;
    if (!accept(')')) {
      do {
        args.push_back(parse_sum());
      } while (accept(','));
      expect(')');
    }
    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        throw ExpressionSyntaxError(
            name_pos, name + "() takes " + std::to_string(n) + " argument" +
                          (n == 1 ? "" : "s") + ", got " +
                          std::to_string(args.size()));
      }
    };
    if (name == "min" || name == "max") {
      arity(2);
      return Expression::binary(
          name == "min" ? Expression::Kind::kMin : Expression::Kind::kMax,
          std::move(args[0]), std::move(args[1]));
    }
    if (name == "clamp") {
      arity(1);
      return Expression::clamp(std::move(args[0]));
    }
    throw ExpressionSyntaxError(name_pos, "unknown function '" + name + "'");
  }

  Expression parse_number() {
    std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        ++pos_;
      }
      std::size_t exp_start = pos_;
      digits();
      if (pos_ == exp_start) pos_ = mark;  // "2e" is a number then a name
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      throw ExpressionSyntaxError(start, "malformed number '" +
                                             std::string(first, last) + "'");
    }
    return Expression::literal(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text) {
  return ExpressionParser(text).parse();
}

}  // namespace bmetric
