#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "scalereq/error.hpp"

namespace scalereq {

enum class BinaryOperator { Add, Subtract, Multiply, Divide };

struct Expr;

// Nodes are immutable and shared, so copying an expression is cheap.
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLiteral {
  double value = 0.0;
};

struct ParamRef {
  std::string name;
};

struct Negate {
  ExprPtr operand;
};

struct BinaryOp {
  BinaryOperator op = BinaryOperator::Add;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<NumberLiteral, ParamRef, Negate, BinaryOp> node;
};

// Structural equality (deep, not pointer identity).
bool operator==(const Expr& a, const Expr& b);

ExprPtr make_number(double value);
ExprPtr make_ref(std::string name);
ExprPtr make_negate(ExprPtr operand);
ExprPtr make_binary(BinaryOperator op, ExprPtr lhs, ExprPtr rhs);

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected)
      : Error("offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := NUMBER | IDENT | '(' expr ')' | '-' factor
ExprPtr parse_expr(std::string_view text);

// Canonical text with the minimum parentheses; parse_expr inverts it.
std::string print_expr(const Expr& expr);

// Every identifier referenced by the expression.
std::set<std::string> references(const Expr& expr);

}  // namespace scalereq
