#include "scalereq/expr.hpp"

#include <charconv>
#include <cmath>

#include "scalereq/evaluate.hpp"

namespace scalereq {

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, NumberLiteral>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, ParamRef>) {
          return lhs.name == rhs.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return *lhs.operand == *rhs.operand;
        } else {
          return lhs.op == rhs.op && *lhs.lhs == *rhs.lhs && *lhs.rhs == *rhs.rhs;
        }
      },
      a.node);
}

ExprPtr make_number(double value) { return std::make_shared<const Expr>(Expr{NumberLiteral{value}}); }
ExprPtr make_ref(std::string name) { return std::make_shared<const Expr>(Expr{ParamRef{std::move(name)}}); }
ExprPtr make_negate(ExprPtr operand) { return std::make_shared<const Expr>(Expr{Negate{std::move(operand)}}); }
ExprPtr make_binary(BinaryOperator op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{BinaryOp{op, std::move(lhs), std::move(rhs)}});
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(pos_, "operator or end of input");
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r')) {
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

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(BinaryOperator::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(BinaryOperator::Subtract, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(BinaryOperator::Multiply, lhs, factor());
      } else if (accept('/')) {
        lhs = make_binary(BinaryOperator::Divide, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(pos_, "number, identifier, '(' or '-'");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      skip_space();
      if (!accept(')')) throw ParseError(pos_, "')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return make_negate(factor());
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      return make_ref(std::string(text_.substr(start, pos_ - start)));
    }
    if (is_digit(c) || c == '.') return number();
    throw ParseError(pos_, "number, identifier, '(' or '-'");
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    std::size_t integer_digits = 0;
    while (pos_ < text_.size() && is_digit(text_[pos_])) {
      ++pos_;
      ++integer_digits;
    }
    std::size_t fraction_digits = 0;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) {
        ++pos_;
        ++fraction_digits;
      }
    }
    if (integer_digits + fraction_digits == 0) throw ParseError(pos_, "digit");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ >= text_.size() || !is_digit(text_[pos_])) throw ParseError(pos_, "exponent digit");
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) throw ParseError(start, "finite number");
    return make_number(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(BinaryOperator op) {
  return op == BinaryOperator::Add || op == BinaryOperator::Subtract ? 1 : 2;
}

char symbol(BinaryOperator op) {
  switch (op) {
    case BinaryOperator::Add: return '+';
    case BinaryOperator::Subtract: return '-';
    case BinaryOperator::Multiply: return '*';
    case BinaryOperator::Divide: return '/';
  }
  return '?';
}

// Precedence of a node as an operand: atoms and negations bind tightest.
int binding(const Expr& e) {
  if (const auto* b = std::get_if<BinaryOp>(&e.node)) return precedence(b->op);
  return 3;
}

void print(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NumberLiteral>) {
          out += format_shortest(node.value);
        } else if constexpr (std::is_same_v<T, ParamRef>) {
          out += node.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += '-';
          const bool wrap = binding(*node.operand) < 3;
          if (wrap) out += '(';
          print(*node.operand, out);
          if (wrap) out += ')';
        } else {
          const int p = precedence(node.op);
          // Left-associative: the left operand needs parentheses only when it
          // binds looser; the right operand also when it binds equally.
          const bool wrap_left = binding(*node.lhs) < p;
          const bool wrap_right = binding(*node.rhs) <= p;
          if (wrap_left) out += '(';
          print(*node.lhs, out);
          if (wrap_left) out += ')';
          out += ' ';
          out += symbol(node.op);
          out += ' ';
          if (wrap_right) out += '(';
          print(*node.rhs, out);
          if (wrap_right) out += ')';
        }
      },
      e.node);
}

void collect(const Expr& e, std::set<std::string>& names) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ParamRef>) {
          names.insert(node.name);
        } else if constexpr (std::is_same_v<T, Negate>) {
          collect(*node.operand, names);
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          collect(*node.lhs, names);
          collect(*node.rhs, names);
        }
      },
      e.node);
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const Expr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

std::set<std::string> references(const Expr& expr) {
  std::set<std::string> names;
  collect(expr, names);
  return names;
}

}  // namespace scalereq
