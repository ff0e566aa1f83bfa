#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pxlap {

class ExpressionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parsed closed-form expression in the coordinates x and y.
///
/// Grammar (see docs/expressions.md):
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?            right associative
///   primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
///
/// Names: x, y, pi, e.  Functions: sin cos tan asin acos atan sinh cosh tanh
/// exp log sqrt abs sign step (one argument), min max pow (two arguments).
/// step(t) is 1 for t >= 0 and 0 otherwise.
class Expression {
 public:
  /// Throws ExpressionError with the offending position on malformed input.
  static Expression parse(std::string_view text);

  double evaluate(double x, double y = 0.0) const;

  bool uses_y() const { return uses_y_; }
  const std::string& text() const { return text_; }

 private:
  enum class Op {
    Constant, X, Y, Neg, Add, Sub, Mul, Div, Pow,
    Sin, Cos, Tan, Asin, Acos, Atan, Sinh, Cosh, Tanh,
    Exp, Log, Sqrt, Abs, Sign, Step, Min, Max,
  };
  struct Node {
    Op op;
    double value = 0.0;
    int lhs = -1;
    int rhs = -1;
  };
  friend class ExpressionParser;

  double eval(int node, double x, double y) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  bool uses_y_ = false;
  std::string text_;
};

}  // namespace pxlap
