#include "pxlap/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

namespace pxlap {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text, Expression& out) : text_(text), out_(out) {}

  int parse() {
    const int root = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError("expression \"" + std::string(text_) + "\": " + what + " at position " +
                          std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int add(Op op, int lhs = -1, int rhs = -1, double value = 0.0) {
    out_.nodes_.push_back({op, value, lhs, rhs});
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = add(Op::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = add(Op::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = add(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = add(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    if (accept('-')) return add(Op::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    if (accept('^')) return add(Op::Pow, base, parse_unary());
    return base;
  }

  int parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  int parse_number() {
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return add(Op::Constant, -1, -1, value);
  }

  int parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));

    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      return parse_call(name);
    }
    if (name == "x") return add(Op::X);
    if (name == "y") {
      out_.uses_y_ = true;
      return add(Op::Y);
    }
    if (name == "pi") return add(Op::Constant, -1, -1, std::numbers::pi);
    if (name == "e") return add(Op::Constant, -1, -1, std::numbers::e);
    pos_ = start;
    fail("unknown name '" + name + "'");
  }

  int parse_call(const std::string& name) {
    static constexpr std::pair<const char*, Op> unary[] = {
        {"sin", Op::Sin},   {"cos", Op::Cos},   {"tan", Op::Tan},   {"asin", Op::Asin},
        {"acos", Op::Acos}, {"atan", Op::Atan}, {"sinh", Op::Sinh}, {"cosh", Op::Cosh},
        {"tanh", Op::Tanh}, {"exp", Op::Exp},   {"log", Op::Log},   {"sqrt", Op::Sqrt},
        {"abs", Op::Abs},   {"sign", Op::Sign}, {"step", Op::Step},
    };
    static constexpr std::pair<const char*, Op> binary[] = {
        {"min", Op::Min}, {"max", Op::Max}, {"pow", Op::Pow}};

    for (const auto& [fname, op] : unary) {
      if (name == fname) {
        const int arg = parse_expr();
        if (!accept(')')) fail("function '" + name + "' takes one argument");
        return add(op, arg);
      }
    }
    for (const auto& [fname, op] : binary) {
      if (name == fname) {
        const int a = parse_expr();
        if (!accept(',')) fail("function '" + name + "' takes two arguments");
        const int b = parse_expr();
        if (!accept(')')) fail("function '" + name + "' takes two arguments");
        return add(op, a, b);
      }
    }
    fail("unknown function '" + name + "'");
  }

  std::string_view text_;
  Expression& out_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.text_ = std::string(text);
  ExpressionParser parser(text, e);
  e.root_ = parser.parse();
  return e;
}

double Expression::evaluate(double x, double y) const { return eval(root_, x, y); }

double Expression::eval(int node, double x, double y) const {
  const Node& n = nodes_[node];
  auto a = [&] { return eval(n.lhs, x, y); };
  auto b = [&] { return eval(n.rhs, x, y); };
  switch (n.op) {
    case Op::Constant: return n.value;
    case Op::X: return x;
    case Op::Y: return y;
    case Op::Neg: return -a();
    case Op::Add: return a() + b();
    case Op::Sub: return a() - b();
    case Op::Mul: return a() * b();
    case Op::Div: return a() / b();
    case Op::Pow: return std::pow(a(), b());
    case Op::Sin: return std::sin(a());
    case Op::Cos: return std::cos(a());
    case Op::Tan: return std::tan(a());
    case Op::Asin: return std::asin(a());
    case Op::Acos: return std::acos(a());
    case Op::Atan: return std::atan(a());
    case Op::Sinh: return std::sinh(a());
    case Op::Cosh: return std::cosh(a());
    case Op::Tanh: return std::tanh(a());
    case Op::Exp: return std::exp(a());
    case Op::Log: return std::log(a());
    case Op::Sqrt: return std::sqrt(a());
    case Op::Abs: return std::abs(a());
    case Op::Sign: {
      const double v = a();
      return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    }
    case Op::Step: return a() >= 0.0 ? 1.0 : 0.0;
    case Op::Min: return std::min(a(), b());
    case Op::Max: return std::max(a(), b());
  }
  return std::nan("");
}

}  // namespace pxlap
