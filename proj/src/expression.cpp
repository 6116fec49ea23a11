#include "lbh/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

namespace lbh {

struct Expression::Node {
  enum class Op { kConst, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall } op;
  double value = 0.0;  // constant, exponent of kPow
  int var = 0;
  std::string fn;
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

constexpr std::string_view kFunctions[] = {"sin",  "cos",  "tan",  "exp",  "log",
                                           "sqrt", "sinh", "cosh", "tanh", "atan"};

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

class Parser {
 public:
  Parser(std::string_view s, int dim) : s_(s), dim_(dim) {}

  NodePtr run() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError("expression column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = make({Node::Op::kAdd, 0, 0, {}, lhs, term()});
      else if (eat('-')) lhs = make({Node::Op::kSub, 0, 0, {}, lhs, term()});
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) lhs = make({Node::Op::kMul, 0, 0, {}, lhs, unary()});
      else if (eat('/')) lhs = make({Node::Op::kDiv, 0, 0, {}, lhs, unary()});
      else return lhs;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make({Node::Op::kNeg, 0, 0, {}, unary(), nullptr});
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (!eat('^')) return base;
    const std::size_t at = pos_;
    NodePtr ex = unary();
    if (!is_constant(*ex)) {
      pos_ = at;
      fail("exponent must be a constant");
    }
    return make({Node::Op::kPow, constant(*ex), 0, {}, base, nullptr});
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return word();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::string rest(s_.substr(pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("bad number");
    }
    pos_ += used;
    return make({Node::Op::kConst, v, 0, {}, nullptr, nullptr});
  }

  NodePtr word() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string w(s_.substr(start, pos_ - start));
    for (std::string_view f : kFunctions) {
      if (w == f) {
        if (!eat('(')) fail("expected '(' after " + w);
        NodePtr arg = expr();
        if (!eat(')')) fail("expected ')'");
        return make({Node::Op::kCall, 0, 0, w, arg, nullptr});
      }
    }
    if (w == "pi") return make({Node::Op::kConst, std::numbers::pi, 0, {}, nullptr, nullptr});
    if (w == "e") return make({Node::Op::kConst, std::numbers::e, 0, {}, nullptr, nullptr});
    int var = -1;
    if (w.size() == 2 && w[0] == 'x' && w[1] >= '1' && w[1] <= '4') var = w[1] - '1';
    else if (w == "x") var = 0;
    else if (w == "y") var = 1;
    else if (w == "z") var = 2;
    else if (w == "w") var = 3;
    if (var < 0) {
      pos_ = start;
      fail("unknown name '" + w + "'");
    }
    if (var >= dim_) {
      pos_ = start;
      fail("variable '" + w + "' exceeds chart dimension " + std::to_string(dim_));
    }
    return make({Node::Op::kVar, 0, var, {}, nullptr, nullptr});
  }

  static bool is_constant(const Node& n) {
    switch (n.op) {
      case Node::Op::kConst: return true;
      case Node::Op::kVar: return false;
      default: return (!n.a || is_constant(*n.a)) && (!n.b || is_constant(*n.b));
    }
  }

  static double constant(const Node& n);

  std::string_view s_;
  int dim_;
  std::size_t pos_ = 0;
};

template <class T>
T call_fn(const std::string& fn, const T& x) {
  using std::atan, std::cos, std::cosh, std::exp, std::log, std::sin, std::sinh, std::sqrt,
      std::tan, std::tanh;
  if (fn == "sin") return sin(x);
  if (fn == "cos") return cos(x);
  if (fn == "tan") return tan(x);
  if (fn == "exp") return exp(x);
  if (fn == "log") return log(x);
  if (fn == "sqrt") return sqrt(x);
  if (fn == "sinh") return sinh(x);
  if (fn == "cosh") return cosh(x);
  if (fn == "tanh") return tanh(x);
  return atan(x);
}

template <class T>
T eval(const Node& n, std::span<const T> x) {
  using std::pow;
  switch (n.op) {
    case Node::Op::kConst: return T(n.value);
    case Node::Op::kVar: return x[n.var];
    case Node::Op::kNeg: return -eval(*n.a, x);
    case Node::Op::kAdd: return eval(*n.a, x) + eval(*n.b, x);
    case Node::Op::kSub: return eval(*n.a, x) - eval(*n.b, x);
    case Node::Op::kMul: return eval(*n.a, x) * eval(*n.b, x);
    case Node::Op::kDiv: return eval(*n.a, x) / eval(*n.b, x);
    case Node::Op::kPow: return pow(eval(*n.a, x), n.value);
    case Node::Op::kCall: return call_fn(n.fn, eval(*n.a, x));
  }
  return T(0.0);
}

double Parser::constant(const Node& n) { return eval<double>(n, {}); }

}  // namespace

Expression Expression::parse(std::string_view text, int dim) {
  Expression e;
  e.root_ = Parser(text, dim).run();
  e.text_ = std::string(text);
  return e;
}

Jet2 Expression::operator()(std::span<const Jet2> x) const { return eval<Jet2>(*root_, x); }

double Expression::operator()(std::span<const double> x) const {
  return eval<double>(*root_, x);
}

}  // namespace lbh
