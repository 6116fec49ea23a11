#pragma once

// Arithmetic expressions in the chart variables, evaluated on jets.
//
// Grammar: + - * / ^ (constant exponent), parentheses, numbers, the
// constants pi and e, variables x1..x4 (x, y, z, w alias x1..x4) and the
// functions sin cos tan exp log sqrt sinh cosh tanh atan.

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "lbh/jet.hpp"

namespace lbh {

class ExpressionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Expression {
 public:
  struct Node;

  /// Throws ExpressionError with the offending column; variables must be
  /// below `dim`.
  static Expression parse(std::string_view text, int dim);

  Jet2 operator()(std::span<const Jet2> x) const;
  double operator()(std::span<const double> x) const;
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace lbh
