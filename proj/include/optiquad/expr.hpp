#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "optiquad/jet.hpp"

namespace optiquad::expr {

enum class Func { sin, cos, tan, exp, log, sqrt, cbrt, abs, pow };

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

// Immutable expression tree over the single variable t. Trees are built by
// parse() and never mutated afterwards, so they are freely shareable across
// threads.
struct ExprNode {
  enum class Kind { constant, variable, negate, binary, call };

  Kind kind;
  double value = 0.0;            // Kind::constant
  char op = 0;                   // Kind::binary: one of + - * /
  Func func = Func::sin;         // Kind::call ('^' parses to Func::pow)
  std::vector<NodePtr> children;
};

// Grammar (also documented in the README):
//   expr   := term  (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power            -- unary minus binds looser than ^
//   power  := atom ('^' unary)?            -- right-associative
//   atom   := number | 'pi' | 'e' | 't' | name '(' expr (',' expr)? ')'
//           | '(' expr ')'
// Numbers accept decimal and scientific notation; whitespace is ignored.
// Throws ParseError with the byte offset and the expected-token set.
NodePtr parse(std::string_view src);

// Renders a tree to text that parses back to a structurally identical tree.
std::string to_string(const NodePtr& node);

// (f(t), f'(t), f''(t)) by jet propagation. Value-level domain violations
// (log/sqrt of a negative, division by zero) raise EvalError; the kink of
// abs raises NondifferentiableError. Singular derivatives are returned as
// +-inf/NaN components, not errors.
Jet2 eval_jet(const NodePtr& node, double t);

bool structurally_equal(const NodePtr& a, const NodePtr& b);

}  // namespace optiquad::expr
