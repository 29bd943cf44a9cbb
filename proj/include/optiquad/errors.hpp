#pragma once

#include <stdexcept>
#include <string>

namespace optiquad {

// Expression text could not be turned into a tree.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_identifier };

  ParseError(Kind kind, std::size_t position, std::string expected,
             const std::string& message)
      : std::runtime_error(message),
        kind(kind),
        position(position),
        expected(std::move(expected)) {}

  Kind kind;
  std::size_t position;  // byte offset into the source text
  std::string expected;  // human-readable set of acceptable tokens
};

// A function evaluation failed; `point` names the offending abscissa.
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& message, double point)
      : std::runtime_error(message), point(point) {}

  double point;
};

// `abs` was evaluated at (numerically) its kink.
class NondifferentiableError : public EvalError {
 public:
  using EvalError::EvalError;
};

// The derivative information at hand supports none of the inequalities.
class NoApplicableBound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric procedure could not reach its required tolerance, or two routes
// to the same quantity disagree beyond the allowed slack.
class ToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace optiquad
