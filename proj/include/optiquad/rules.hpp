#pragma once

#include "optiquad/interval.hpp"
#include "optiquad/quadrature.hpp"

namespace optiquad::rules {

// Dimensionless node weights; the estimate is (b-a) times the weighted sum
// of f(a), f((a+b)/2), f(b). Always symmetric with weights summing to 1.
struct RuleWeights {
  double w_left;
  double w_mid;
  double w_right;
};

RuleWeights optimal_rule_weights();
RuleWeights simpson_weights();

// (b-a) [ sqrt2/8 f(a) + (1 - sqrt2/4) f((a+b)/2) + sqrt2/8 f(b) ].
// A non-finite node value raises EvalError naming the node.
double optimal_rule_estimate(const RealFn& f, const Interval& iv);

// Endpoint-derivative correction (b-a)^2/96 (4 - 3 sqrt2) [f'(b) - f'(a)].
// Adding it to the estimate makes the rule exact through cubics.
double correction_p(double fprime_a, double fprime_b, const Interval& iv);

// (b-a)/6 [ f(a) + 4 f((a+b)/2) + f(b) ], for comparison.
double simpson_estimate(const RealFn& f, const Interval& iv);

// The error integral - estimate, evaluated through its kernel
// representation: (b-a)^3 times the integral over [0,1] of the optimal
// second-order kernel against f'' pulled back to the unit interval.
// Panel quadrature at absolute tolerance 1e-10; used as a cross-check
// oracle against direct integration.
double residual_via_kernel(const RealFn& fpp, const Interval& iv);

}  // namespace optiquad::rules
