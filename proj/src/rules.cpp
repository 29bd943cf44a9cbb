#include "optiquad/rules.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "optiquad/constants.hpp"
#include "optiquad/errors.hpp"
#include "optiquad/kernels.hpp"

namespace optiquad::rules {

namespace {

double eval_checked(const RealFn& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "function value not finite at node t = " << x;
    throw EvalError(msg.str(), x);
  }
  return y;
}

}  // namespace

RuleWeights optimal_rule_weights() {
  return {constants::weight_end, constants::weight_mid, constants::weight_end};
}

RuleWeights simpson_weights() { return {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0}; }

double optimal_rule_estimate(const RealFn& f, const Interval& iv) {
  const RuleWeights w = optimal_rule_weights();
  const double sum = w.w_left * eval_checked(f, iv.a) +
                     w.w_mid * eval_checked(f, iv.midpoint()) +
                     w.w_right * eval_checked(f, iv.b);
  return sum * iv.length();
}

double correction_p(double fprime_a, double fprime_b, const Interval& iv) {
  if (!(std::isfinite(fprime_a) && std::isfinite(fprime_b)))
    throw std::invalid_argument("endpoint derivatives must be finite");
  const double len = iv.length();
  return constants::correction_coeff * len * len * (fprime_b - fprime_a);
}

double simpson_estimate(const RealFn& f, const Interval& iv) {
  const RuleWeights w = simpson_weights();
  const double sum = w.w_left * eval_checked(f, iv.a) +
                     w.w_mid * eval_checked(f, iv.midpoint()) +
                     w.w_right * eval_checked(f, iv.b);
  return sum * iv.length();
}

double residual_via_kernel(const RealFn& fpp, const Interval& iv) {
  const double len = iv.length();
  const auto integrand = [&](double s) {
    return kernels::eval_p2(s) * fpp(iv.a + len * s);
  };
  // The kernel is smooth between its breakpoint and roots; integrate each
  // smooth piece separately.
  const double cuts[] = {0.0, constants::beta_star, 0.5,
                         1.0 - constants::beta_star, 1.0};
  double total = 0.0;
  for (int k = 0; k + 1 < 5; ++k)
    total += integrate_to_tolerance(integrand, cuts[k], cuts[k + 1], 2.5e-11);
  return total * len * len * len;
}

}  // namespace optiquad::rules
