#pragma once

#include <utility>

namespace optiquad::optimizer {

// Which piece of the piecewise objective contains the global minimizer,
// together with the values that rule the other pieces out.
struct CaseTrace {
  int selected_case;           // 1: beta <= 0, 2: 0 <= beta <= 1/2, 3: beta >= 1/2
  double case_i_lower_bound;   // g >= 1/24 on case (i)
  double case_iii_lower_bound; // g >= 1/48 on case (iii)
  double stationary_beta;      // positive root of g'(beta) = 0 on case (ii)
  double second_derivative;    // g''(stationary_beta), must be positive
};

struct MinimizerResult {
  double beta_star;    // optimal knot
  double g_star;       // minimal L1 kernel norm, g_closed_form(beta_star)
  CaseTrace case_trace;
  double oracle_beta;  // grid scan + golden-section refinement
  double oracle_gap;   // |beta_star - oracle_beta|
};

// L1 norm of the one-parameter kernel family as a function of the knot:
// piecewise (1/24 - beta/8), (beta^3/3 - beta/8 + 1/24), (beta/8 - 1/24)
// on beta <= 0, 0 <= beta <= 1/2, beta >= 1/2.
double g_closed_form(double beta);

// The same quantity by direct integration: the two absolute-value integrals
// are split at their interior roots and integrated exactly.
double g_numeric(double beta);

// Closed-form minimization with case analysis, cross-checked against a
// brute-force oracle (1e5-point grid over [-1, 1.5], then golden-section
// refinement to an interval of width 1e-12; grid ties break toward smaller
// beta). Throws ToleranceError if the closed form and the integral route
// disagree at the minimizer beyond 1e-10.
MinimizerResult minimize_g();

// (g at the optimal knot, g at Simpson's knot 1/3) = ((2-sqrt2)/48, 1/81).
// Throws ToleranceError if the first is not strictly smaller.
std::pair<double, double> compare_simpson();

}  // namespace optiquad::optimizer
