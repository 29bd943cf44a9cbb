#include "optiquad/optimizer.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "optiquad/constants.hpp"
#include "optiquad/errors.hpp"

namespace optiquad::optimizer {

namespace {

// The objective evaluated in extended precision. The oracle refinement
// compares g at points ~1e-9 apart, where the value differences sit below
// double rounding noise; 80-bit arithmetic pushes the comparison noise floor
// down to ~1e-10 in beta.
long double g_numeric_ld(long double beta) {
  // antiderivative of t(t - beta)
  const auto prim = [beta](long double t) {
    return t * t * t / 3.0L - beta * t * t / 2.0L;
  };
  const auto segment = [&](long double lo, long double hi) {
    return prim(hi) - prim(lo);
  };

  // 1/2 * integral over [0, 1/2] of t|t - beta|
  long double left;
  if (beta <= 0.0L)
    left = segment(0.0L, 0.5L);
  else if (beta >= 0.5L)
    left = -segment(0.0L, 0.5L);
  else
    left = -segment(0.0L, beta) + segment(beta, 0.5L);
  left *= 0.5L;

  // 1/2 * integral over [1/2, 1] of |t - 1 + beta| (1 - t); substituting
  // s = 1 - t turns it into the same split integral.
  long double right;
  if (beta <= 0.0L)
    right = segment(0.0L, 0.5L);
  else if (beta >= 0.5L)
    right = -segment(0.0L, 0.5L);
  else
    right = -segment(0.0L, beta) + segment(beta, 0.5L);
  right *= 0.5L;

  return left + right;
}

}  // namespace

double g_closed_form(double beta) {
  if (!std::isfinite(beta))
    throw std::invalid_argument("knot must be finite");
  if (beta <= 0.0) return 1.0 / 24.0 - beta / 8.0;
  if (beta >= 0.5) return beta / 8.0 - 1.0 / 24.0;
  return beta * beta * beta / 3.0 - beta / 8.0 + 1.0 / 24.0;
}

double g_numeric(double beta) {
  if (!std::isfinite(beta))
    throw std::invalid_argument("knot must be finite");
  return static_cast<double>(g_numeric_ld(beta));
}

MinimizerResult minimize_g() {
  MinimizerResult result{};

  // Case (ii): stationary condition beta^2 = 1/8, convex there.
  const double stationary = std::sqrt(1.0 / 8.0);
  result.case_trace.selected_case = 2;
  result.case_trace.stationary_beta = stationary;
  result.case_trace.second_derivative = 2.0 * stationary;
  result.case_trace.case_i_lower_bound = 1.0 / 24.0;
  result.case_trace.case_iii_lower_bound = 1.0 / 48.0;

  result.beta_star = stationary;
  result.g_star = g_closed_form(stationary);

  if (!(result.g_star < result.case_trace.case_i_lower_bound &&
        result.g_star < result.case_trace.case_iii_lower_bound))
    throw ToleranceError("interior stationary value does not beat the"
                         " boundary cases");

  // Brute-force oracle: coarse scan, then golden-section refinement.
  constexpr std::size_t grid_n = 100000;
  const long double lo = -1.0L, hi = 1.5L;
  const long double step = (hi - lo) / static_cast<long double>(grid_n - 1);
  long double best_beta = lo;
  long double best_g = g_numeric_ld(lo);
  for (std::size_t i = 1; i < grid_n; ++i) {
    const long double beta = lo + static_cast<long double>(i) * step;
    const long double g = g_numeric_ld(beta);
    if (g < best_g) {  // strict: ties keep the smaller beta
      best_g = g;
      best_beta = beta;
    }
  }

  long double a = best_beta - step;
  long double b = best_beta + step;
  const long double invphi = 0.6180339887498948482045868343656381L;
  long double x1 = b - invphi * (b - a);
  long double x2 = a + invphi * (b - a);
  long double f1 = g_numeric_ld(x1);
  long double f2 = g_numeric_ld(x2);
  while (b - a > 1e-12L) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = g_numeric_ld(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = g_numeric_ld(x2);
    }
  }

  // Near the minimum the value differences fall below rounding noise, so the
  // bracket midpoint alone is only reliable to a few 1e-9. One parabolic
  // vertex fit at a spacing where the quadratic signal dominates the noise
  // (2 beta* d^2 ~ 7e-11 against ~1e-17) pins the estimate to ~5e-11.
  const long double mid = 0.5L * (a + b);
  const long double d = 1e-5L;
  const long double g_lo = g_numeric_ld(mid - d);
  const long double g_mid = g_numeric_ld(mid);
  const long double g_hi = g_numeric_ld(mid + d);
  const long double curvature = g_hi - 2.0L * g_mid + g_lo;
  long double vertex = mid;
  if (curvature > 0.0L)
    vertex = mid - d * (g_hi - g_lo) / (2.0L * curvature);
  result.oracle_beta = static_cast<double>(vertex);
  result.oracle_gap = std::abs(result.beta_star - result.oracle_beta);

  if (std::abs(g_closed_form(result.beta_star) - g_numeric(result.beta_star)) >
      1e-10)
    throw ToleranceError("closed form and integral route disagree at the"
                         " minimizer");

  return result;
}

std::pair<double, double> compare_simpson() {
  const double g_optimal = constants::kernel_l1_min;
  const double g_simpson = constants::kernel_l1_simpson;
  if (!(g_optimal < g_simpson))
    throw ToleranceError("optimal kernel norm must beat Simpson's");
  return {g_optimal, g_simpson};
}

}  // namespace optiquad::optimizer
