#include "optiquad/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optiquad/constants.hpp"

namespace optiquad::kernels {

namespace {

void require_finite(const KernelParams& p) {
  if (!(std::isfinite(p.alpha) && std::isfinite(p.beta) &&
        std::isfinite(p.gamma) && std::isfinite(p.delta)))
    throw std::invalid_argument("kernel knots must be finite");
}

void require_unit(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("kernel argument outside [0, 1]");
}

// 1/2 (t - r)(t - s) as a polynomial.
Polynomial half_parabola(double r, double s) {
  return Polynomial{0.5 * r * s, -0.5 * (r + s), 0.5};
}

double branch_max_abs(const Polynomial& p, double lo, double hi) {
  double best = std::max(std::abs(p(lo)), std::abs(p(hi)));
  for (double r : p.derivative().roots_in(lo, hi))
    best = std::max(best, std::abs(p(r)));
  return best;
}

}  // namespace

KernelParams optimal_params() {
  return {0.0, constants::beta_star, 1.0 - constants::beta_star, 1.0};
}

PiecewiseKernel kernel_poly(const KernelId& id) {
  require_finite(id.params);
  const KernelParams& p = id.params;
  switch (id.tag) {
    case KernelTag::k2:
      return {half_parabola(p.alpha, p.beta), half_parabola(p.gamma, p.delta)};
    case KernelTag::k1:
      return {Polynomial{-0.5 * (p.alpha + p.beta), 1.0},
              Polynomial{-0.5 * (p.gamma + p.delta), 1.0}};
    case KernelTag::p1:
      return kernel_poly(KernelId::k1(optimal_params()));
    case KernelTag::p2:
      return kernel_poly(KernelId::k2(optimal_params()));
    case KernelTag::p2_tilde: {
      PiecewiseKernel k = kernel_poly(KernelId::k2(optimal_params()));
      return {k.left + -constants::p2_mean, k.right + -constants::p2_mean};
    }
  }
  throw std::invalid_argument("invalid kernel id");
}

double eval_k2(const KernelParams& params, double t) {
  require_finite(params);
  require_unit(t);
  return t <= 0.5 ? 0.5 * (t - params.alpha) * (t - params.beta)
                  : 0.5 * (t - params.gamma) * (t - params.delta);
}

double eval_k1(const KernelParams& params, double t) {
  require_finite(params);
  require_unit(t);
  return t <= 0.5 ? t - 0.5 * (params.alpha + params.beta)
                  : t - 0.5 * (params.gamma + params.delta);
}

double eval_p1(double t) { return eval_k1(optimal_params(), t); }

double eval_p2(double t) { return eval_k2(optimal_params(), t); }

double eval_p2_tilde(double t) { return eval_p2(t) - constants::p2_mean; }

double kernel_l1_norm(const KernelId& id) {
  const PiecewiseKernel k = kernel_poly(id);
  return k.left.abs_integral(0.0, 0.5) + k.right.abs_integral(0.5, 1.0);
}

double kernel_sup_norm(const KernelId& id) {
  const PiecewiseKernel k = kernel_poly(id);
  // The right branch is open at 1/2 but its polynomial extends continuously,
  // so the supremum over (1/2, 1] equals the max over [1/2, 1].
  return std::max(branch_max_abs(k.left, 0.0, 0.5),
                  branch_max_abs(k.right, 0.5, 1.0));
}

double kernel_chebyshev_T(const KernelId& id) {
  const PiecewiseKernel k = kernel_poly(id);
  const double mean =
      k.left.integral(0.0, 0.5) + k.right.integral(0.5, 1.0);
  const double mean_sq = (k.left * k.left).integral(0.0, 0.5) +
                         (k.right * k.right).integral(0.5, 1.0);
  return mean_sq - mean * mean;
}

}  // namespace optiquad::kernels
