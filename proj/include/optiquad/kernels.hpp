#pragma once

#include "optiquad/polynomial.hpp"

namespace optiquad::kernels {

// Knots of the two parabolic branches of the second-order kernel.
struct KernelParams {
  double alpha;
  double beta;
  double gamma;
  double delta;
};

// Knots that minimize the L1 norm of the second-order kernel:
// (0, sqrt2/4, 1 - sqrt2/4, 1).
KernelParams optimal_params();

enum class KernelTag { k1, k2, p1, p2, p2_tilde };

// Identifies one of the kernels on [0, 1]. The parameters matter only for
// the general first/second-order kernels k1 and k2; p1, p2 and p2_tilde are
// the fixed kernels of the optimal rule.
struct KernelId {
  KernelTag tag;
  KernelParams params{0.0, 0.0, 0.0, 0.0};

  static KernelId k1(const KernelParams& p) { return {KernelTag::k1, p}; }
  static KernelId k2(const KernelParams& p) { return {KernelTag::k2, p}; }
  static KernelId p1() { return {KernelTag::p1, optimal_params()}; }
  static KernelId p2() { return {KernelTag::p2, optimal_params()}; }
  static KernelId p2_tilde() { return {KernelTag::p2_tilde, optimal_params()}; }
};

// Both branches of a kernel as polynomials on [0, 1/2] and [1/2, 1]. The
// breakpoint t = 1/2 itself belongs to the left branch.
struct PiecewiseKernel {
  Polynomial left;
  Polynomial right;

  double operator()(double t) const { return t <= 0.5 ? left(t) : right(t); }
};

PiecewiseKernel kernel_poly(const KernelId& id);

// Point evaluations. All of them require 0 <= t <= 1 and throw
// std::domain_error otherwise.
double eval_k2(const KernelParams& params, double t);
double eval_k1(const KernelParams& params, double t);
double eval_p1(double t);
double eval_p2(double t);
double eval_p2_tilde(double t);

// Integral of |kernel| over [0, 1]. The branches are split at their interior
// roots and integrated in closed form per single-signed piece.
double kernel_l1_norm(const KernelId& id);

// max |kernel| over [0, 1], from the candidate points of the piecewise
// polynomial: branch endpoints and interior stationary points.
double kernel_sup_norm(const KernelId& id);

// Chebyshev functional T(k, k) on [0, 1]: mean of k^2 minus squared mean,
// by exact piecewise integration.
double kernel_chebyshev_T(const KernelId& id);

}  // namespace optiquad::kernels
