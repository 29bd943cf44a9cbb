#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "optiquad/bounds.hpp"
#include "optiquad/expr.hpp"
#include "optiquad/interval.hpp"

namespace optiquad::analysis {

struct SamplingConfig {
  // Grid density for derivative-range estimation; never fewer than
  // min_points in total regardless of interval length.
  std::size_t points_per_unit = 10001;
  std::size_t min_points = 1001;
  // Offset used to probe just inside an endpoint whose jet is non-finite
  // (diagnostics only; a finite sample near a singularity is not a bound).
  double singularity_margin = 1e-9;
  // Magnitude at which a sampled derivative is declared unbounded.
  double unbounded_cutoff = 1e12;
};

struct Secants {
  std::optional<bounds::InfoField> S;   // (f(b)-f(a))/(b-a), always exact
  std::optional<bounds::InfoField> S1;  // (f'(b)-f'(a))/(b-a); absent when f'
                                        // is non-finite at an endpoint
};

// Endpoint secants from two jet evaluations. A non-finite *value* of f at an
// endpoint is an EvalError; a non-finite derivative merely leaves S1 absent.
Secants secants(const expr::NodePtr& ast, const Interval& iv);

// Grid min/max of f' (order 1) or f'' (order 2). Absent as soon as any
// sample is non-finite or exceeds the unbounded cutoff; absence is a value,
// not an error, and downstream it disables the range-type inequalities.
std::optional<std::pair<double, double>> sample_range(
    const expr::NodePtr& ast, int derivative_order, const Interval& iv,
    const SamplingConfig& cfg = {});

// L2 norm of the requested jet component by interval-halving panel
// quadrature (relative tolerance 1e-10, at most 2^20 panels, interior
// sample points only). Absent when the integral diverges or samples are
// non-finite in the interior.
std::optional<double> l2_norm(const expr::NodePtr& ast, int derivative_order,
                              const Interval& iv);

// Dispersion sigma(g)^2 = ||g||_2^2 - (integral of g)^2/(b-a) of the
// requested jet component. Throws ToleranceError when the radicand is
// negative beyond quadrature slack (-1e-12); tiny negatives clamp to 0.
std::optional<double> sigma(const expr::NodePtr& ast, int derivative_order,
                            const Interval& iv);

// User-supplied analytic values; each one replaces the sampled counterpart
// and makes the dependent bounds rigorous.
struct Overrides {
  std::optional<double> gamma1, Gamma1;
  std::optional<double> gamma2, Gamma2;
  std::optional<double> l2_fprime, l2_fsecond;
};

// Assembles the full derivative record: exact secants, sampled ranges, L2
// norms and dispersions, with overrides applied. Overrides that violate the
// mean value theorem against the exact secants are kept but produce a
// warning entry.
bounds::DerivativeInfo build_info(const expr::NodePtr& ast, const Interval& iv,
                                  const Overrides& overrides = {},
                                  const SamplingConfig& cfg = {});

}  // namespace optiquad::analysis
