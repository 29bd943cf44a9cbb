#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "optiquad/bounds.hpp"
#include "optiquad/interval.hpp"
#include "optiquad/jet.hpp"
#include "optiquad/quadrature.hpp"

namespace optiquad::composite {

// Uniform partition of [a, b] into n panels of width h = (b-a)/n.
struct CompositeConfig {
  Interval iv;
  std::size_t n;

  CompositeConfig(Interval interval, std::size_t panels)
      : iv(interval), n(panels) {
    if (n == 0) throw std::invalid_argument("panel count must be >= 1");
  }

  double h() const { return iv.length() / static_cast<double>(n); }
  // x_i = a + i*h (not accumulated), so each node carries one rounding.
  double node(std::size_t i) const {
    return iv.a + static_cast<double>(i) * h();
  }
  double panel_midpoint(std::size_t i) const {
    return iv.a + (static_cast<double>(i) + 0.5) * h();
  }
};

// Sum of the single-panel estimates, evaluated in the grouped form
//   h sqrt2/8 [f(a)+f(b)] + h sqrt2/4 * (interior nodes)
//            + h (1-sqrt2/4) * (panel midpoints)
// with compensated summation. Non-finite samples raise EvalError naming the
// node.
double composite_estimate(const RealFn& f, const CompositeConfig& cfg);

// The per-panel corrections telescope: only the endpoint derivatives remain.
// (b-a)^2/(96 n^2) (4-3 sqrt2) [f'(b) - f'(a)].
double composite_correction(double fprime_a, double fprime_b,
                            const CompositeConfig& cfg);
double composite_correction(const RealFn& fprime, const CompositeConfig& cfg);

// Per-panel dispersion sum: sum_i sqrt( h ||g'||_{2,panel i}^2 -
// (g(x_{i+1})-g(x_i))^2 ). The L2 norms are taken panel by panel; the
// radicand is clamped at 0 within -1e-12 (it is nonnegative analytically)
// and a larger negative raises ToleranceError. Absent when a panel L2 norm
// is unavailable.
std::optional<double> sigma_n(const JetFn& g, const CompositeConfig& cfg);

// Whole-interval fallback: sqrt( (b-a) ||g'||_2^2 - (g(b)-g(a))^2 / n ).
// Always >= sigma_n / sqrt(n).
std::optional<double> omega_n(const JetFn& g, const CompositeConfig& cfg);

// Composite forms of the error inequalities. With n = 1 they reduce to the
// single-interval bounds.
bounds::ErrorBound cb_second_sup(double M2, const CompositeConfig& cfg);
std::vector<bounds::ErrorBound> cb_first(std::optional<double> gamma1,
                                         std::optional<double> Gamma1,
                                         std::optional<double> S,
                                         const CompositeConfig& cfg);
bounds::ErrorBound cb_gruss_first(double sigma_n_val,
                                  const CompositeConfig& cfg);
bounds::ErrorBound cb_gruss_first_omega(double omega_n_val,
                                        const CompositeConfig& cfg);
std::vector<bounds::ErrorBound> cb_second(std::optional<double> gamma2,
                                          std::optional<double> Gamma2,
                                          std::optional<double> S1,
                                          const CompositeConfig& cfg);
bounds::ErrorBound cb_gruss_second(double sigma_n_fprime_val,
                                   const CompositeConfig& cfg);
bounds::ErrorBound cb_gruss_second_omega(double omega_n_fprime_val,
                                         const CompositeConfig& cfg);

struct CompositeReport {
  double estimate = 0.0;
  std::optional<double> correction;  // absent when f' blows up at an endpoint
  std::size_t n = 1;
  std::optional<double> sigma_n_fprime, omega_n_fprime;
  std::optional<double> sigma_n_fsecond, omega_n_fsecond;
  std::vector<bounds::ErrorBound> bounds;
};

// Full composite evaluation: estimate, telescoped correction, dispersion
// functionals, and every applicable composite bound assembled from `info`.
// Rigor carries over from the info fields; the per-panel dispersions are
// quadrature-based and therefore never rigorous, while the omega fallbacks
// inherit rigor from the L2 field.
CompositeReport analyze(const JetFn& f, const bounds::DerivativeInfo& info,
                        const CompositeConfig& cfg);

struct StudyRow {
  std::size_t n = 1;
  double h = 0.0;
  double estimate = 0.0;
  std::optional<double> corrected;
  double abs_error = 0.0;
  std::optional<double> abs_corrected_error;
  std::optional<double> bound_t4ab;       // composite f''-sup
  std::optional<double> bound_t1p_range;  // composite f'-range
  std::optional<double> bound_t2p_sigma;  // composite Gruss f', per-panel
  std::optional<double> bound_t2p_omega;  // composite Gruss f', fallback
  std::optional<double> bound_t3p_range;  // composite f''-range (corrected)
  std::optional<double> bound_t4p_sigma;  // composite Gruss f'' (corrected)
};

struct StudyTable {
  std::vector<StudyRow> rows;
  std::optional<double> slope_error;      // log-log fit over the last rows
  std::optional<double> slope_corrected;
};

// One row per panel count; `reference` must be a trusted value of the
// integral. Slopes are least-squares fits of log|error| against log n over
// the last four rows with nonzero error.
StudyTable convergence_study(const JetFn& f, const Interval& iv,
                             const std::vector<std::size_t>& n_values,
                             double reference,
                             const bounds::DerivativeInfo& info);

}  // namespace optiquad::composite
