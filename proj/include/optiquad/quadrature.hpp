#pragma once

#include <cstddef>
#include <functional>

namespace optiquad {

using RealFn = std::function<double(double)>;

// Kahan-compensated accumulator; keeps long panel sums from drowning the
// 1e-12..1e-15 test tolerances once panel counts reach 10^6.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

enum class PanelRule {
  gauss3,  // 3-point Gauss per panel; all nodes interior, safe near endpoint
           // singularities
  gauss7,  // 7-point Gauss per panel; for smooth integrands
};

// Fixed composite Gauss rule over n equal panels of [a, b].
double composite_gauss(const RealFn& f, double a, double b, std::size_t n,
                       PanelRule rule);

struct PanelIntegral {
  double value = 0.0;        // best available estimate
  bool converged = false;    // successive levels met the tolerance
  bool trustworthy = false;  // converged, or differences decayed geometrically
                             // (value then includes the ratio-extrapolated tail)
  std::size_t panels = 0;    // panel count of the last level evaluated
};

// Doubles the panel count until |I_2n - I_n| <= rel_tol*|I_2n| + abs_floor,
// starting from 16 panels. If the cap is reached while the level differences
// still shrink geometrically (endpoint singularities of integrable power
// type behave this way), the geometric tail is summed and the result is kept
// trustworthy; if the differences do not shrink the integral is presumed
// divergent and flagged. Non-finite samples poison the result.
PanelIntegral integrate_doubling(const RealFn& f, double a, double b,
                                 double rel_tol, double abs_floor,
                                 std::size_t max_panels, PanelRule rule);

// Smooth-integrand wrapper: GL7 doubling to an absolute tolerance.
// Throws ToleranceError when the tolerance cannot be met within the cap.
double integrate_to_tolerance(const RealFn& f, double a, double b,
                              double abs_tol,
                              std::size_t max_panels = std::size_t{1} << 20);

}  // namespace optiquad
