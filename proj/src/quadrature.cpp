#include "optiquad/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "optiquad/errors.hpp"

namespace optiquad {

namespace {

// Gauss-Legendre abscissas/weights on [-1, 1].
constexpr std::array<double, 2> g3_x = {0.0, 0.7745966692414834};
constexpr std::array<double, 2> g3_w = {8.0 / 9.0, 5.0 / 9.0};

constexpr std::array<double, 4> g7_x = {0.0, 0.4058451513773972,
                                        0.7415311855993945,
                                        0.9491079123427585};
constexpr std::array<double, 4> g7_w = {0.4179591836734694, 0.3818300505051189,
                                        0.2797053914892766,
                                        0.1294849661688697};

template <std::size_t N>
double panel_value(const RealFn& f, double mid, double half,
                   const std::array<double, N>& x,
                   const std::array<double, N>& w) {
  double acc = w[0] * f(mid);
  for (std::size_t k = 1; k < N; ++k) {
    const double dx = half * x[k];
    acc += w[k] * (f(mid - dx) + f(mid + dx));
  }
  return acc * half;
}

}  // namespace

double composite_gauss(const RealFn& f, double a, double b, std::size_t n,
                       PanelRule rule) {
  const double h = (b - a) / static_cast<double>(n);
  const double half = 0.5 * h;
  KahanSum sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double mid = a + (static_cast<double>(i) + 0.5) * h;
    sum.add(rule == PanelRule::gauss3 ? panel_value(f, mid, half, g3_x, g3_w)
                                      : panel_value(f, mid, half, g7_x, g7_w));
  }
  return sum.value();
}

PanelIntegral integrate_doubling(const RealFn& f, double a, double b,
                                 double rel_tol, double abs_floor,
                                 std::size_t max_panels, PanelRule rule) {
  PanelIntegral out;
  std::vector<double> deltas;
  double prev = 0.0;
  bool have_prev = false;

  for (std::size_t n = 16; n <= max_panels; n *= 2) {
    const double cur = composite_gauss(f, a, b, n, rule);
    out.panels = n;
    if (!std::isfinite(cur)) return out;  // poisoned by a non-finite sample
    if (have_prev) {
      const double delta = cur - prev;
      deltas.push_back(delta);
      if (std::abs(delta) <= rel_tol * std::abs(cur) + abs_floor) {
        out.value = cur;
        out.converged = true;
        out.trustworthy = true;
        return out;
      }
    }
    prev = cur;
    have_prev = true;
  }

  out.value = prev;

  // Cap reached. Trust the estimate only if the last few level differences
  // decayed geometrically; then the remaining tail is a geometric series.
  if (deltas.size() < 3) return out;
  const std::size_t m = deltas.size();
  double ratios[2];
  for (std::size_t j = 0; j < 2; ++j) {
    const std::size_t k = m - 2 + j;
    if (deltas[k - 1] == 0.0) return out;
    ratios[j] = deltas[k] / deltas[k - 1];
    if (!(std::abs(ratios[j]) >= 1e-3 && std::abs(ratios[j]) <= 0.97))
      return out;
  }
  if (std::abs(ratios[1]) > 2.0 * std::abs(ratios[0]) ||
      std::abs(ratios[0]) > 2.0 * std::abs(ratios[1]))
    return out;
  const double ratio = ratios[1];
  out.value = prev + deltas.back() * ratio / (1.0 - ratio);
  out.trustworthy = true;
  return out;
}

double integrate_to_tolerance(const RealFn& f, double a, double b,
                              double abs_tol, std::size_t max_panels) {
  double prev = 0.0;
  bool have_prev = false;
  for (std::size_t n = 16; n <= max_panels; n *= 2) {
    const double cur = composite_gauss(f, a, b, n, PanelRule::gauss7);
    if (!std::isfinite(cur))
      throw ToleranceError("integrand produced a non-finite sample");
    if (have_prev && std::abs(cur - prev) <= abs_tol) return cur;
    prev = cur;
    have_prev = true;
  }
  throw ToleranceError("panel quadrature did not reach the requested tolerance");
}

}  // namespace optiquad
