#pragma once

#include <cmath>

// Closed-form constants of the optimal 3-point closed rule, kept as
// expressions in sqrt(2), sqrt(3), sqrt(6) evaluated once at binary64
// precision. This table is the single source of truth; no module is
// allowed to re-derive them from decimal literals.
namespace optiquad::constants {

inline const double sqrt2 = std::sqrt(2.0);
inline const double sqrt3 = std::sqrt(3.0);
inline const double sqrt6 = std::sqrt(6.0);

// Optimal interior knot of the second-order kernel.
inline const double beta_star = sqrt2 / 4.0;

// Rule weights: (b-a) * [w_end f(a) + w_mid f((a+b)/2) + w_end f(b)].
inline const double weight_end = sqrt2 / 8.0;
inline const double weight_mid = 1.0 - sqrt2 / 4.0;

// Minimal L1 kernel norm, and the same functional evaluated at Simpson's
// knot beta = 1/3.
inline const double kernel_l1_min = (2.0 - sqrt2) / 48.0;
inline const double kernel_l1_simpson = 1.0 / 81.0;

// Norms of the first-order kernel p1.
inline const double p1_l1 = 5.0 / 16.0 - sqrt2 / 8.0;
inline const double p1_sup = 0.5 - sqrt2 / 8.0;
inline const double p1_chebyshev = 11.0 / 96.0 - sqrt2 / 16.0;

// Second-order kernel p2 and its zero-mean shift p2_tilde = p2 - mean(p2).
inline const double p2_mean = 1.0 / 24.0 - sqrt2 / 32.0;
inline const double p2_sup = (2.0 - sqrt2) / 16.0;
inline const double p2_chebyshev = 47.0 / 23040.0 - sqrt2 / 768.0;
inline const double p2tilde_l1 = 5.0 * sqrt6 / 96.0 - 29.0 * sqrt3 / 432.0;
inline const double p2tilde_sup = 1.0 / 12.0 - sqrt2 / 32.0;

// Endpoint-derivative correction: correction_coeff * (b-a)^2 * (f'(b)-f'(a)).
// Note 4 - 3*sqrt(2) < 0.
inline const double correction_coeff = (4.0 - 3.0 * sqrt2) / 96.0;

// Coefficients of the error inequalities.
inline const double first_range_coeff = (5.0 - 2.0 * sqrt2) / 32.0;
inline const double first_secant_coeff = p1_sup;
inline const double gruss_first_coeff = std::sqrt(p1_chebyshev);
inline const double second_secant_coeff = p2tilde_sup;
inline const double gruss_second_coeff = std::sqrt(p2_chebyshev);

}  // namespace optiquad::constants
