#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optiquad/interval.hpp"

namespace optiquad::bounds {

enum class TheoremTag {
  second_sup,    // (2-sqrt2)/48 ||f''||inf (b-a)^3
  first_range,   // (Gamma1-gamma1)/32 (5-2 sqrt2) (b-a)^2
  first_lower,   // (1/2 - sqrt2/8)(S - gamma1)(b-a)^2
  first_upper,   // (1/2 - sqrt2/8)(Gamma1 - S)(b-a)^2
  gruss_first,   // sqrt(11/96 - sqrt2/16) sigma(f') (b-a)^(3/2)
  second_range,  // (Gamma2-gamma2)/2 (5 sqrt6/96 - 29 sqrt3/432)(b-a)^3
  second_lower,  // (1/12 - sqrt2/32)(S1 - gamma2)(b-a)^3
  second_upper,  // (1/12 - sqrt2/32)(Gamma2 - S1)(b-a)^3
  gruss_second,  // sqrt(47/23040 - sqrt2/768) sigma(f'') (b-a)^(5/2)
};

// What the bound controls: the rule error Q, or the corrected-rule error
// Q - P. The correction is never folded in silently.
enum class BoundTarget { q, q_minus_p };

// Composite Gruss bounds come in a primary (per-panel dispersion) form and a
// weaker whole-interval fallback.
enum class BoundForm { primary, omega_weakened };

struct ErrorBound {
  TheoremTag tag;
  double value;
  BoundTarget applies_to;
  bool rigorous;  // false as soon as any input was sampled rather than given
  BoundForm form = BoundForm::primary;
};

BoundTarget target_of(TheoremTag tag);
const char* tag_name(TheoremTag tag);

// Where a derivative datum came from. Sampled values can miss extrema, so
// only exact or user-supplied inputs yield rigorous bounds.
enum class Provenance { user_supplied, exact, sampled };

struct InfoField {
  double value;
  Provenance origin;

  bool rigorous() const { return origin != Provenance::sampled; }
};

// Everything the inequality catalog can consume. Every field is optional:
// partial information is the normal case (unbounded derivatives disable the
// range bounds but often leave the dispersion bounds available).
struct DerivativeInfo {
  std::optional<InfoField> gamma1, Gamma1;   // inf/sup of f'
  std::optional<InfoField> gamma2, Gamma2;   // inf/sup of f''
  std::optional<InfoField> S;                // (f(b)-f(a))/(b-a)
  std::optional<InfoField> S1;               // (f'(b)-f'(a))/(b-a)
  std::optional<InfoField> sigma_fprime;     // dispersion of f'
  std::optional<InfoField> sigma_fsecond;    // dispersion of f''
  std::optional<InfoField> sup_fsecond;      // ||f''||inf
  std::optional<InfoField> l2_fprime;        // ||f'||_2
  std::optional<InfoField> l2_fsecond;       // ||f''||_2
  std::vector<std::string> warnings;
};

// The individual inequalities. Preconditions are enforced strictly
// (std::invalid_argument); all values are nonnegative.
ErrorBound bound_second_sup(double M2, const Interval& iv);
ErrorBound bound_first_range(double gamma1, double Gamma1, const Interval& iv);
ErrorBound bound_first_lower(double S, double gamma1, const Interval& iv);
ErrorBound bound_first_upper(double Gamma1, double S, const Interval& iv);
ErrorBound bound_gruss_first(double sigma_fprime, const Interval& iv);
ErrorBound bound_second_range(double gamma2, double Gamma2, const Interval& iv);
ErrorBound bound_second_lower(double S1, double gamma2, const Interval& iv);
ErrorBound bound_second_upper(double Gamma2, double S1, const Interval& iv);
ErrorBound bound_gruss_second(double sigma_fsecond, const Interval& iv);

// Every inequality whose inputs are present in `info` and consistent,
// tagged with its target and rigor. Consumers take the minimum per target.
// Throws NoApplicableBound when nothing is computable.
std::vector<ErrorBound> best_bounds(const DerivativeInfo& info,
                                    const Interval& iv);

}  // namespace optiquad::bounds
