#include "optiquad/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "optiquad/constants.hpp"
#include "optiquad/errors.hpp"

namespace optiquad::bounds {

namespace {

namespace c = optiquad::constants;

double pow32(double x) { return x * std::sqrt(x); }

ErrorBound make(TheoremTag tag, double value) {
  return {tag, value, target_of(tag), /*rigorous=*/true, BoundForm::primary};
}

}  // namespace

BoundTarget target_of(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::second_range:
    case TheoremTag::second_lower:
    case TheoremTag::second_upper:
    case TheoremTag::gruss_second:
      return BoundTarget::q_minus_p;
    default:
      return BoundTarget::q;
  }
}

const char* tag_name(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::second_sup: return "fpp-sup";
    case TheoremTag::first_range: return "fp-range";
    case TheoremTag::first_lower: return "fp-lower";
    case TheoremTag::first_upper: return "fp-upper";
    case TheoremTag::gruss_first: return "gruss-fp";
    case TheoremTag::second_range: return "fpp-range";
    case TheoremTag::second_lower: return "fpp-lower";
    case TheoremTag::second_upper: return "fpp-upper";
    case TheoremTag::gruss_second: return "gruss-fpp";
  }
  return "?";
}

ErrorBound bound_second_sup(double M2, const Interval& iv) {
  if (!(M2 >= 0.0)) throw std::invalid_argument("||f''||inf must be >= 0");
  const double len = iv.length();
  return make(TheoremTag::second_sup, c::kernel_l1_min * M2 * len * len * len);
}

ErrorBound bound_first_range(double gamma1, double Gamma1, const Interval& iv) {
  if (!(gamma1 <= Gamma1))
    throw std::invalid_argument("inverted range for f'");
  const double len = iv.length();
  return make(TheoremTag::first_range,
              (Gamma1 - gamma1) * c::first_range_coeff * len * len);
}

ErrorBound bound_first_lower(double S, double gamma1, const Interval& iv) {
  if (!(S >= gamma1))
    throw std::invalid_argument("secant below the lower bound of f'");
  const double len = iv.length();
  return make(TheoremTag::first_lower,
              c::first_secant_coeff * (S - gamma1) * len * len);
}

ErrorBound bound_first_upper(double Gamma1, double S, const Interval& iv) {
  if (!(Gamma1 >= S))
    throw std::invalid_argument("secant above the upper bound of f'");
  const double len = iv.length();
  return make(TheoremTag::first_upper,
              c::first_secant_coeff * (Gamma1 - S) * len * len);
}

ErrorBound bound_gruss_first(double sigma_fprime, const Interval& iv) {
  if (!(sigma_fprime >= 0.0))
    throw std::invalid_argument("dispersion must be >= 0");
  return make(TheoremTag::gruss_first,
              c::gruss_first_coeff * sigma_fprime * pow32(iv.length()));
}

ErrorBound bound_second_range(double gamma2, double Gamma2, const Interval& iv) {
  if (!(gamma2 <= Gamma2))
    throw std::invalid_argument("inverted range for f''");
  const double len = iv.length();
  return make(TheoremTag::second_range,
              0.5 * (Gamma2 - gamma2) * c::p2tilde_l1 * len * len * len);
}

ErrorBound bound_second_lower(double S1, double gamma2, const Interval& iv) {
  if (!(S1 >= gamma2))
    throw std::invalid_argument("derivative secant below the lower bound of f''");
  const double len = iv.length();
  return make(TheoremTag::second_lower,
              c::second_secant_coeff * (S1 - gamma2) * len * len * len);
}

ErrorBound bound_second_upper(double Gamma2, double S1, const Interval& iv) {
  if (!(Gamma2 >= S1))
    throw std::invalid_argument("derivative secant above the upper bound of f''");
  const double len = iv.length();
  return make(TheoremTag::second_upper,
              c::second_secant_coeff * (Gamma2 - S1) * len * len * len);
}

ErrorBound bound_gruss_second(double sigma_fsecond, const Interval& iv) {
  if (!(sigma_fsecond >= 0.0))
    throw std::invalid_argument("dispersion must be >= 0");
  const double len = iv.length();
  return make(TheoremTag::gruss_second,
              c::gruss_second_coeff * sigma_fsecond * len * len * std::sqrt(len));
}

std::vector<ErrorBound> best_bounds(const DerivativeInfo& info,
                                    const Interval& iv) {
  std::vector<ErrorBound> out;
  auto push = [&](ErrorBound b, bool rigorous) {
    b.rigorous = rigorous;
    out.push_back(b);
  };

  if (info.sup_fsecond)
    push(bound_second_sup(info.sup_fsecond->value, iv),
         info.sup_fsecond->rigorous());
  if (info.gamma1 && info.Gamma1 && info.gamma1->value <= info.Gamma1->value)
    push(bound_first_range(info.gamma1->value, info.Gamma1->value, iv),
         info.gamma1->rigorous() && info.Gamma1->rigorous());
  if (info.S && info.gamma1 && info.S->value >= info.gamma1->value)
    push(bound_first_lower(info.S->value, info.gamma1->value, iv),
         info.S->rigorous() && info.gamma1->rigorous());
  if (info.S && info.Gamma1 && info.Gamma1->value >= info.S->value)
    push(bound_first_upper(info.Gamma1->value, info.S->value, iv),
         info.S->rigorous() && info.Gamma1->rigorous());
  if (info.sigma_fprime)
    push(bound_gruss_first(info.sigma_fprime->value, iv),
         info.sigma_fprime->rigorous());

  if (info.gamma2 && info.Gamma2 && info.gamma2->value <= info.Gamma2->value)
    push(bound_second_range(info.gamma2->value, info.Gamma2->value, iv),
         info.gamma2->rigorous() && info.Gamma2->rigorous());
  if (info.S1 && info.gamma2 && info.S1->value >= info.gamma2->value)
    push(bound_second_lower(info.S1->value, info.gamma2->value, iv),
         info.S1->rigorous() && info.gamma2->rigorous());
  if (info.S1 && info.Gamma2 && info.Gamma2->value >= info.S1->value)
    push(bound_second_upper(info.Gamma2->value, info.S1->value, iv),
         info.S1->rigorous() && info.Gamma2->rigorous());
  if (info.sigma_fsecond)
    push(bound_gruss_second(info.sigma_fsecond->value, iv),
         info.sigma_fsecond->rigorous());

  if (out.empty())
    throw NoApplicableBound(
        "no derivative information supports any error inequality");
  return out;
}

}  // namespace optiquad::bounds
