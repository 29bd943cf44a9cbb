#include "optiquad/composite.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "optiquad/constants.hpp"
#include "optiquad/errors.hpp"

namespace optiquad::composite {

namespace {

namespace c = optiquad::constants;
using bounds::BoundForm;
using bounds::BoundTarget;
using bounds::ErrorBound;
using bounds::TheoremTag;

double eval_checked(const RealFn& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "function value not finite at node t = " << x;
    throw EvalError(msg.str(), x);
  }
  return y;
}

// Panel L2 norm squared of g' with g given as a jet handle. Nonconvergent
// or poisoned quadrature yields absent.
std::optional<double> panel_deriv_sq(const JetFn& g, double lo, double hi) {
  const auto sq = [&g](double t) {
    Jet2 j;
    try {
      j = g(t);
    } catch (const EvalError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return j.d1 * j.d1;
  };
  const PanelIntegral r = integrate_doubling(sq, lo, hi, 1e-10, 1e-14,
                                             std::size_t{1} << 18,
                                             PanelRule::gauss3);
  if (!r.trustworthy || !std::isfinite(r.value)) return std::nullopt;
  return r.value;
}

std::optional<double> endpoint_value(const JetFn& g, double t) {
  try {
    const Jet2 j = g(t);
    if (!std::isfinite(j.v)) return std::nullopt;
    return j.v;
  } catch (const EvalError&) {
    return std::nullopt;
  }
}

double clamp_radicand(double radicand) {
  if (radicand < -1e-12)
    throw ToleranceError("dispersion radicand negative beyond quadrature slack");
  return std::max(0.0, radicand);
}

ErrorBound make(TheoremTag tag, double value,
                BoundForm form = BoundForm::primary) {
  return {tag, value, bounds::target_of(tag), /*rigorous=*/true, form};
}

}  // namespace

double composite_estimate(const RealFn& f, const CompositeConfig& cfg) {
  const double h = cfg.h();
  KahanSum interior;
  for (std::size_t i = 1; i < cfg.n; ++i)
    interior.add(eval_checked(f, cfg.node(i)));
  KahanSum midpoints;
  for (std::size_t i = 0; i < cfg.n; ++i)
    midpoints.add(eval_checked(f, cfg.panel_midpoint(i)));

  const double ends = eval_checked(f, cfg.iv.a) + eval_checked(f, cfg.iv.b);
  return h * (c::weight_end * ends + 2.0 * c::weight_end * interior.value() +
              c::weight_mid * midpoints.value());
}

double composite_correction(double fprime_a, double fprime_b,
                            const CompositeConfig& cfg) {
  if (!(std::isfinite(fprime_a) && std::isfinite(fprime_b)))
    throw std::invalid_argument("endpoint derivatives must be finite");
  const double len = cfg.iv.length();
  const double n = static_cast<double>(cfg.n);
  return c::correction_coeff * len * len / (n * n) * (fprime_b - fprime_a);
}

double composite_correction(const RealFn& fprime, const CompositeConfig& cfg) {
  return composite_correction(fprime(cfg.iv.a), fprime(cfg.iv.b), cfg);
}

std::optional<double> sigma_n(const JetFn& g, const CompositeConfig& cfg) {
  const double h = cfg.h();
  double total = 0.0;
  std::optional<double> prev_value = endpoint_value(g, cfg.iv.a);
  if (!prev_value) return std::nullopt;

  for (std::size_t i = 0; i < cfg.n; ++i) {
    const double lo = cfg.node(i);
    const double hi = i + 1 == cfg.n ? cfg.iv.b : cfg.node(i + 1);
    const std::optional<double> deriv_sq = panel_deriv_sq(g, lo, hi);
    if (!deriv_sq) return std::nullopt;
    const std::optional<double> next_value = endpoint_value(g, hi);
    if (!next_value) return std::nullopt;
    const double jump = *next_value - *prev_value;
    total += std::sqrt(clamp_radicand(h * *deriv_sq - jump * jump));
    prev_value = next_value;
  }
  return total;
}

std::optional<double> omega_n(const JetFn& g, const CompositeConfig& cfg) {
  const std::optional<double> deriv_sq =
      panel_deriv_sq(g, cfg.iv.a, cfg.iv.b);
  if (!deriv_sq) return std::nullopt;
  const std::optional<double> ga = endpoint_value(g, cfg.iv.a);
  const std::optional<double> gb = endpoint_value(g, cfg.iv.b);
  if (!ga || !gb) return std::nullopt;
  const double jump = *gb - *ga;
  return std::sqrt(clamp_radicand(cfg.iv.length() * *deriv_sq -
                                  jump * jump / static_cast<double>(cfg.n)));
}

bounds::ErrorBound cb_second_sup(double M2, const CompositeConfig& cfg) {
  if (!(M2 >= 0.0)) throw std::invalid_argument("||f''||inf must be >= 0");
  const double len = cfg.iv.length();
  const double n = static_cast<double>(cfg.n);
  return make(TheoremTag::second_sup,
              c::kernel_l1_min / (n * n) * M2 * len * len * len);
}

std::vector<bounds::ErrorBound> cb_first(std::optional<double> gamma1,
                                         std::optional<double> Gamma1,
                                         std::optional<double> S,
                                         const CompositeConfig& cfg) {
  const double len = cfg.iv.length();
  const double n = static_cast<double>(cfg.n);
  const double scale = len * len / n;
  std::vector<ErrorBound> out;
  if (gamma1 && Gamma1) {
    if (!(*gamma1 <= *Gamma1))
      throw std::invalid_argument("inverted range for f'");
    out.push_back(make(TheoremTag::first_range,
                       (*Gamma1 - *gamma1) * c::first_range_coeff * scale));
  }
  if (S && gamma1) {
    if (!(*S >= *gamma1))
      throw std::invalid_argument("secant below the lower bound of f'");
    out.push_back(make(TheoremTag::first_lower,
                       c::first_secant_coeff * (*S - *gamma1) * scale));
  }
  if (S && Gamma1) {
    if (!(*Gamma1 >= *S))
      throw std::invalid_argument("secant above the upper bound of f'");
    out.push_back(make(TheoremTag::first_upper,
                       c::first_secant_coeff * (*Gamma1 - *S) * scale));
  }
  return out;
}

bounds::ErrorBound cb_gruss_first(double sigma_n_val,
                                  const CompositeConfig& cfg) {
  if (!(sigma_n_val >= 0.0))
    throw std::invalid_argument("dispersion must be >= 0");
  const double n = static_cast<double>(cfg.n);
  return make(TheoremTag::gruss_first,
              c::gruss_first_coeff * cfg.iv.length() / n * sigma_n_val);
}

bounds::ErrorBound cb_gruss_first_omega(double omega_n_val,
                                        const CompositeConfig& cfg) {
  if (!(omega_n_val >= 0.0))
    throw std::invalid_argument("dispersion must be >= 0");
  const double n = static_cast<double>(cfg.n);
  return make(TheoremTag::gruss_first,
              c::gruss_first_coeff * cfg.iv.length() / std::sqrt(n) *
                  omega_n_val,
              BoundForm::omega_weakened);
}

std::vector<bounds::ErrorBound> cb_second(std::optional<double> gamma2,
                                          std::optional<double> Gamma2,
                                          std::optional<double> S1,
                                          const CompositeConfig& cfg) {
  const double len = cfg.iv.length();
  const double n = static_cast<double>(cfg.n);
  const double scale = len * len * len / n;
  std::vector<ErrorBound> out;
  if (gamma2 && Gamma2) {
    if (!(*gamma2 <= *Gamma2))
      throw std::invalid_argument("inverted range for f''");
    out.push_back(make(TheoremTag::second_range,
                       0.5 * (*Gamma2 - *gamma2) * c::p2tilde_l1 * scale));
  }
  if (S1 && gamma2) {
    if (!(*S1 >= *gamma2))
      throw std::invalid_argument(
          "derivative secant below the lower bound of f''");
    out.push_back(make(TheoremTag::second_lower,
                       c::second_secant_coeff * (*S1 - *gamma2) * scale));
  }
  if (S1 && Gamma2) {
    if (!(*Gamma2 >= *S1))
      throw std::invalid_argument(
          "derivative secant above the upper bound of f''");
    out.push_back(make(TheoremTag::second_upper,
                       c::second_secant_coeff * (*Gamma2 - *S1) * scale));
  }
  return out;
}

bounds::ErrorBound cb_gruss_second(double sigma_n_fprime_val,
                                   const CompositeConfig& cfg) {
  if (!(sigma_n_fprime_val >= 0.0))
    throw std::invalid_argument("dispersion must be >= 0");
  const double len = cfg.iv.length();
  const double n = static_cast<double>(cfg.n);
  return make(TheoremTag::gruss_second,
              c::gruss_second_coeff * len * len / (n * n) * sigma_n_fprime_val);
}

bounds::ErrorBound cb_gruss_second_omega(double omega_n_fprime_val,
                                         const CompositeConfig& cfg) {
  if (!(omega_n_fprime_val >= 0.0))
    throw std::invalid_argument("dispersion must be >= 0");
  const double len = cfg.iv.length();
  const double n = static_cast<double>(cfg.n);
  return make(TheoremTag::gruss_second,
              c::gruss_second_coeff * len * len / (n * std::sqrt(n)) *
                  omega_n_fprime_val,
              BoundForm::omega_weakened);
}

CompositeReport analyze(const JetFn& f, const bounds::DerivativeInfo& info,
                        const CompositeConfig& cfg) {
  CompositeReport report;
  report.n = cfg.n;
  report.estimate =
      composite_estimate([&f](double t) { return f(t).v; }, cfg);

  if (info.S1)
    report.correction = composite_correction(
        f(cfg.iv.a).d1, f(cfg.iv.b).d1, cfg);

  // Shift the jet components one derivative down to treat f' as the
  // function whose dispersion sigma_n measures.
  const JetFn fprime_as_fn = [&f](double t) {
    const Jet2 j = f(t);
    return Jet2{j.d1, j.d2, 0.0};
  };
  // A radicand that is negative beyond quadrature slack means the sampled
  // moments are mutually inconsistent (the integrand violates the absolute
  // continuity the dispersion bounds assume, e.g. a kink). The functional is
  // then unavailable; the mean-value warnings in the info record the cause.
  const auto sigma_or_absent = [&cfg](const JetFn& g) -> std::optional<double> {
    try {
      return sigma_n(g, cfg);
    } catch (const ToleranceError&) {
      return std::nullopt;
    }
  };
  report.sigma_n_fprime = sigma_or_absent(f);
  report.sigma_n_fsecond =
      info.S1 ? sigma_or_absent(fprime_as_fn) : std::nullopt;

  // Omega fallbacks from the whole-interval L2 fields so that user-supplied
  // norms keep their rigor.
  std::optional<bounds::InfoField> omega1, omega2;
  const auto omega_field = [&cfg](const bounds::InfoField& l2, double secant)
      -> std::optional<bounds::InfoField> {
    const double len = cfg.iv.length();
    const double radicand = len * l2.value * l2.value -
                            secant * secant * len * len /
                                static_cast<double>(cfg.n);
    if (radicand < -1e-12) return std::nullopt;
    return bounds::InfoField{std::sqrt(std::max(0.0, radicand)), l2.origin};
  };
  if (info.l2_fprime && info.S) {
    omega1 = omega_field(*info.l2_fprime, info.S->value);
    if (omega1) report.omega_n_fprime = omega1->value;
  }
  if (info.l2_fsecond && info.S1) {
    omega2 = omega_field(*info.l2_fsecond, info.S1->value);
    if (omega2) report.omega_n_fsecond = omega2->value;
  }

  auto push = [&report](ErrorBound b, bool rigorous) {
    b.rigorous = rigorous;
    report.bounds.push_back(b);
  };

  if (info.sup_fsecond)
    push(cb_second_sup(info.sup_fsecond->value, cfg),
         info.sup_fsecond->rigorous());

  // First-derivative range bounds, honoring partial availability and the
  // mean value theorem.
  const bool have_lower =
      info.S && info.gamma1 && info.S->value >= info.gamma1->value;
  const bool have_upper =
      info.S && info.Gamma1 && info.Gamma1->value >= info.S->value;
  const bool have_range =
      info.gamma1 && info.Gamma1 && info.gamma1->value <= info.Gamma1->value;
  if (have_range)
    push(cb_first(info.gamma1->value, info.Gamma1->value, std::nullopt,
                  cfg)[0],
         info.gamma1->rigorous() && info.Gamma1->rigorous());
  if (have_lower)
    push(cb_first(info.gamma1->value, std::nullopt, info.S->value, cfg)[0],
         info.gamma1->rigorous() && info.S->rigorous());
  if (have_upper)
    push(cb_first(std::nullopt, info.Gamma1->value, info.S->value, cfg)[0],
         info.Gamma1->rigorous() && info.S->rigorous());

  if (report.sigma_n_fprime)
    push(cb_gruss_first(*report.sigma_n_fprime, cfg), false);
  if (omega1) push(cb_gruss_first_omega(omega1->value, cfg), omega1->rigorous());

  if (info.S1) {
    const bool have_lower2 =
        info.gamma2 && info.S1->value >= info.gamma2->value;
    const bool have_upper2 =
        info.Gamma2 && info.Gamma2->value >= info.S1->value;
    const bool have_range2 =
        info.gamma2 && info.Gamma2 && info.gamma2->value <= info.Gamma2->value;
    if (have_range2)
      push(cb_second(info.gamma2->value, info.Gamma2->value, std::nullopt,
                     cfg)[0],
           info.gamma2->rigorous() && info.Gamma2->rigorous());
    if (have_lower2)
      push(cb_second(info.gamma2->value, std::nullopt, info.S1->value, cfg)[0],
           info.gamma2->rigorous() && info.S1->rigorous());
    if (have_upper2)
      push(cb_second(std::nullopt, info.Gamma2->value, info.S1->value, cfg)[0],
           info.Gamma2->rigorous() && info.S1->rigorous());
    if (report.sigma_n_fsecond)
      push(cb_gruss_second(*report.sigma_n_fsecond, cfg), false);
    if (omega2)
      push(cb_gruss_second_omega(omega2->value, cfg), omega2->rigorous());
  }

  return report;
}

StudyTable convergence_study(const JetFn& f, const Interval& iv,
                             const std::vector<std::size_t>& n_values,
                             double reference,
                             const bounds::DerivativeInfo& info) {
  if (n_values.empty())
    throw std::invalid_argument("study requires at least one panel count");

  StudyTable table;
  for (std::size_t n : n_values) {
    const CompositeConfig cfg(iv, n);
    const CompositeReport rep = analyze(f, info, cfg);

    StudyRow row;
    row.n = n;
    row.h = cfg.h();
    row.estimate = rep.estimate;
    row.abs_error = std::abs(reference - rep.estimate);
    if (rep.correction) {
      row.corrected = rep.estimate + *rep.correction;
      row.abs_corrected_error = std::abs(reference - *row.corrected);
    }
    for (const bounds::ErrorBound& b : rep.bounds) {
      switch (b.tag) {
        case TheoremTag::second_sup:
          row.bound_t4ab = b.value;
          break;
        case TheoremTag::first_range:
          row.bound_t1p_range = b.value;
          break;
        case TheoremTag::gruss_first:
          (b.form == BoundForm::primary ? row.bound_t2p_sigma
                                        : row.bound_t2p_omega) = b.value;
          break;
        case TheoremTag::second_range:
          row.bound_t3p_range = b.value;
          break;
        case TheoremTag::gruss_second:
          if (b.form == BoundForm::primary) row.bound_t4p_sigma = b.value;
          break;
        default:
          break;
      }
    }
    table.rows.push_back(row);
  }

  // Least-squares slope of log|err| against log n over the last <= 4 rows.
  const auto fit = [&](auto pick) -> std::optional<double> {
    std::vector<std::pair<double, double>> pts;
    for (const StudyRow& row : table.rows) {
      const std::optional<double> e = pick(row);
      if (e && *e > 0.0)
        pts.emplace_back(std::log(static_cast<double>(row.n)), std::log(*e));
    }
    if (pts.size() > 4) pts.erase(pts.begin(), pts.end() - 4);
    if (pts.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return (m * sxy - sx * sy) / denom;
  };
  table.slope_error = fit([](const StudyRow& r) {
    return std::optional<double>(r.abs_error);
  });
  table.slope_corrected = fit([](const StudyRow& r) {
    return r.abs_corrected_error;
  });

  return table;
}

}  // namespace optiquad::composite
