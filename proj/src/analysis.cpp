#include "optiquad/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "optiquad/errors.hpp"
#include "optiquad/quadrature.hpp"

namespace optiquad::analysis {

namespace {

using bounds::InfoField;
using bounds::Provenance;

// Jet evaluation that maps evaluation failures to NaN; quadrature and
// sampling treat NaN as "information unavailable" rather than as an error.
Jet2 jet_or_nan(const expr::NodePtr& ast, double t) {
  try {
    return expr::eval_jet(ast, t);
  } catch (const EvalError&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan};
  }
}

double component(const Jet2& j, int order) { return order == 1 ? j.d1 : j.d2; }

RealFn component_fn(const expr::NodePtr& ast, int order) {
  return [ast, order](double t) { return component(jet_or_nan(ast, t), order); };
}

std::optional<double> halving_integral(const RealFn& f, const Interval& iv) {
  const PanelIntegral r = integrate_doubling(f, iv.a, iv.b, 1e-10, 1e-14,
                                             std::size_t{1} << 20,
                                             PanelRule::gauss3);
  if (!r.trustworthy || !std::isfinite(r.value)) return std::nullopt;
  return r.value;
}

}  // namespace

Secants secants(const expr::NodePtr& ast, const Interval& iv) {
  const Jet2 ja = expr::eval_jet(ast, iv.a);  // EvalError escapes by design
  const Jet2 jb = expr::eval_jet(ast, iv.b);
  if (!std::isfinite(ja.v)) {
    std::ostringstream msg;
    msg << "function value not finite at endpoint t = " << iv.a;
    throw EvalError(msg.str(), iv.a);
  }
  if (!std::isfinite(jb.v)) {
    std::ostringstream msg;
    msg << "function value not finite at endpoint t = " << iv.b;
    throw EvalError(msg.str(), iv.b);
  }

  Secants out;
  out.S = InfoField{(jb.v - ja.v) / iv.length(), Provenance::exact};
  if (std::isfinite(ja.d1) && std::isfinite(jb.d1))
    out.S1 = InfoField{(jb.d1 - ja.d1) / iv.length(), Provenance::exact};
  return out;
}

std::optional<std::pair<double, double>> sample_range(
    const expr::NodePtr& ast, int derivative_order, const Interval& iv,
    const SamplingConfig& cfg) {
  const std::size_t n = std::max<std::size_t>(
      cfg.min_points,
      static_cast<std::size_t>(std::ceil(
          static_cast<double>(cfg.points_per_unit) * iv.length())) +
          1);
  const double h = iv.length() / static_cast<double>(n - 1);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i + 1 == n ? iv.b : iv.a + static_cast<double>(i) * h;
    const double g = component(jet_or_nan(ast, t), derivative_order);
    if (!std::isfinite(g) || std::abs(g) > cfg.unbounded_cutoff)
      return std::nullopt;
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return std::make_pair(lo, hi);
}

std::optional<double> l2_norm(const expr::NodePtr& ast, int derivative_order,
                              const Interval& iv) {
  const RealFn g = component_fn(ast, derivative_order);
  const auto sq = [g](double t) {
    const double v = g(t);
    return v * v;
  };
  const std::optional<double> integral = halving_integral(sq, iv);
  if (!integral) return std::nullopt;
  return std::sqrt(std::max(0.0, *integral));
}

std::optional<double> sigma(const expr::NodePtr& ast, int derivative_order,
                            const Interval& iv) {
  const RealFn g = component_fn(ast, derivative_order);
  const auto sq = [g](double t) {
    const double v = g(t);
    return v * v;
  };
  const std::optional<double> second_moment = halving_integral(sq, iv);
  if (!second_moment) return std::nullopt;
  const std::optional<double> first_moment = halving_integral(g, iv);
  if (!first_moment) return std::nullopt;

  const double radicand =
      *second_moment - *first_moment * *first_moment / iv.length();
  if (radicand < -1e-12)
    throw ToleranceError("dispersion radicand negative beyond quadrature slack");
  return std::sqrt(std::max(0.0, radicand));
}

bounds::DerivativeInfo build_info(const expr::NodePtr& ast, const Interval& iv,
                                  const Overrides& overrides,
                                  const SamplingConfig& cfg) {
  bounds::DerivativeInfo info;

  const Secants sec = secants(ast, iv);
  info.S = sec.S;
  info.S1 = sec.S1;

  const auto fill_range = [&](int order, std::optional<InfoField>& lo_field,
                              std::optional<InfoField>& hi_field,
                              const std::optional<double>& lo_override,
                              const std::optional<double>& hi_override) {
    if (const auto range = sample_range(ast, order, iv, cfg)) {
      lo_field = InfoField{range->first, Provenance::sampled};
      hi_field = InfoField{range->second, Provenance::sampled};
    }
    if (lo_override)
      lo_field = InfoField{*lo_override, Provenance::user_supplied};
    if (hi_override)
      hi_field = InfoField{*hi_override, Provenance::user_supplied};
  };
  fill_range(1, info.gamma1, info.Gamma1, overrides.gamma1, overrides.Gamma1);
  fill_range(2, info.gamma2, info.Gamma2, overrides.gamma2, overrides.Gamma2);

  if (info.gamma2 && info.Gamma2) {
    const bool rigorous = info.gamma2->rigorous() && info.Gamma2->rigorous();
    info.sup_fsecond = InfoField{
        std::max(std::abs(info.gamma2->value), std::abs(info.Gamma2->value)),
        rigorous ? Provenance::user_supplied : Provenance::sampled};
  }

  // L2 norms and dispersions. A user-supplied norm combines with the exact
  // endpoint difference (the integral of f' is f(b)-f(a), that of f'' is
  // f'(b)-f'(a)) into a rigorous dispersion; otherwise both moments come
  // from quadrature.
  const auto fill_sigma = [&](int order, const std::optional<double>& l2_override,
                              std::optional<InfoField>& l2_field,
                              std::optional<InfoField>& sigma_field,
                              const std::optional<InfoField>& endpoint_secant) {
    if (l2_override) {
      l2_field = InfoField{*l2_override, Provenance::user_supplied};
      if (endpoint_secant) {
        const double mean_sq = endpoint_secant->value *
                               endpoint_secant->value * iv.length();
        const double radicand = *l2_override * *l2_override - mean_sq;
        if (radicand < -1e-12)
          throw ToleranceError(
              "supplied L2 norm is inconsistent with the endpoint secant");
        sigma_field = InfoField{std::sqrt(std::max(0.0, radicand)),
                                Provenance::user_supplied};
      }
      return;
    }
    if (const auto l2 = l2_norm(ast, order, iv))
      l2_field = InfoField{*l2, Provenance::sampled};
    if (l2_field)
      if (const auto s = sigma(ast, order, iv))
        sigma_field = InfoField{*s, Provenance::sampled};
  };
  fill_sigma(1, overrides.l2_fprime, info.l2_fprime, info.sigma_fprime, info.S);
  fill_sigma(2, overrides.l2_fsecond, info.l2_fsecond, info.sigma_fsecond,
             info.S1);

  // Consistency of overrides against the mean value theorem.
  const auto warn = [&](std::string text) {
    info.warnings.push_back(std::move(text));
  };
  if (info.S && info.gamma1 && info.gamma1->value > info.S->value)
    warn("gamma1 exceeds the secant (f(b)-f(a))/(b-a)");
  if (info.S && info.Gamma1 && info.Gamma1->value < info.S->value)
    warn("Gamma1 is below the secant (f(b)-f(a))/(b-a)");
  if (info.S1 && info.gamma2 && info.gamma2->value > info.S1->value)
    warn("gamma2 exceeds the derivative secant (f'(b)-f'(a))/(b-a)");
  if (info.S1 && info.Gamma2 && info.Gamma2->value < info.S1->value)
    warn("Gamma2 is below the derivative secant (f'(b)-f'(a))/(b-a)");

  // Diagnose endpoint derivative blow-ups so reports can explain why the
  // range bounds are absent.
  for (int order : {1, 2}) {
    const bool have_range = order == 1 ? bool(info.gamma1) : bool(info.gamma2);
    if (have_range) continue;
    for (double end : {iv.a, iv.b}) {
      const double at_end = component(jet_or_nan(ast, end), order);
      if (std::isfinite(at_end) && std::abs(at_end) <= cfg.unbounded_cutoff)
        continue;
      const double margin = end == iv.a ? cfg.singularity_margin
                                        : -cfg.singularity_margin;
      const double near = component(jet_or_nan(ast, end + margin), order);
      std::ostringstream msg;
      msg << (order == 1 ? "f'" : "f''") << " appears unbounded near t = "
          << end;
      if (std::isfinite(near))
        msg << " (|value| ~ " << std::abs(near) << " against cutoff "
            << cfg.unbounded_cutoff << ")";
      warn(msg.str());
      break;
    }
  }

  return info;
}

}  // namespace optiquad::analysis
