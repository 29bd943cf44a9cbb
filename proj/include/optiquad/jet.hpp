#pragma once

#include <cmath>
#include <functional>

namespace optiquad {

// Value together with first and second derivative with respect to the
// evaluation abscissa; propagated through expressions by the chain rule.
// Singular *derivatives* (for example d/dt sqrt(t) at 0) are represented as
// +-inf or NaN components, not as errors; only value-level domain violations
// raise a fault.
struct Jet2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

using JetFn = std::function<Jet2(double)>;

// Internal signal for domain violations inside jet arithmetic. The
// expression evaluator catches it and rethrows an EvalError carrying the
// offending abscissa, which the arithmetic itself does not know.
struct JetFault {
  const char* message;
  bool nondifferentiable = false;
};

inline Jet2 jet_constant(double c) { return {c, 0.0, 0.0}; }
inline Jet2 jet_variable(double t) { return {t, 1.0, 0.0}; }

// f(u) with f(u.v) = f0, f'(u.v) = f1, f''(u.v) = f2.
inline Jet2 jet_chain(const Jet2& u, double f0, double f1, double f2) {
  return {f0, f1 * u.d1, f2 * u.d1 * u.d1 + f1 * u.d2};
}

inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.v == 0.0) throw JetFault{"division by zero"};
  const double v = a.v / b.v;
  const double d1 = (a.d1 - v * b.d1) / b.v;
  const double d2 = (a.d2 - 2.0 * d1 * b.d1 - v * b.d2) / b.v;
  return {v, d1, d2};
}

inline Jet2 sin(const Jet2& u) {
  const double s = std::sin(u.v), c = std::cos(u.v);
  return jet_chain(u, s, c, -s);
}

inline Jet2 cos(const Jet2& u) {
  const double s = std::sin(u.v), c = std::cos(u.v);
  return jet_chain(u, c, -s, -c);
}

inline Jet2 tan(const Jet2& u) {
  const double v = std::tan(u.v);
  const double sec2 = 1.0 + v * v;
  return jet_chain(u, v, sec2, 2.0 * v * sec2);
}

inline Jet2 exp(const Jet2& u) {
  const double e = std::exp(u.v);
  return jet_chain(u, e, e, e);
}

inline Jet2 log(const Jet2& u) {
  if (!(u.v > 0.0)) throw JetFault{"log of a non-positive value"};
  return jet_chain(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v));
}

inline Jet2 sqrt(const Jet2& u) {
  if (u.v < 0.0) throw JetFault{"sqrt of a negative value"};
  const double s = std::sqrt(u.v);
  return jet_chain(u, s, 0.5 / s, -0.25 / (s * s * s));
}

inline Jet2 cbrt(const Jet2& u) {
  const double c = std::cbrt(u.v);
  const double c2 = c * c;
  return jet_chain(u, c, 1.0 / (3.0 * c2), -2.0 / (9.0 * c2 * c2 * c));
}

inline Jet2 abs(const Jet2& u) {
  if (std::abs(u.v) < 1e-300)
    throw JetFault{"abs evaluated at its kink", /*nondifferentiable=*/true};
  const double sign = u.v > 0.0 ? 1.0 : -1.0;
  return jet_chain(u, std::abs(u.v), sign, 0.0);
}

// u^c for a fixed real exponent. Integer exponents admit negative bases;
// non-integer exponents require u >= 0 (the derivative formulas then take
// care of any singularity at u = 0 themselves).
inline Jet2 pow(const Jet2& u, double c) {
  if (c == 0.0) return jet_constant(1.0);
  if (c == 1.0) return u;
  const bool integral =
      std::nearbyint(c) == c && std::abs(c) < 9.007199254740992e15;
  if (integral) {
    if (u.v == 0.0 && c < 0.0) throw JetFault{"zero raised to a negative power"};
  } else {
    if (u.v < 0.0)
      throw JetFault{"non-integer power of a negative base"};
    if (u.v == 0.0 && c < 0.0) throw JetFault{"zero raised to a negative power"};
  }
  const double f0 = std::pow(u.v, c);
  const double f1 = c * std::pow(u.v, c - 1.0);
  const double k2 = c * (c - 1.0);
  const double f2 = k2 == 0.0 ? 0.0 : k2 * std::pow(u.v, c - 2.0);
  return jet_chain(u, f0, f1, f2);
}

// General power. A constant exponent (both derivative components zero) uses
// the fixed-exponent rules above; otherwise u^w = exp(w log u), u > 0.
inline Jet2 pow(const Jet2& u, const Jet2& w) {
  if (w.d1 == 0.0 && w.d2 == 0.0) return pow(u, w.v);
  if (!(u.v > 0.0))
    throw JetFault{"variable exponent requires a positive base"};
  return exp(w * log(u));
}

}  // namespace optiquad
