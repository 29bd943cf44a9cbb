#pragma once

#include <initializer_list>
#include <vector>

namespace optiquad {

// Dense univariate polynomial with ascending coefficients. Degrees stay
// small here (the kernels are piecewise quadratics, their squares quartics),
// so everything is computed in closed form.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  double operator()(double t) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  Polynomial derivative() const;
  Polynomial antiderivative() const;  // integration constant 0
  double integral(double lo, double hi) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;
  Polynomial operator+(double c) const;

  // Integral of |p| over [lo, hi], exact: the interval is split at the
  // interior roots and each single-signed piece is integrated in closed form.
  double abs_integral(double lo, double hi) const;

  // Real roots strictly inside (lo, hi). Supported up to degree 2, which is
  // all the kernel machinery needs.
  std::vector<double> roots_in(double lo, double hi) const;

 private:
  void trim();

  std::vector<double> coeffs_;
};

}  // namespace optiquad
