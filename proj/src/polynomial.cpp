#include "optiquad/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optiquad {

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : coeffs_(coeffs) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

double Polynomial::integral(double lo, double hi) const {
  const Polynomial f = antiderivative();
  return f(hi) - f(lo);
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) c[k] += other.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<double> c(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> c = coeffs_;
  for (double& x : c) x *= s;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(double c) const {
  std::vector<double> v = coeffs_;
  v[0] += c;
  return Polynomial(std::move(v));
}

std::vector<double> Polynomial::roots_in(double lo, double hi) const {
  std::vector<double> roots;
  auto keep = [&](double r) {
    if (r > lo && r < hi) roots.push_back(r);
  };
  switch (degree()) {
    case 0:
      break;
    case 1:
      keep(-coeffs_[0] / coeffs_[1]);
      break;
    case 2: {
      const double a = coeffs_[2], b = coeffs_[1], c = coeffs_[0];
      const double disc = b * b - 4.0 * a * c;
      if (disc > 0.0) {
        // Stable form: avoid cancellation between -b and sqrt(disc).
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        keep(q / a);
        if (q != 0.0) keep(c / q);
      } else if (disc == 0.0) {
        keep(-0.5 * b / a);
      }
      break;
    }
    default:
      throw std::logic_error("roots_in supports degree <= 2 only");
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

double Polynomial::abs_integral(double lo, double hi) const {
  std::vector<double> cuts = roots_in(lo, hi);
  cuts.insert(cuts.begin(), lo);
  cuts.push_back(hi);
  const Polynomial f = antiderivative();
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    total += std::abs(f(cuts[k + 1]) - f(cuts[k]));
  return total;
}

}  // namespace optiquad
