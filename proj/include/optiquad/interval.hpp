#pragma once

#include <cmath>
#include <stdexcept>

namespace optiquad {

// Closed integration interval [a, b] with finite a < b.
struct Interval {
  double a;
  double b;

  Interval(double a_, double b_) : a(a_), b(b_) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
      throw std::invalid_argument("interval requires finite endpoints a < b");
  }

  double length() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
};

}  // namespace optiquad
