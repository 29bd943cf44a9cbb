#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "optiquad/constants.hpp"
#include "optiquad/errors.hpp"
#include "optiquad/kernels.hpp"
#include "optiquad/polynomial.hpp"
#include "optiquad/rules.hpp"

namespace c = optiquad::constants;
using optiquad::EvalError;
using optiquad::Interval;
using optiquad::Polynomial;
using namespace optiquad::rules;

TEST_SUITE("rules") {

TEST_CASE("weights are symmetric and sum to one") {
  const RuleWeights w = optimal_rule_weights();
  CHECK(w.w_left == w.w_right);
  CHECK(w.w_left + w.w_mid + w.w_right == doctest::Approx(1.0).epsilon(1e-16));
  const RuleWeights s = simpson_weights();
  CHECK(s.w_left + s.w_mid + s.w_right == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("estimate pinned values on [0,1]") {
  const Interval unit(0.0, 1.0);
  CHECK(optimal_rule_estimate([](double) { return 1.0; }, unit) ==
        doctest::Approx(1.0).epsilon(1e-16));
  CHECK(optimal_rule_estimate([](double t) { return t; }, unit) ==
        doctest::Approx(0.5).epsilon(1e-16));
  // Not exact on t^2: the rule trades quadratic exactness for the minimal
  // kernel norm. Q(t^2) = 1/12 - sqrt2/16.
  const double est = optimal_rule_estimate([](double t) { return t * t; }, unit);
  CHECK(est == doctest::Approx(0.25 + c::sqrt2 / 16.0).epsilon(1e-15));
  CHECK(1.0 / 3.0 - est ==
        doctest::Approx((4.0 - 3.0 * c::sqrt2) / 48.0).epsilon(1e-13));
}

TEST_CASE("simpson is exact through cubics") {
  const Interval unit(0.0, 1.0);
  CHECK(simpson_estimate([](double t) { return t * t; }, unit) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(simpson_estimate([](double t) { return t * t * t; }, unit) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(simpson_estimate([](double) { return 1.0; }, unit) ==
        doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("correction pinned values") {
  const Interval unit(0.0, 1.0);
  // f = t^2: correction equals the rule error, so the corrected rule is
  // exact on quadratics.
  CHECK(correction_p(0.0, 2.0, unit) ==
        doctest::Approx((4.0 - 3.0 * c::sqrt2) / 48.0).epsilon(1e-15));
  CHECK(correction_p(1.0, 1.0, unit) == 0.0);
  // f = t^3: f'(1) - f'(0) = 3.
  CHECK(correction_p(0.0, 3.0, unit) ==
        doctest::Approx((4.0 - 3.0 * c::sqrt2) / 32.0).epsilon(1e-15));
}

TEST_CASE("non-finite node values raise EvalError naming the node") {
  const Interval unit(0.0, 1.0);
  const auto f = [](double t) {
    return t == 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
  };
  CHECK_THROWS_WITH_AS(optimal_rule_estimate(f, unit),
                       doctest::Contains("t = 0.5"), EvalError);
}

TEST_CASE("degree of exactness on random intervals") {
  std::mt19937 rng(90210);
  std::uniform_real_distribution<double> lo_dist(-2.0, 1.0);
  std::uniform_real_distribution<double> len_dist(0.3, 1.5);
  for (int k = 0; k < 20; ++k) {
    const double a = lo_dist(rng);
    const Interval iv(a, a + len_dist(rng));
    const Polynomial constant{1.0};
    const Polynomial linear{0.5, -1.5};
    const Polynomial quadratic{0.0, 0.0, 1.0};

    const auto estimate = [&iv](const Polynomial& p) {
      return optimal_rule_estimate([&p](double t) { return p(t); }, iv);
    };
    CHECK(std::abs(constant.integral(iv.a, iv.b) - estimate(constant)) <=
          1e-14 * iv.length());
    CHECK(std::abs(linear.integral(iv.a, iv.b) - estimate(linear)) <=
          1e-13 * (1.0 + std::abs(linear.integral(iv.a, iv.b))));
    // Quadratics are *not* integrated exactly (unit-length check).
    const Interval unit_at(a, a + 1.0);
    CHECK(std::abs(quadratic.integral(unit_at.a, unit_at.b) -
                   optimal_rule_estimate([](double t) { return t * t; },
                                         unit_at)) > 1e-6);
  }
}

TEST_CASE("corrected rule is exact through cubics") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> lo_dist(-2.0, 1.5);
  std::uniform_real_distribution<double> len_dist(0.2, 2.0);
  for (int k = 0; k < 21; ++k) {
    const Interval iv = k == 0 ? Interval(0.0, 1.0) : [&] {
      const double a = lo_dist(rng);
      return Interval(a, std::min(a + len_dist(rng), 2.0));
    }();
    for (int degree = 0; degree <= 3; ++degree) {
      std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1, 0.0);
      coeffs.back() = 1.0;
      const Polynomial p(coeffs);
      const Polynomial dp = p.derivative();
      const double est =
          optimal_rule_estimate([&p](double t) { return p(t); }, iv);
      const double corr = correction_p(dp(iv.a), dp(iv.b), iv);
      CHECK(std::abs(p.integral(iv.a, iv.b) - est - corr) <= 1e-13);
    }
  }
}

TEST_CASE("affine covariance") {
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> scale_dist(0.2, 3.0);
  std::uniform_real_distribution<double> shift_dist(-2.0, 2.0);
  const auto f = [](double x) { return std::sin(x) + 0.25 * x * x; };
  for (int k = 0; k < 20; ++k) {
    const double scale = scale_dist(rng);
    const double shift = shift_dist(rng);
    const Interval iv(-0.3, 1.1);
    const auto g = [&](double t) { return f(scale * t + shift); };
    const double direct = optimal_rule_estimate(g, iv);
    const Interval mapped(scale * iv.a + shift, scale * iv.b + shift);
    const double via_map = optimal_rule_estimate(f, mapped) / scale;
    CHECK(direct == doctest::Approx(via_map).epsilon(1e-12));
  }
}

TEST_CASE("kernel representation of the error, random quartics") {
  std::mt19937 rng(1234321);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> lo_dist(-1.5, 1.0);
  std::uniform_real_distribution<double> len_dist(0.3, 1.5);
  for (int k = 0; k < 30; ++k) {
    const Polynomial p{coeff(rng), coeff(rng), coeff(rng), coeff(rng),
                       coeff(rng)};
    const Polynomial pdd = p.derivative().derivative();
    const double a = lo_dist(rng);
    const Interval iv(a, a + len_dist(rng));

    const double q = p.integral(iv.a, iv.b) -
                     optimal_rule_estimate([&p](double t) { return p(t); }, iv);
    const double via_kernel =
        residual_via_kernel([&pdd](double t) { return pdd(t); }, iv);
    CHECK(q == doctest::Approx(via_kernel).epsilon(1e-9));
  }
}

TEST_CASE("kernel residual pinned values") {
  const Interval unit(0.0, 1.0);
  CHECK(residual_via_kernel([](double) { return 0.0; }, unit) == 0.0);
  CHECK(residual_via_kernel([](double) { return 2.0; }, unit) ==
        doctest::Approx(2.0 * c::p2_mean).epsilon(1e-11));
  // f'' equal to the kernel itself: the residual is the kernel's second
  // moment, T(p2,p2) + mean(p2)^2.
  const auto p2 = [](double t) { return optiquad::kernels::eval_p2(t); };
  CHECK(residual_via_kernel(p2, unit) ==
        doctest::Approx(c::p2_chebyshev + c::p2_mean * c::p2_mean)
            .epsilon(1e-10));
}

}  // TEST_SUITE
