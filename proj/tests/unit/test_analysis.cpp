#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "common/corpus.hpp"
#include "optiquad/analysis.hpp"
#include "optiquad/constants.hpp"
#include "optiquad/errors.hpp"
#include "optiquad/polynomial.hpp"

namespace c = optiquad::constants;
using optiquad::EvalError;
using optiquad::Interval;
using optiquad::bounds::Provenance;
using namespace optiquad::analysis;

TEST_SUITE("analysis") {

TEST_CASE("secants") {
  const Interval unit(0.0, 1.0);
  const Secants sq = secants(optiquad::expr::parse("t^2"), unit);
  REQUIRE(sq.S);
  REQUIRE(sq.S1);
  CHECK(sq.S->value == 1.0);
  CHECK(sq.S1->value == 2.0);
  CHECK(sq.S->origin == Provenance::exact);

  // f' of sqrt blows up at 0: S stays, S1 is absent.
  const Secants rt = secants(optiquad::expr::parse("sqrt(t)"), unit);
  REQUIRE(rt.S);
  CHECK(rt.S->value == doctest::Approx(1.0));
  CHECK_FALSE(rt.S1);

  CHECK_THROWS_AS(secants(optiquad::expr::parse("log(t)"), Interval(0.0, 1.0)),
                  EvalError);
  CHECK_THROWS_AS(Interval(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("sampled ranges") {
  const Interval unit(0.0, 1.0);
  const auto r1 = sample_range(optiquad::expr::parse("t^2"), 1, unit);
  REQUIRE(r1);
  CHECK(r1->first == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r1->second == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_FALSE(sample_range(optiquad::expr::parse("sqrt(t)"), 1, unit));
  CHECK_FALSE(sample_range(optiquad::expr::parse("cbrt(sin(t^2))"), 1, unit));

  const auto r2 = sample_range(optiquad::expr::parse("sin(t)"), 2,
                               Interval(0.0, 3.14159265358979324));
  REQUIRE(r2);
  CHECK(std::abs(r2->first - -1.0) <= 1e-7);
  CHECK(std::abs(r2->second - 0.0) <= 1e-7);
}

TEST_CASE("L2 norms") {
  const Interval unit(0.0, 1.0);
  const auto n1 = l2_norm(optiquad::expr::parse("t^2"), 1, unit);
  REQUIRE(n1);
  CHECK(*n1 == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-9));

  // Integrable endpoint singularity of power type: the halving sequence
  // decays geometrically and the extrapolated value lands near 10/sqrt(27).
  const auto n2 = l2_norm(optiquad::expr::parse("cbrt(t^5)"), 2, unit);
  REQUIRE(n2);
  CHECK(std::abs(*n2 - std::sqrt(100.0 / 27.0)) <= 5e-3);

  // Divergent: (d/dt sqrt(t))^2 = 1/(4t).
  CHECK_FALSE(l2_norm(optiquad::expr::parse("sqrt(t)"), 1, unit));
}

TEST_CASE("dispersion") {
  const Interval unit(0.0, 1.0);
  const auto s1 = sigma(optiquad::expr::parse("t^2"), 1, unit);
  REQUIRE(s1);
  CHECK(*s1 == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-9));

  // Constant component: zero dispersion.
  const auto s0 = sigma(optiquad::expr::parse("t"), 1, unit);
  REQUIRE(s0);
  CHECK(*s0 == doctest::Approx(0.0));

  // Invariance under adding a constant to the component.
  const auto sa = sigma(optiquad::expr::parse("t^2"), 1, unit);
  const auto sb = sigma(optiquad::expr::parse("t^2 + 7*t"), 1, unit);
  REQUIRE(sa);
  REQUIRE(sb);
  CHECK(*sa == doctest::Approx(*sb).epsilon(1e-10));
}

TEST_CASE("Pythagorean identity of the dispersion") {
  const Interval iv(0.25, 1.75);
  const auto ast = optiquad::expr::parse("sin(2*t) + 0.3*t^2");
  const auto l2 = l2_norm(ast, 1, iv);
  const auto s = sigma(ast, 1, iv);
  REQUIRE(l2);
  REQUIRE(s);
  // mean of f' over the interval is the secant.
  const Secants sec = secants(ast, iv);
  REQUIRE(sec.S);
  const double mean_sq = sec.S->value * sec.S->value * iv.length();
  CHECK(*s * *s + mean_sq == doctest::Approx(*l2 * *l2).epsilon(1e-10));
}

TEST_CASE("build_info for a polynomial") {
  const Interval unit(0.0, 1.0);
  const auto info = build_info(optiquad::expr::parse("t^2"), unit);
  REQUIRE(info.S);
  REQUIRE(info.S1);
  REQUIRE(info.gamma1);
  REQUIRE(info.Gamma1);
  REQUIRE(info.gamma2);
  REQUIRE(info.Gamma2);
  REQUIRE(info.sup_fsecond);
  REQUIRE(info.sigma_fprime);
  REQUIRE(info.sigma_fsecond);
  CHECK(info.S->origin == Provenance::exact);
  CHECK(info.S1->origin == Provenance::exact);
  CHECK(info.gamma1->origin == Provenance::sampled);
  CHECK(info.sigma_fprime->origin == Provenance::sampled);
  CHECK(info.sup_fsecond->value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(info.warnings.empty());
}

TEST_CASE("overrides enable bounds and carry rigor") {
  const Interval unit(0.0, 1.0);
  Overrides ov;
  ov.gamma1 = 0.5;
  const auto info = build_info(optiquad::expr::parse("sqrt(t)"), unit, ov);
  REQUIRE(info.gamma1);
  CHECK(info.gamma1->origin == Provenance::user_supplied);
  CHECK_FALSE(info.Gamma1);
  CHECK_FALSE(info.sigma_fprime);  // divergent L2
  REQUIRE(info.S);

  const auto bounds_list = optiquad::bounds::best_bounds(info, unit);
  REQUIRE(bounds_list.size() == 1);
  CHECK(bounds_list[0].tag == optiquad::bounds::TheoremTag::first_lower);
  CHECK(bounds_list[0].rigorous);
}

TEST_CASE("inconsistent override produces a warning, not an error") {
  const Interval unit(0.0, 1.0);
  Overrides ov;
  ov.gamma1 = 5.0;  // above the secant S = 1 of t^2
  const auto info = build_info(optiquad::expr::parse("t^2"), unit, ov);
  REQUIRE(info.gamma1);
  CHECK(info.gamma1->value == 5.0);
  CHECK(!info.warnings.empty());
}

TEST_CASE("user L2 override yields a rigorous dispersion") {
  const Interval unit(0.0, 1.0);
  Overrides ov;
  ov.l2_fprime = std::sqrt(4.0 / 3.0);
  const auto info = build_info(optiquad::expr::parse("t^2"), unit, ov);
  REQUIRE(info.sigma_fprime);
  CHECK(info.sigma_fprime->origin == Provenance::user_supplied);
  CHECK(info.sigma_fprime->value ==
        doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("absence propagation into best_bounds") {
  const Interval unit(0.0, 1.0);
  const auto info =
      build_info(optiquad::expr::parse("cbrt(sin(t^2))"), unit);
  const auto list = optiquad::bounds::best_bounds(info, unit);
  bool has_gruss_first = false;
  for (const auto& b : list) {
    CHECK(b.tag != optiquad::bounds::TheoremTag::first_range);
    CHECK(b.tag != optiquad::bounds::TheoremTag::first_lower);
    CHECK(b.tag != optiquad::bounds::TheoremTag::first_upper);
    if (b.tag == optiquad::bounds::TheoremTag::gruss_first)
      has_gruss_first = true;
  }
  CHECK(has_gruss_first);
}

TEST_CASE("sampled ranges and norms vs closed form, low-degree polynomials") {
  std::mt19937 rng(112358);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  const Interval unit(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    std::vector<double> coeffs(5);
    for (double& x : coeffs) x = coeff(rng);
    const optiquad::Polynomial p(coeffs);
    const optiquad::Polynomial dp = p.derivative();

    std::string src = optiquad::testing::fmt_num(coeffs[0]);
    for (int d = 1; d <= 4; ++d)
      src += " + " + optiquad::testing::fmt_num(coeffs[static_cast<std::size_t>(d)]) +
             "*t^" + std::to_string(d);
    const auto ast = optiquad::expr::parse(src);

    // Closed-form extrema of f' from a dense direct evaluation of the
    // derivative polynomial (independent of the jet machinery).
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 1000000; ++i) {
      const double v = dp(static_cast<double>(i) / 1000000.0);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const auto range = sample_range(ast, 1, unit);
    REQUIRE(range);
    CHECK(std::abs(range->first - lo) <= 1e-6);
    CHECK(std::abs(range->second - hi) <= 1e-6);

    const double l2_exact = std::sqrt((dp * dp).integral(0.0, 1.0));
    const auto l2 = l2_norm(ast, 1, unit);
    REQUIRE(l2);
    CHECK(std::abs(*l2 - l2_exact) <= 1e-9);
  }
}

TEST_CASE("grid override via SamplingConfig") {
  const Interval unit(0.0, 1.0);
  SamplingConfig cfg;
  cfg.points_per_unit = 101;
  cfg.min_points = 11;
  const auto r = sample_range(optiquad::expr::parse("t^2"), 1, unit, cfg);
  REQUIRE(r);
  CHECK(r->second == doctest::Approx(2.0).epsilon(1e-10));
}

}  // TEST_SUITE
