#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curve2d.hpp"
#include "error.hpp"

using namespace plasmon;
using doctest::Approx;

TEST_SUITE("curve2d") {
  TEST_CASE("trig series fit reproduces a band-limited function") {
    const TrigSeries f({0.5, 0.2, 0.0, -0.1}, {0.3, 0.05});
    const TrigSeries g = TrigSeries::fit(f.sample(32), 1e-14);
    CHECK(g.degree() == 3);
    for (double t : {0.1, 1.3, 4.0}) CHECK(g.eval(t) == Approx(f.eval(t)).epsilon(1e-13));
    CHECK(f.eval(0.7, 1) == Approx(-0.2 * std::sin(0.7) + 0.3 * std::sin(3 * 0.7) + 0.3 * std::cos(0.7) +
                                   0.1 * std::cos(2 * 0.7))
                                .epsilon(1e-13));
  }

  TEST_CASE("circle sample") {
    const curve::CurveSample s = curve::sample_curve(curve::CurveParam::circle(2.0), 64);
    CHECK(s.perimeter() == Approx(4.0 * std::numbers::pi).epsilon(1e-14));
    CHECK(s.curvature.maxCoeff() == Approx(-0.5).epsilon(1e-13));
    CHECK(s.curvature.minCoeff() == Approx(-0.5).epsilon(1e-13));
    // Outward normal at t = 0 is +x.
    CHECK(s.normal(0).x() == Approx(1.0));
  }

  TEST_CASE("ellipse perimeter") {
    const curve::CurveSample s = curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 128);
    CHECK(s.perimeter() == Approx(9.688448220547675).epsilon(1e-13));
  }

  TEST_CASE("sample size must be even and at least four") {
    const auto c = curve::CurveParam::circle(1.0);
    CHECK_THROWS_AS(curve::sample_curve(c, 7), Error);
    CHECK_THROWS_AS(curve::sample_curve(c, 2), Error);
  }

  TEST_CASE("invalid curves are rejected") {
    CHECK_THROWS_AS(curve::CurveParam::circle(-1.0), Error);
    CHECK_THROWS_AS(curve::CurveParam::ellipse(1.0, 0.0), Error);
    CHECK_THROWS_AS(curve::CurveParam::radial(TrigSeries({0.5, 1.0}, {})), Error);
  }

  TEST_CASE("constant normal shift of a circle grows the radius") {
    const auto c = curve::CurveParam::circle(1.0);
    const auto p = curve::perturb_curve(c, TrigSeries::constant(1.0), 0.25);
    const curve::CurveSample s = curve::sample_curve(p, 32);
    for (int i = 0; i < s.n; ++i) CHECK(s.node(i).norm() == Approx(1.25).epsilon(1e-12));
  }

  TEST_CASE("centroid and containment") {
    const auto s = curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 64);
    CHECK(curve::centroid(s).norm() < 1e-13);
    CHECK(curve::contains(s, curve::Vec2(1.9, 0.0)));
    CHECK_FALSE(curve::contains(s, curve::Vec2(0.0, 1.1)));
  }
}
