#include <doctest.h>

#include <cmath>

#include "dtn_shape.hpp"
#include "error.hpp"
#include "perturb2d.hpp"

using namespace plasmon;
using doctest::Approx;

TEST_SUITE("perturb2d") {
  TEST_CASE("dilation does not move ellipse eigenvalues") {
    // The dilation field x.n = ab / |x'(t)| on the ellipse (2 cos t, sin t).
    const auto ellipse = curve::CurveParam::ellipse(2.0, 1.0);
    const auto fine = curve::sample_curve(ellipse, 512);
    const TrigSeries a = TrigSeries::fit(2.0 * fine.speed.cwiseInverse(), 1e-15);
    const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(ellipse, 96));
    const spectrum::FullSpectrum full = spectrum::solve_all(dtn);
    for (int j = 0; j < 6; ++j) {
      CHECK(std::abs(perturb::epsdot_2d(dtn, full.eigenvalues[j], full.eigenfunctions.col(j), a)) < 1e-9);
    }
  }

  TEST_CASE("constant shift of an ellipse is not a dilation") {
    const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 96));
    const spectrum::FullSpectrum full = spectrum::solve_all(dtn);
    CHECK(std::abs(perturb::epsdot_2d(dtn, full.eigenvalues[0], full.eigenfunctions.col(0), TrigSeries::constant(1.0))) >
          1e-3);
  }

  TEST_CASE("first-order formula is undefined at eps = 1") {
    const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::circle(1.0), 32));
    CHECK_THROWS_AS(perturb::epsdot_2d(dtn, 1.0, periodic::mode(32, 2), TrigSeries({0, 0, 1}, {})), Error);
  }

  TEST_CASE("central differences converge at second order") {
    const auto r = perturb::validate_epsdot_2d(curve::CurveParam::ellipse(2.0, 1.0), TrigSeries({0, 0, 1}, {}), 64, 4,
                                               3, {0.04, 0.02, 0.01}, 2);
    CHECK(r.slope == Approx(2.0).epsilon(0.1));
    CHECK(r.richardson_error < 1e-6);
    CHECK(r.min_overlap > 0.99);
  }

  TEST_CASE("log-log slope") {
    CHECK(perturb::loglog_slope({1, 2, 4}, {3, 12, 48}) == Approx(2.0));
  }
}

TEST_SUITE("dtn_shape") {
  TEST_CASE("circle multiplier oracle") {
    CHECK(dtn_shape::circle_oracle_error(64, 16, dtn_shape::Side::Interior) < 1e-9);
    CHECK(dtn_shape::circle_oracle_error(64, 16, dtn_shape::Side::Exterior) < 1e-9);
  }

  TEST_CASE("zero shift has zero derivative") {
    const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 48));
    CHECK(dtn_shape::shape_derivative_matrix(TrigSeries::constant(0.0), dtn).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("derivative is first order in the mode number") {
    const TrigSeries a({1.0, 0.3, 0.2}, {0.1});
    CHECK(dtn_shape::principal_order_slope(a, 256, {4, 8, 16, 32}) == Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("operator finite differences on a band") {
    const TrigSeries a({0.2, 0.0, 1.0}, {0.0, 0.0, 0.3});
    for (auto side : {dtn_shape::Side::Interior, dtn_shape::Side::Exterior}) {
      const auto r = dtn_shape::operator_fd_test(curve::CurveParam::ellipse(2.0, 1.0), a, 64, {0.02, 0.01, 0.005},
                                                 side, 0, 2);
      CHECK(r.slope_central >= 1.8);
      CHECK(r.slope_one_sided == Approx(1.0).epsilon(0.15));
    }
  }
}
