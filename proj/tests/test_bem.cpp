#include <doctest.h>

#include <cmath>

#include "bem2d.hpp"
#include "error.hpp"

using namespace plasmon;
using doctest::Approx;

TEST_SUITE("bem2d") {
  TEST_CASE("K* preserves one half of the total charge") {
    const auto s = curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 96);
    const bem::BoundaryOperator k = bem::assemble_np_adjoint(s);
    // w^T K* = w^T / 2, the transpose of K 1 = 1/2 for the double layer.
    const Eigen::RowVectorXd r = s.weights.transpose() * k.matrix;
    CHECK((r - 0.5 * s.weights.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("single layer on a circle of radius 2 acts on Fourier modes") {
    // S cos(l t) = -R cos(l t) / (2 l) for l >= 1, and S 1 = R log R.
    const double R = 2.0;
    const auto s = curve::sample_curve(curve::CurveParam::circle(R), 64);
    const bem::BoundaryOperator sl = bem::assemble_single_layer(s);
    for (int l : {1, 3, 10}) {
      const Eigen::VectorXd g = periodic::mode(64, l);
      CHECK((sl.apply(g) + R / (2.0 * l) * g).cwiseAbs().maxCoeff() < 1e-12);
    }
    const Eigen::VectorXd c = sl.apply(Eigen::VectorXd::Ones(64));
    CHECK((c.array() - R * std::log(R)).abs().maxCoeff() < 1e-12);
  }

  TEST_CASE("unit circle triggers the capacity rescale") {
    const auto s = curve::sample_curve(curve::CurveParam::circle(1.0), 32);
    CHECK_THROWS_AS(bem::assemble_single_layer(s), Error);
    const bem::DtNPair dtn = bem::build_dtn(s);
    CHECK(dtn.scale == bem::kRescaleFactor);
  }

  TEST_CASE("circle DtN multipliers") {
    const double R = 1.5;
    const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::circle(R), 64));
    for (int l : {-7, -1, 1, 2, 12}) {
      const Eigen::VectorXd g = periodic::mode(64, l);
      CHECK((dtn.n_minus.apply(g) - std::abs(l) / R * g).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((dtn.n_plus.apply(g) + std::abs(l) / R * g).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK(dtn.n_minus.apply(Eigen::VectorXd::Ones(64)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(dtn.n_plus.apply(Eigen::VectorXd::Ones(64)).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("DtN operators are self-adjoint in the weighted product") {
    const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 96));
    CHECK(bem::weighted_asymmetry(dtn.n_minus) < 1e-10);
    CHECK(bem::weighted_asymmetry(dtn.n_plus) < 1e-10);
  }

  TEST_CASE("g0 is constant on a circle and integrates to one") {
    const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::circle(3.0), 64));
    const Eigen::VectorXd g0 = bem::compute_g0(dtn);
    CHECK(g0.maxCoeff() - g0.minCoeff() < 1e-12);
    CHECK(g0.dot(dtn.weights()) == Approx(1.0));
  }

  TEST_CASE("g0 base point must lie inside") {
    const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 64));
    CHECK_THROWS_AS(bem::compute_g0(dtn, curve::Vec2(3.0, 0.0)), Error);
  }
}
