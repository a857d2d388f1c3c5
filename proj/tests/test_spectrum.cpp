#include <doctest.h>

#include <cmath>

#include "bem2d.hpp"
#include "error.hpp"
#include "oracles.hpp"
#include "spectrum2d.hpp"

using namespace plasmon;
using doctest::Approx;

namespace {

// Ellipse with tanh(xi0) = 1/2: tanh(k xi0) = (3^k - 1) / (3^k + 1) and its reciprocal.
const double kEllipseFrozen[10] = {1.0 / 2, 4.0 / 5, 13.0 / 14, 40.0 / 41, 121.0 / 122,
                                   122.0 / 121, 41.0 / 40, 14.0 / 13, 5.0 / 4, 2.0};

}  // namespace

TEST_SUITE("spectrum2d") {
  TEST_CASE("elliptic oracle matches the frozen closed form") {
    const auto ref = oracle::farthest_from_one(oracle::ellipse_eigenvalues(2.0, 1.0, 20), 10);
    for (int i = 0; i < 10; ++i) CHECK(ref[i] == Approx(kEllipseFrozen[i]).epsilon(1e-15));
  }

  TEST_CASE("ellipse spectrum by both routes") {
    const auto s = curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 96);
    const auto dtn = spectrum::solve_plasmonic(bem::build_dtn(s), 10);
    const auto np = spectrum::np_route(bem::assemble_np_adjoint(s), 10);
    for (int i = 0; i < 10; ++i) {
      CHECK(std::abs(dtn.eigenvalues[i] - kEllipseFrozen[i]) < 1e-10);
      CHECK(std::abs(np.eigenvalues[i] - kEllipseFrozen[i]) < 1e-10);
      CHECK(dtn.residuals[i] < 1e-9);
    }
  }

  TEST_CASE("eigenvalues are invariant under scaling") {
    const auto c = curve::CurveParam::ellipse(2.0, 1.0);
    const auto a = spectrum::solve_plasmonic(bem::build_dtn(curve::sample_curve(c, 64)), 6);
    const auto b = spectrum::solve_plasmonic(bem::build_dtn(curve::sample_curve(c.scaled(2.0), 64)), 6);
    for (int i = 0; i < 6; ++i) CHECK(a.eigenvalues[i] == Approx(b.eigenvalues[i]).epsilon(1e-11));
  }

  TEST_CASE("eigenfunctions are normalized and orthogonal") {
    const auto dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 64));
    const auto sp = spectrum::solve_plasmonic(dtn, 4);
    for (int i = 0; i < 4; ++i) {
      const Eigen::VectorXd gi = sp.eigenfunctions.col(i);
      CHECK(bem::inner(gi, dtn.n_minus.apply(gi), dtn.weights()) == Approx(1.0).epsilon(1e-10));
      CHECK(spectrum::rayleigh(gi, dtn) == Approx(sp.eigenvalues[i]).epsilon(1e-10));
      for (int j = i + 1; j < 4; ++j) {
        CHECK(std::abs(spectrum::plus_product(gi, sp.eigenfunctions.col(j), dtn)) < 1e-10);
      }
    }
  }

  TEST_CASE("domain errors") {
    const auto dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 16));
    CHECK_THROWS_AS(spectrum::solve_plasmonic(dtn, 9), Error);
    CHECK_THROWS_AS(spectrum::solve_plasmonic(dtn, 0), Error);
    try {
      const auto fine = bem::build_dtn(curve::sample_curve(curve::CurveParam::ellipse(2.0, 1.0), 64));
      spectrum::rayleigh(Eigen::VectorXd::Ones(64), fine);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EInfinity);
    }
    CHECK_THROWS_AS(spectrum::eps_from_np(0.5), Error);
    CHECK(spectrum::eps_from_np(0.25) == Approx(3.0));
  }

  TEST_CASE("clustering statistics") {
    std::vector<double> d(60);
    for (int i = 0; i < 60; ++i) d[i] = 1.0 + std::pow(0.5, i);
    const auto c = spectrum::clustering_stats(d, 20, 20);
    CHECK(c.tail_max == Approx(std::pow(0.5, 20)));
    CHECK(c.window_max.size() == 2);
  }
}
