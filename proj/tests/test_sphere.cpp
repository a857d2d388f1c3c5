#include <doctest.h>

#include <cmath>
#include <random>

#include "error.hpp"
#include "oracles.hpp"
#include "sphere3d.hpp"

using namespace plasmon;
using doctest::Approx;

namespace {

sphere::SHField random_field(int L, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  sphere::SHField f(L);
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = uni(rng);
  return f;
}

}  // namespace

TEST_SUITE("sphere3d") {
  TEST_CASE("Gauss-Legendre rule") {
    const auto [x, w] = sphere::gauss_legendre(8);
    CHECK(w.sum() == Approx(2.0).epsilon(1e-15));
    // Exact for x^14.
    CHECK(w.dot(x.array().pow(14).matrix()) == Approx(2.0 / 15.0).epsilon(1e-14));
  }

  TEST_CASE("synthesis and analysis round trip with Parseval") {
    const int L = 9;
    const sphere::SHField f = random_field(L, 3);
    const sphere::SphereGrid grid = sphere::SphereGrid::for_band_limit(L);
    const Eigen::MatrixXd v = grid.synthesis(f);
    CHECK((grid.analysis(v, L).coeffs - f.coeffs).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(grid.integrate(v.cwiseProduct(v)) == Approx(f.coeffs.squaredNorm()).epsilon(1e-13));
  }

  TEST_CASE("analysis rejects grids that are too coarse") {
    const sphere::SphereGrid grid(4, 7, 6);
    CHECK_THROWS_AS(grid.analysis(Eigen::MatrixXd::Zero(4, 7), 6), Error);
  }

  TEST_CASE("point evaluation of Y_{1,0} and Y_{1,1}") {
    const double c = std::sqrt(3.0 / (4.0 * sphere::SphereGrid::kPi));
    CHECK(sphere::evaluate(sphere::SHField::basis(1, 1, 0), 0.3, 1.0) == Approx(c * std::cos(0.3)));
    CHECK(sphere::evaluate(sphere::SHField::basis(1, 1, 1), 0.3, 1.0) == Approx(c * std::sin(0.3) * std::cos(1.0)));
  }

  TEST_CASE("divergence of the gradient is the Laplace-Beltrami operator") {
    const int L = 7;
    const sphere::SHField f = random_field(L, 11);
    const sphere::SphereGrid grid = sphere::SphereGrid::for_band_limit(L + 1);
    const sphere::SHField lap = sphere::surface_divergence(grid, sphere::surface_gradient(grid, f), L);
    for (int l = 0; l <= L; ++l) {
      for (int m = -l; m <= l; ++m) CHECK(lap(l, m) == Approx(-l * (l + 1.0) * f(l, m)).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("grid triple products match the Gaunt coefficients") {
    const sphere::SphereGrid grid = sphere::SphereGrid::for_band_limit(6);
    for (auto [l1, l2, l3] : {std::tuple{1, 1, 2}, {2, 2, 2}, {2, 3, 3}, {1, 2, 3}}) {
      const Eigen::MatrixXd p = grid.synthesis(sphere::SHField::basis(3, l1, 0))
                                    .cwiseProduct(grid.synthesis(sphere::SHField::basis(3, l2, 0)))
                                    .cwiseProduct(grid.synthesis(sphere::SHField::basis(3, l3, 0)));
      CHECK(grid.integrate(p) == Approx(oracle::gaunt_zonal(l1, l2, l3)).epsilon(1e-13).scale(1.0));
    }
    CHECK(oracle::gaunt_zonal(1, 1, 2) ==
          Approx(0.4 * std::sqrt(5.0 / (4.0 * sphere::SphereGrid::kPi))).epsilon(1e-14));
  }

  TEST_CASE("ball spectrum") {
    for (int k = 1; k <= 10; ++k) {
      const auto [eps, mult] = sphere::ball_spectrum(k);
      CHECK(eps == (k + 1.0) / k);
      CHECK(mult == 2 * k + 1);
    }
    try {
      sphere::ball_spectrum(0);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EInfinity);
    }
  }

  TEST_CASE("sphere DtN multipliers") {
    const sphere::SHField f = random_field(4, 5);
    const sphere::SHField in = sphere::dtn_sphere_apply(f, sphere::Side::Interior);
    const sphere::SHField out = sphere::dtn_sphere_apply(f, sphere::Side::Exterior);
    CHECK(in(3, -2) == 3.0 * f(3, -2));
    CHECK(out(3, -2) == -4.0 * f(3, -2));
  }
}
