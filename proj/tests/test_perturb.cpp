#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "oracles.hpp"
#include "perturb.hpp"

using namespace plasmon;
using doctest::Approx;

namespace {

constexpr double kPi = sphere::SphereGrid::kPi;

// Zonal field from values f(cos theta).
template <class F>
sphere::SHField zonal(int L, F f) {
  const sphere::SphereGrid grid = sphere::SphereGrid::for_band_limit(L);
  Eigen::MatrixXd v(grid.n_theta(), grid.n_phi());
  for (int i = 0; i < grid.n_theta(); ++i) v.row(i).setConstant(f(grid.cos_theta()[i]));
  return grid.analysis(v, L);
}

}  // namespace

TEST_SUITE("perturb") {
  TEST_CASE("constant shift leaves the ball spectrum unchanged") {
    for (int k = 1; k <= 3; ++k) {
      const perturb::PerturbReport r = perturb::sphere_perturbation(k, sphere::SHField::constant(1.0), 7);
      CHECK(r.first.q1.norm() < 1e-10);
      for (const auto& b : r.branches) {
        CHECK(std::abs(b.epsdot) < 1e-10);
        CHECK(std::abs(b.epsddot) < 1e-8);
      }
    }
  }

  TEST_CASE("Y_{2,0} splits the k = 1 eigenspace into z and a degenerate xy pair") {
    const perturb::FirstOrderReport r = perturb::q1_matrix(1, sphere::SHField::basis(2, 2, 0));
    const double c = std::sqrt(5.0 / (16.0 * kPi));
    const int z = r.branch_along(0);
    CHECK(r.epsdot[z] == Approx(36.0 * c / 5.0).epsilon(1e-12));
    for (int i = 0; i < 3; ++i) {
      if (i != z) CHECK(r.epsdot[i] == Approx(-18.0 * c / 5.0).epsilon(1e-12));
    }
    CHECK(r.symmetry_residual < 1e-12);
    CHECK(r.orthonormality_residual < 1e-12);
  }

  TEST_CASE("prolate spheroid second derivative") {
    // Semi-axes (1, 1, 1 + h) have radius 1 + h z^2 + h^2 b with b = 3/2 (z^4 - z^2). Along
    // the axis the depolarization factor gives eps(h) = 1/L - 1 with eps'(0) = 12/5 and
    // eps''(0) = 132/175. The normal-shift family by a = z^2 differs at second order by the
    // shift b, which contributes 2 epsdot[b].
    const sphere::SHField a = zonal(2, [](double z) { return z * z; });
    const sphere::SHField b = zonal(4, [](double z) { return 1.5 * (z * z * z * z - z * z); });
    const perturb::PerturbReport ra = perturb::sphere_perturbation(1, a, 3);
    const perturb::FirstOrderReport rb = perturb::q1_matrix(1, b);
    const int za = ra.first.branch_along(0), zb = rb.branch_along(0);
    CHECK(ra.branches[za].epsdot == Approx(12.0 / 5.0).epsilon(1e-12));
    CHECK(ra.branches[za].epsddot + 2.0 * rb.epsdot[zb] == Approx(132.0 / 175.0).epsilon(1e-10));
  }

  TEST_CASE("the six lines sum to half of epsddot") {
    const perturb::PerturbReport r = perturb::sphere_perturbation(2, sphere::SHField::basis(3, 3, 1), 5);
    for (const auto& b : r.branches) {
      double sum = 0.0;
      for (double x : b.lines) sum += x;
      CHECK(b.epsddot == Approx(2.0 * sum).epsilon(1e-13));
      CHECK(b.gauge_residual < 1e-10);
      CHECK(b.compatibility_residual < 1e-8);
    }
  }

  TEST_CASE("non-diagonalizing trace is rejected") {
    const sphere::SHField a = sphere::SHField::basis(2, 2, 0);
    const perturb::FirstOrderReport r = perturb::q1_matrix(1, a);
    // Mix the z branch with an xy branch: not an eigenvector of q1.
    const int z = r.branch_along(0), xy = (z + 1) % 3;
    sphere::SHField u(1);
    u.coeffs = (r.branch_trace(z).coeffs + r.branch_trace(xy).coeffs) / std::sqrt(2.0);
    try {
      perturb::solve_udot(1, u, a, r.epsdot[z]);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Splitting);
    }
  }

  TEST_CASE("gauge probe is seed independent in value") {
    const sphere::SHField a = sphere::SHField::basis(2, 2, 1);
    const auto r1 = perturb::sphere_perturbation(1, a, 1);
    const auto r2 = perturb::sphere_perturbation(1, a, 99);
    for (std::size_t i = 0; i < r1.branches.size(); ++i) {
      CHECK(r1.branches[i].epsddot == Approx(r2.branches[i].epsddot).epsilon(1e-12));
    }
  }

  TEST_CASE("disk integral oracle") {
    // A = 2 z^2 = 2 (1 - rho^2) integrates to -12/5 in closed form; constants integrate to 0.
    CHECK(oracle::ball_disk_integral([](double, double, double z) { return z * z; }) ==
          Approx(-12.0 / 5.0).epsilon(1e-12));
    CHECK(std::abs(oracle::ball_disk_integral([](double, double, double) { return 1.0; })) < 1e-12);
  }

  TEST_CASE("degree zero is the eps = infinity space") {
    CHECK_THROWS_AS(perturb::q1_matrix(0, sphere::SHField::constant(1.0)), Error);
  }
}
