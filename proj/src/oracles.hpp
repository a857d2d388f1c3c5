#pragma once

// Closed-form and quadrature references used by the acceptance suite. They share no
// code with the boundary-integral or spherical-harmonic solvers.

#include <functional>
#include <vector>

namespace plasmon::oracle {

/// Plasmonic eigenvalues of the ellipse with semi-axes a > b, from separation of
/// variables in elliptic coordinates: coth(k xi0) and tanh(k xi0), tanh xi0 = b / a,
/// for k = 1..kmax.
std::vector<double> ellipse_eigenvalues(double a, double b, int kmax);

/// Neumann-Poincare eigenvalues +-(1/2) ((a - b) / (a + b))^k, k = 1..kmax.
std::vector<double> ellipse_np_eigenvalues(double a, double b, int kmax);

/// The `num` values farthest from 1, ascending.
std::vector<double> farthest_from_one(std::vector<double> values, int num);

/// (9 / 4 pi) \int_{x^2+y^2<1} A(x, y) (3(x^2 + y^2) - 2) / sqrt(1 - x^2 - y^2) dx dy with
/// A(x, y) = a(x, y, z) + a(x, y, -z), z = sqrt(1 - x^2 - y^2). Evaluated in polar
/// coordinates with rho = sin(psi), which removes the edge singularity.
double ball_disk_integral(const std::function<double(double, double, double)>& a, int n_psi = 64, int n_phi = 64);

/// Wigner 3j symbol (l1 l2 l3; 0 0 0).
double wigner3j_000(int l1, int l2, int l3);

/// \int Y_{l1,0} Y_{l2,0} Y_{l3,0} dS.
double gaunt_zonal(int l1, int l2, int l3);

}  // namespace plasmon::oracle
