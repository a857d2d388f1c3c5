#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

#include "sphere3d.hpp"

namespace plasmon::perturb {

/// First-order splitting of the degree-k eigenspace of the unit ball under the
/// normal shift by a. Basis functions are u_m = Y_{k,m} / sqrt(k), m = -k..k, which
/// are orthonormal for <u, d_n u>.
struct FirstOrderReport {
  int k = 0;
  double epsilon = 0.0;
  int dimension = 0;
  Eigen::MatrixXd q1;        // q1(u_i, u_j)
  Eigen::VectorXd epsdot;    // branch values, ascending
  Eigen::MatrixXd basis;     // column i: coefficients of branch i in {u_m}
  double symmetry_residual = 0.0;
  double orthonormality_residual = 0.0;

  /// Boundary trace of branch i as an SH field of band limit k.
  sphere::SHField branch_trace(int i) const;
  /// Branch with the largest weight on Y_{k,m}.
  int branch_along(int m) const;
};

FirstOrderReport q1_matrix(int k, const sphere::SHField& a);

/// q1(u_i, u_j) for an arbitrary list of degree-k boundary traces.
Eigen::MatrixXd q1_form(int k, const std::vector<sphere::SHField>& traces, const sphere::SHField& a);

/// Boundary traces of u-dot inside (phi) and outside (psi) in the gauge where the
/// degree-k (eigenspace) component of phi vanishes.
struct UdotSolution {
  sphere::SHField phi;
  sphere::SHField psi;
  sphere::SHField F1;       // -(eps + 1) a d_n u
  sphere::SHField G;        // -epsdot d_n u + (eps + 1) div(a grad u)
  const char* gauge = "zeroE";
  double compatibility_residual = 0.0;
  double system_residual = 0.0;
};

/// Threshold on the eigenspace compatibility residual above which the branch is
/// rejected as not diagonalizing q1.
inline constexpr double kCompatibilityTolerance = 1e-8;

UdotSolution solve_udot(int k, const sphere::SHField& u, const sphere::SHField& a, double epsdot);
UdotSolution solve_udot(const FirstOrderReport& first, int branch, const sphere::SHField& a);

struct SecondOrderReport {
  double epsddot = 0.0;
  std::array<double, 6> lines{};  // the six inner products; epsddot = 2 * sum
  double gauge_residual = 0.0;
};

/// Second derivative of the branch eigenvalue. `gauge_seed` drives the random
/// eigenspace element added to u-dot for the gauge-independence probe.
SecondOrderReport epsddot(int k, const sphere::SHField& u, const sphere::SHField& a, double epsdot,
                          const UdotSolution& udot, std::uint64_t gauge_seed = 0);

/// Six-line sum for a given u-dot trace, without the gauge probe.
std::array<double, 6> epsddot_lines(int k, const sphere::SHField& u, const sphere::SHField& a, double epsdot,
                                    const sphere::SHField& phi);

struct BranchReport {
  double epsilon = 0.0;
  double epsdot = 0.0;
  double epsddot = 0.0;
  Eigen::VectorXd basis;
  std::array<double, 6> lines{};
  double compatibility_residual = 0.0;
  double system_residual = 0.0;
  double gauge_residual = 0.0;
};

struct PerturbReport {
  FirstOrderReport first;
  std::vector<BranchReport> branches;
};

PerturbReport sphere_perturbation(int k, const sphere::SHField& a, std::uint64_t seed = 0);

}  // namespace plasmon::perturb
