#pragma once

#include <Eigen/Core>
#include <vector>

#include "bem2d.hpp"
#include "curve2d.hpp"
#include "spectrum2d.hpp"

namespace plasmon::perturb {

/// First-order eigenvalue derivative of a plane plasmon under the normal shift by a:
/// (eps + 1) \oint a [-(d_s g)^2 + eps (N- g)^2] ds for <g, N- g> = 1.
double epsdot_2d(const bem::DtNPair& dtn, double eps, const Eigen::VectorXd& g, const curve::ShapeFn2D& a);

/// q1(g_i, g_j) on the columns of `g`.
Eigen::MatrixXd q1_form_2d(const bem::DtNPair& dtn, double eps, const Eigen::MatrixXd& g, const curve::ShapeFn2D& a);

/// epsdot_2d for eigenpair `index` of `full` after checking the preconditions: eps != 1 and,
/// when the eigenvalue is repeated, g must diagonalize q1 on the eigenspace.
double epsdot_2d_checked(const bem::DtNPair& dtn, const spectrum::FullSpectrum& full, int index,
                         const curve::ShapeFn2D& a);

/// Central finite differences of a tracked eigenvalue on re-solved perturbed curves.
struct EpsdotFdReport {
  double epsilon = 0.0;
  double epsdot = 0.0;
  std::vector<double> h_list;
  std::vector<double> central;  // (eps(h) - eps(-h)) / 2h
  std::vector<double> errors;   // |central - epsdot|
  double slope = 0.0;           // least-squares log-log slope of errors against h
  double richardson = 0.0;      // (4 D(h_min) - D(2 h_min)) / 3 from the two smallest steps
  double richardson_error = 0.0;
  double min_overlap = 1.0;     // weakest eigenvector overlap used for tracking
};

/// `index` selects the eigenpair in the ascending list of the `num` plasmonic
/// eigenvalues farthest from 1. h sweeps run on up to `threads` threads.
EpsdotFdReport validate_epsdot_2d(const curve::CurveParam& curve, const curve::ShapeFn2D& a, int n, int num, int index,
                                  const std::vector<double>& h_list, int threads = 1);

/// log-log least-squares slope.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace plasmon::perturb
