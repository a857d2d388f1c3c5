#pragma once

#include <Eigen/Core>
#include <vector>

#include "bem2d.hpp"
#include "curve2d.hpp"

namespace plasmon::dtn_shape {

enum class Side { Interior, Exterior };

/// Shape derivative of the DtN operator N (N- or N+) under x -> x + h a(x) n(x):
///   N' g = -d_s(a d_s g) + kappa a N g - N(a N g).
Eigen::VectorXd shape_derivative_apply(const Eigen::VectorXd& g, const curve::ShapeFn2D& a, const bem::DtNPair& dtn,
                                       Side side = Side::Interior);

/// Dense matrix of the shape derivative on node values.
Eigen::MatrixXd shape_derivative_matrix(const curve::ShapeFn2D& a, const bem::DtNPair& dtn, Side side = Side::Interior);

/// DtN operator of the shifted curve pulled back to the base nodes.
struct TransplantedDtN {
  double h = 0.0;
  Eigen::MatrixXd matrix;
  Eigen::VectorXd base_weights;
};

TransplantedDtN transplanted_dtn(const curve::CurveParam& curve, const curve::ShapeFn2D& a, double h, int n,
                                 Side side = Side::Interior);

struct OperatorFdReport {
  std::vector<double> h_list;
  std::vector<double> one_sided_errors;  // ||(N_h - N_0)/h - N'||
  std::vector<double> central_errors;    // ||(N_h - N_{-h})/2h - N'||
  double slope_one_sided = 0.0;
  double slope_central = 0.0;
  int band = 0;                          // highest Fourier mode of the test subspace
};

/// Weighted operator-norm errors of transplanted differences on the subspace of
/// Fourier modes |l| <= band (default n / 8).
OperatorFdReport operator_fd_test(const curve::CurveParam& curve, const curve::ShapeFn2D& a, int n,
                                  const std::vector<double>& h_list, Side side = Side::Interior, int band = 0,
                                  int threads = 1);

/// Largest deviation of N' g_l from the exact multiplier on the circle of radius 1
/// with a = 1 (-|l| inside, +|l| outside), over modes |l| <= lmax.
double circle_oracle_error(int n, int lmax, Side side);

/// Log-log slope of ||N' e_l|| over the given modes on the unit circle for shape `a`.
double principal_order_slope(const curve::ShapeFn2D& a, int n, const std::vector<int>& modes);

}  // namespace plasmon::dtn_shape
