#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

#include "curve2d.hpp"

namespace plasmon::bem {

/// Dense operator on node values together with the quadrature weights that define
/// the discrete inner product <g, g'> = sum_i g_i g'_i w_i.
struct BoundaryOperator {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return matrix.rows(); }
  Eigen::VectorXd apply(const Eigen::VectorXd& g) const { return matrix * g; }
};

double inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g, const Eigen::VectorXd& weights);

/// ||A - A^T_w|| / ||A|| in Frobenius norm, where A^T_w = W^{-1} A^T W is the adjoint
/// with respect to the weighted inner product.
double weighted_asymmetry(const BoundaryOperator& op);

/// (S phi)(x) = (1/2pi) \oint log|x - y| phi(y) ds(y), assembled with the periodic
/// logarithmic-splitting quadrature. Throws RescaleRequired when the curve has
/// logarithmic capacity (numerically) one.
BoundaryOperator assemble_single_layer(const curve::CurveSample& sample);

/// Smallest |eigenvalue| of S relative to the largest; 0 for the unit circle.
double single_layer_conditioning(const BoundaryOperator& single_layer);

/// (K* phi)(x) = (1/2pi) \oint (x - y).n(x) / |x - y|^2 phi(y) ds(y). \oint K* phi ds = (1/2) \oint phi ds.
BoundaryOperator assemble_np_adjoint(const curve::CurveSample& sample);

/// Interior and exterior Dirichlet-to-Neumann operators on the node values of
/// `sample`. The exterior operator is the one for bounded exterior extensions, so
/// both annihilate constants.
struct DtNPair {
  BoundaryOperator n_minus;
  BoundaryOperator n_plus;
  curve::CurveSample sample;

  // Layer operators on the (possibly rescaled) working curve.
  double scale = 1.0;  // working curve = scale * original curve
  curve::CurveSample working;
  BoundaryOperator single_layer;
  BoundaryOperator np_adjoint;

  Eigen::Index size() const { return n_minus.size(); }
  const Eigen::VectorXd& weights() const { return sample.weights; }
};

/// Threshold on single_layer_conditioning below which the curve is rescaled.
inline constexpr double kCapacityTolerance = 1e-6;
/// Scale factor applied when the single layer operator is degenerate.
inline constexpr double kRescaleFactor = 2.0;

DtNPair build_dtn(const curve::CurveSample& sample);

/// g0 = d_nu v where v is harmonic outside the curve, vanishes on it and grows like
/// (1/2pi) log|x|. Built from the Newton potential centred at `interior_point`
/// (default: area centroid) minus its bounded exterior harmonic extension.
Eigen::VectorXd compute_g0(const DtNPair& dtn, std::optional<curve::Vec2> interior_point = std::nullopt);

/// Exterior single-layer representation u = S phi of boundary data g. Returns the
/// total charge \oint phi ds, i.e. the coefficient of (1/2pi) log|x| at infinity.
double far_field_log_coefficient(const DtNPair& dtn, const Eigen::VectorXd& g);

}  // namespace plasmon::bem
