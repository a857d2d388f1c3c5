#include "bem2d.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace plasmon::bem {
namespace {

constexpr double kPi = std::numbers::pi;

// Weights R(d) of the quadrature \int_0^{2pi} log(4 sin^2((t_i - tau)/2)) f(tau) dtau
// ~= sum_j R(i - j) f(t_j) on n = 2m uniform nodes, exact for trigonometric
// polynomials of degree < m.
Eigen::VectorXd log_weights(int n) {
  const int m = n / 2;
  Eigen::VectorXd r(n);
  for (int d = 0; d < n; ++d) {
    const double td = kPi * d / m;
    double sum = 0.0;
    for (int k = 1; k < m; ++k) sum += std::cos(k * td) / k;
    r[d] = -2.0 * kPi / m * sum - kPi / (static_cast<double>(m) * m) * std::cos(m * td);
  }
  return r;
}

BoundaryOperator single_layer_raw(const curve::CurveSample& s) {
  const int n = s.n;
  const Eigen::VectorXd r = log_weights(n);
  BoundaryOperator op;
  op.weights = s.weights;
  op.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int d = (i - j + n) % n;
      double smooth;
      if (i == j) {
        smooth = std::log(s.speed[i]);
      } else {
        const double dist = (s.node(i) - s.node(j)).norm();
        const double chord = std::abs(2.0 * std::sin(0.5 * (s.t[i] - s.t[j])));
        smooth = std::log(dist) - std::log(chord);
      }
      // (1/4pi) s_j log(4 sin^2) handled by R, remainder by the trapezoid rule.
      op.matrix(i, j) = r[d] * s.speed[j] / (4.0 * kPi) + s.speed[j] * smooth / n;
    }
  }
  return op;
}

curve::CurveSample scale_sample(const curve::CurveSample& s, double factor) {
  curve::CurveSample out = s;
  out.nodes *= factor;
  out.speed *= factor;
  out.weights *= factor;
  out.curvature /= factor;
  return out;
}

Eigen::MatrixXd zero_charge_solution_operator(const BoundaryOperator& single_layer) {
  // [S 1; w^T 0] [phi; c] = [g; 0]; returns the map g -> phi.
  const auto n = single_layer.size();
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = single_layer.matrix;
  aug.topRightCorner(n, 1).setOnes();
  aug.bottomLeftCorner(1, n) = single_layer.weights.transpose();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(aug);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + 1, n);
  rhs.topRows(n).setIdentity();
  const Eigen::MatrixXd sol = lu.solve(rhs);
  if (!sol.allFinite()) {
    throw Error(ErrorKind::Numerical, "bem2d", "build_dtn", "bordered single layer system is singular");
  }
  return sol.topRows(n);
}

}  // namespace

double inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g, const Eigen::VectorXd& w) {
  return (f.array() * g.array() * w.array()).sum();
}

double weighted_asymmetry(const BoundaryOperator& op) {
  const Eigen::MatrixXd adj =
      op.weights.cwiseInverse().asDiagonal() * op.matrix.transpose() * op.weights.asDiagonal();
  return (op.matrix - adj).norm() / op.matrix.norm();
}

double single_layer_conditioning(const BoundaryOperator& op) {
  const Eigen::VectorXd sq = op.weights.cwiseSqrt();
  Eigen::MatrixXd sym = sq.asDiagonal() * op.matrix * sq.cwiseInverse().asDiagonal();
  sym = 0.5 * (sym + sym.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseAbs();
  return ev.minCoeff() / ev.maxCoeff();
}

BoundaryOperator assemble_single_layer(const curve::CurveSample& sample) {
  BoundaryOperator op = single_layer_raw(sample);
  const double cond = single_layer_conditioning(op);
  if (!(cond >= kCapacityTolerance)) {
    throw Error(ErrorKind::RescaleRequired, "bem2d", "assemble_single_layer",
                "single layer operator is singular (logarithmic capacity one); rescale the curve");
  }
  return op;
}

BoundaryOperator assemble_np_adjoint(const curve::CurveSample& s) {
  const int n = s.n;
  BoundaryOperator op;
  op.weights = s.weights;
  op.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const curve::Vec2 xi = s.node(i), ni = s.normal(i);
    for (int j = 0; j < n; ++j) {
      double kernel;
      if (i == j) {
        // Limit (x - y).n(x)/|x - y|^2 -> half the convex-positive curvature.
        kernel = -0.5 * s.curvature[i];
      } else {
        const curve::Vec2 d = xi - s.node(j);
        kernel = d.dot(ni) / d.squaredNorm();
      }
      op.matrix(i, j) = kernel / (2.0 * kPi) * s.weights[j];
    }
  }
  return op;
}

DtNPair build_dtn(const curve::CurveSample& sample) {
  DtNPair dtn;
  dtn.sample = sample;
  dtn.scale = 1.0;
  dtn.working = sample;
  try {
    dtn.single_layer = assemble_single_layer(dtn.working);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RescaleRequired) throw;
    dtn.scale = kRescaleFactor;
    dtn.working = scale_sample(sample, dtn.scale);
    try {
      dtn.single_layer = assemble_single_layer(dtn.working);
    } catch (const Error&) {
      throw Error(ErrorKind::RescaleRequired, "bem2d", "build_dtn",
                  "single layer operator stays singular after rescaling");
    }
  }
  dtn.np_adjoint = assemble_np_adjoint(dtn.working);

  const auto n = sample.n;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd& kstar = dtn.np_adjoint.matrix;

  // N- = (K* - 1/2) S^{-1}: solve S^T X^T = (K* - 1/2)^T.
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(dtn.single_layer.matrix.transpose());
  const Eigen::MatrixXd nminus = lu.solve((kstar - 0.5 * id).transpose()).transpose();
  // N+ = (K* + 1/2) Z where Z maps data to the zero-charge density of the bounded extension.
  const Eigen::MatrixXd nplus = (kstar + 0.5 * id) * zero_charge_solution_operator(dtn.single_layer);
  if (!nminus.allFinite() || !nplus.allFinite()) {
    throw Error(ErrorKind::Numerical, "bem2d", "build_dtn", "single layer factorization failed");
  }
  // The DtN maps scale like 1/length.
  dtn.n_minus = {dtn.scale * nminus, sample.weights};
  dtn.n_plus = {dtn.scale * nplus, sample.weights};
  return dtn;
}

Eigen::VectorXd compute_g0(const DtNPair& dtn, std::optional<curve::Vec2> interior_point) {
  const curve::Vec2 y0 = interior_point.value_or(curve::centroid(dtn.sample));
  if (!curve::contains(dtn.sample, y0)) {
    throw Error(ErrorKind::Input, "bem2d", "compute_g0", "base point is not inside the curve");
  }
  const curve::CurveSample& w = dtn.working;
  const curve::Vec2 yw = dtn.scale * y0;
  const int n = w.n;
  Eigen::VectorXd boundary_values(n), newton_flux(n);
  for (int i = 0; i < n; ++i) {
    const curve::Vec2 d = w.node(i) - yw;
    boundary_values[i] = std::log(d.norm()) / (2.0 * kPi);
    newton_flux[i] = d.dot(w.normal(i)) / (d.squaredNorm() * 2.0 * kPi);
  }
  const Eigen::MatrixXd zero_charge = zero_charge_solution_operator(dtn.single_layer);
  const Eigen::VectorXd phi = zero_charge * boundary_values;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd exterior_flux = (dtn.np_adjoint.matrix + 0.5 * id) * phi;
  Eigen::VectorXd g0 = dtn.scale * (newton_flux - exterior_flux);
  return g0 / g0.dot(dtn.sample.weights);
}

double far_field_log_coefficient(const DtNPair& dtn, const Eigen::VectorXd& g) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(dtn.single_layer.matrix);
  const Eigen::VectorXd phi = lu.solve(g);
  return phi.dot(dtn.working.weights);
}

}  // namespace plasmon::bem
