#pragma once

#include <Eigen/Core>
#include <string>
#include <variant>

#include "periodic.hpp"

namespace plasmon::curve {

using Vec2 = Eigen::Vector2d;

struct Circle {
  double radius = 1.0;
};

/// (a cos t, b sin t).
struct Ellipse {
  double semi_axis_a = 1.0;
  double semi_axis_b = 1.0;
};

/// Star-shaped curve r(t) (cos t, sin t) with r a trigonometric polynomial.
struct RadialFourier {
  TrigSeries radius;
};

/// (x(t), y(t)) with both components trigonometric polynomials. Perturbed curves
/// are re-encoded in this form so that the parameter t is carried over.
struct ParametricFourier {
  TrigSeries x;
  TrigSeries y;
};

/// Position and first three parameter derivatives at one parameter value.
struct CurveJet {
  Vec2 x, dx, ddx, dddx;
};

/// Smooth closed, simple, counter-clockwise plane curve. Validated on construction.
class CurveParam {
 public:
  using Kind = std::variant<Circle, Ellipse, RadialFourier, ParametricFourier>;

  static CurveParam circle(double radius);
  static CurveParam ellipse(double a, double b);
  static CurveParam radial(TrigSeries radius);
  static CurveParam parametric(TrigSeries x, TrigSeries y);

  const Kind& kind() const { return kind_; }
  std::string kind_name() const;

  CurveJet jet(double t) const;

  /// Same trace scaled about the origin by `factor`.
  CurveParam scaled(double factor) const;

  /// Canonical JSON-like description used for hashing and result echo.
  std::string describe() const;

 private:
  explicit CurveParam(Kind kind) : kind_(std::move(kind)) {}
  void validate() const;

  Kind kind_;
};

/// Shape function a(t) on the curve parameter.
using ShapeFn2D = TrigSeries;

/// Uniform-parameter discretization. Curvature follows the convention in which the
/// unit circle has curvature -1 (boundary bends away from the outward normal).
struct CurveSample {
  int n = 0;
  Eigen::VectorXd t;
  Eigen::Matrix<double, Eigen::Dynamic, 2> nodes;
  Eigen::Matrix<double, Eigen::Dynamic, 2> tangents;
  Eigen::Matrix<double, Eigen::Dynamic, 2> normals;
  Eigen::VectorXd curvature;
  Eigen::VectorXd speed;
  Eigen::VectorXd weights;  // (2 pi / n) * speed

  double perimeter() const { return weights.sum(); }
  Vec2 node(int i) const { return nodes.row(i).transpose(); }
  Vec2 normal(int i) const { return normals.row(i).transpose(); }
};

CurveSample sample_curve(const CurveParam& curve, int n);

/// Boundary {x + h a(x) n(x)} re-encoded as a parametric Fourier curve on the same
/// parameter, so that node t_j of the result is the image of node t_j of `curve`.
CurveParam perturb_curve(const CurveParam& curve, const ShapeFn2D& a, double h);

/// Area centroid via boundary quadrature.
Vec2 centroid(const CurveSample& sample);

/// Winding-number test against the sampled polygon.
bool contains(const CurveSample& sample, const Vec2& point);

/// Number of points used when re-encoding perturbed curves.
inline constexpr int kReencodePoints = 512;

}  // namespace plasmon::curve
