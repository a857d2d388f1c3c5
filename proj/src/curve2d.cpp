#include "curve2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace plasmon::curve {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// O(M^2) test on a fine polygon; adjacent segments are skipped.
bool polygon_is_simple(const std::vector<Vec2>& pts) {
  const auto m = static_cast<int>(pts.size());
  for (int i = 0; i < m; ++i) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[(i + 1) % m];
    const double minx = std::min(a.x(), b.x()), maxx = std::max(a.x(), b.x());
    const double miny = std::min(a.y(), b.y()), maxy = std::max(a.y(), b.y());
    for (int j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      const Vec2& c = pts[j];
      const Vec2& d = pts[(j + 1) % m];
      if (std::max(c.x(), d.x()) < minx || std::min(c.x(), d.x()) > maxx) continue;
      if (std::max(c.y(), d.y()) < miny || std::min(c.y(), d.y()) > maxy) continue;
      if (segments_cross(a, b, c, d)) return false;
    }
  }
  return true;
}

int fine_points(const CurveParam& c) {
  int degree = 1;
  if (auto* r = std::get_if<RadialFourier>(&c.kind())) degree = r->radius.degree();
  if (auto* p = std::get_if<ParametricFourier>(&c.kind()))
    degree = std::max(p->x.degree(), p->y.degree());
  return std::max(1024, 16 * degree);
}

std::string series_json(const TrigSeries& s) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"cos\":[";
  for (std::size_t i = 0; i < s.cos_coeffs().size(); ++i) os << (i ? "," : "") << s.cos_coeffs()[i];
  os << "],\"sin\":[";
  for (std::size_t i = 0; i < s.sin_coeffs().size(); ++i) os << (i ? "," : "") << s.sin_coeffs()[i];
  os << "]}";
  return os.str();
}

}  // namespace

CurveParam CurveParam::circle(double radius) {
  CurveParam c(Circle{radius});
  c.validate();
  return c;
}

CurveParam CurveParam::ellipse(double a, double b) {
  CurveParam c(Ellipse{a, b});
  c.validate();
  return c;
}

CurveParam CurveParam::radial(TrigSeries radius) {
  CurveParam c(RadialFourier{std::move(radius)});
  c.validate();
  return c;
}

CurveParam CurveParam::parametric(TrigSeries x, TrigSeries y) {
  CurveParam c(ParametricFourier{std::move(x), std::move(y)});
  c.validate();
  return c;
}

std::string CurveParam::kind_name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Circle>) return "circle";
        else if constexpr (std::is_same_v<T, Ellipse>) return "ellipse";
        else if constexpr (std::is_same_v<T, RadialFourier>) return "fourier";
        else return "parametric";
      },
      kind_);
}

void CurveParam::validate() const {
  const auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::Geometry, "curve2d", "CurveParam", msg);
  };
  if (auto* c = std::get_if<Circle>(&kind_)) {
    if (!(c->radius > 0.0) || !std::isfinite(c->radius)) fail("circle radius must be positive");
    return;
  }
  if (auto* e = std::get_if<Ellipse>(&kind_)) {
    if (!(e->semi_axis_a > 0.0) || !(e->semi_axis_b > 0.0) || !std::isfinite(e->semi_axis_a) ||
        !std::isfinite(e->semi_axis_b))
      fail("ellipse semi-axes must be positive");
    return;
  }
  const int m = fine_points(*this);
  if (auto* r = std::get_if<RadialFourier>(&kind_)) {
    const Eigen::VectorXd vals = r->radius.sample(m);
    if (!(vals.minCoeff() > 0.0) || !vals.allFinite()) fail("radial function must be positive");
    return;
  }
  // Parametric: regular, counter-clockwise and simple.
  std::vector<Vec2> pts(m);
  double area2 = 0.0;
  for (int j = 0; j < m; ++j) {
    const CurveJet cj = jet(kTwoPi * j / m);
    if (!(cj.dx.norm() > 0.0) || !cj.x.allFinite()) fail("parametrization is not regular");
    pts[j] = cj.x;
    area2 += cross(cj.x, cj.dx);
  }
  if (!(area2 > 0.0)) fail("curve must be oriented counter-clockwise");
  if (!polygon_is_simple(pts)) fail("curve self-intersects");
}

CurveJet CurveParam::jet(double t) const {
  CurveJet j;
  const double c = std::cos(t), s = std::sin(t);
  if (auto* ci = std::get_if<Circle>(&kind_)) {
    const double r = ci->radius;
    j.x = {r * c, r * s};
    j.dx = {-r * s, r * c};
    j.ddx = {-r * c, -r * s};
    j.dddx = {r * s, -r * c};
  } else if (auto* e = std::get_if<Ellipse>(&kind_)) {
    const double a = e->semi_axis_a, b = e->semi_axis_b;
    j.x = {a * c, b * s};
    j.dx = {-a * s, b * c};
    j.ddx = {-a * c, -b * s};
    j.dddx = {a * s, -b * c};
  } else if (auto* rf = std::get_if<RadialFourier>(&kind_)) {
    // Leibniz rule on r(t) e(t), e = (cos, sin), e' = (-sin, cos), e'' = -e, e''' = -e'.
    const double r0 = rf->radius.eval(t, 0), r1 = rf->radius.eval(t, 1);
    const double r2 = rf->radius.eval(t, 2), r3 = rf->radius.eval(t, 3);
    const Vec2 e0{c, s}, e1{-s, c};
    j.x = r0 * e0;
    j.dx = r1 * e0 + r0 * e1;
    j.ddx = r2 * e0 + 2.0 * r1 * e1 - r0 * e0;
    j.dddx = r3 * e0 + 3.0 * r2 * e1 - 3.0 * r1 * e0 - r0 * e1;
  } else {
    const auto& p = std::get<ParametricFourier>(kind_);
    j.x = {p.x.eval(t, 0), p.y.eval(t, 0)};
    j.dx = {p.x.eval(t, 1), p.y.eval(t, 1)};
    j.ddx = {p.x.eval(t, 2), p.y.eval(t, 2)};
    j.dddx = {p.x.eval(t, 3), p.y.eval(t, 3)};
  }
  return j;
}

CurveParam CurveParam::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorKind::Input, "curve2d", "scaled", "scale factor must be positive");
  return std::visit(
      [factor](const auto& k) -> CurveParam {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Circle>) return CurveParam::circle(k.radius * factor);
        else if constexpr (std::is_same_v<T, Ellipse>)
          return CurveParam::ellipse(k.semi_axis_a * factor, k.semi_axis_b * factor);
        else if constexpr (std::is_same_v<T, RadialFourier>) return CurveParam::radial(k.radius * factor);
        else return CurveParam::parametric(k.x * factor, k.y * factor);
      },
      kind_);
}

std::string CurveParam::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Circle>) {
          os << "{\"kind\":\"circle\",\"radius\":" << k.radius << "}";
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          os << "{\"kind\":\"ellipse\",\"a\":" << k.semi_axis_a << ",\"b\":" << k.semi_axis_b << "}";
        } else if constexpr (std::is_same_v<T, RadialFourier>) {
          const std::string s = series_json(k.radius);
          os << "{\"kind\":\"fourier\"," << s.substr(1);
        } else {
          os << "{\"kind\":\"parametric\",\"x\":" << series_json(k.x) << ",\"y\":" << series_json(k.y) << "}";
        }
      },
      kind_);
  return os.str();
}

CurveSample sample_curve(const CurveParam& curve, int n) {
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorKind::Input, "curve2d", "sample_curve", "node count must be even and at least 4");
  }
  CurveSample s;
  s.n = n;
  s.t = periodic::grid(n);
  s.nodes.resize(n, 2);
  s.tangents.resize(n, 2);
  s.normals.resize(n, 2);
  s.curvature.resize(n);
  s.speed.resize(n);
  s.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    const CurveJet cj = curve.jet(s.t[j]);
    const double speed = cj.dx.norm();
    if (!(speed > 0.0)) {
      throw Error(ErrorKind::Geometry, "curve2d", "sample_curve", "parametrization is not regular");
    }
    const Vec2 tangent = cj.dx / speed;
    s.nodes.row(j) = cj.x.transpose();
    s.tangents.row(j) = tangent.transpose();
    s.normals.row(j) << tangent.y(), -tangent.x();
    // Signed curvature of a counter-clockwise curve is positive for convex arcs; flip it.
    s.curvature[j] = -cross(cj.dx, cj.ddx) / (speed * speed * speed);
    s.speed[j] = speed;
    s.weights[j] = kTwoPi / n * speed;
  }
  return s;
}

CurveParam perturb_curve(const CurveParam& curve, const ShapeFn2D& a, double h) {
  if (h == 0.0) return curve;
  const int m = std::max(kReencodePoints, 8 * std::max(a.degree(), 1));
  Eigen::VectorXd xs(m), ys(m);
  for (int j = 0; j < m; ++j) {
    const double t = kTwoPi * j / m;
    const CurveJet cj = curve.jet(t);
    const double speed = cj.dx.norm();
    const Vec2 tangent = cj.dx / speed;
    const Vec2 normal{tangent.y(), -tangent.x()};
    const double kappa_std = cross(cj.dx, cj.ddx) / (speed * speed * speed);
    const double av = a.eval(t, 0), da = a.eval(t, 1);
    // d/dt of the shifted point: x' + h (a' n + a n'), with n' = speed * kappa_std * tangent.
    const Vec2 dp = cj.dx + h * (da * normal + av * speed * kappa_std * tangent);
    if (!(dp.dot(tangent) > 0.0)) {
      throw Error(ErrorKind::Perturbation, "curve2d", "perturb_curve",
                  "normal shift folds the boundary locally (self-intersection)");
    }
    const Vec2 p = cj.x + h * av * normal;
    xs[j] = p.x();
    ys[j] = p.y();
  }
  const double scale = std::max(xs.cwiseAbs().maxCoeff(), ys.cwiseAbs().maxCoeff());
  try {
    return CurveParam::parametric(TrigSeries::fit(xs, 1e-18 * scale), TrigSeries::fit(ys, 1e-18 * scale));
  } catch (const Error& e) {
    throw Error(ErrorKind::Perturbation, "curve2d", "perturb_curve",
                std::string("shifted boundary is not a simple closed curve: ") + e.what());
  }
}

Vec2 centroid(const CurveSample& s) {
  // A = 1/2 \oint x.n ds, \int_Omega x dA = 1/2 \oint x^2 n_x ds.
  double area = 0.0, mx = 0.0, my = 0.0;
  for (int j = 0; j < s.n; ++j) {
    const Vec2 x = s.node(j), nrm = s.normal(j);
    area += 0.5 * x.dot(nrm) * s.weights[j];
    mx += 0.5 * x.x() * x.x() * nrm.x() * s.weights[j];
    my += 0.5 * x.y() * x.y() * nrm.y() * s.weights[j];
  }
  return {mx / area, my / area};
}

bool contains(const CurveSample& s, const Vec2& p) {
  double winding = 0.0;
  for (int j = 0; j < s.n; ++j) {
    const Vec2 a = s.node(j) - p;
    const Vec2 b = s.node((j + 1) % s.n) - p;
    winding += std::atan2(cross(a, b), a.dot(b));
  }
  return std::abs(winding) > std::numbers::pi;
}

}  // namespace plasmon::curve
