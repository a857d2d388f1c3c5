#include "dtn_shape.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "error.hpp"
#include "perturb2d.hpp"

namespace plasmon::dtn_shape {
namespace {

const bem::BoundaryOperator& pick(const bem::DtNPair& dtn, Side side) {
  return side == Side::Interior ? dtn.n_minus : dtn.n_plus;
}

Eigen::VectorXd ds(const curve::CurveSample& s, const Eigen::VectorXd& g) {
  return periodic::derivative(g).cwiseQuotient(s.speed);
}

// Columns spanning Fourier modes |l| <= band, orthonormal in the weighted product.
Eigen::MatrixXd band_basis(const Eigen::VectorXd& w, int band) {
  const int n = static_cast<int>(w.size());
  Eigen::MatrixXd b(n, 2 * band + 1);
  for (int l = -band; l <= band; ++l) b.col(l + band) = periodic::mode(n, l);
  const Eigen::VectorXd sq = w.cwiseSqrt();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(sq.asDiagonal() * b);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, b.cols());
  return sq.cwiseInverse().asDiagonal() * q;
}

double weighted_norm(const Eigen::MatrixXd& e, const Eigen::MatrixXd& basis, const Eigen::VectorXd& w) {
  const Eigen::MatrixXd m = w.cwiseSqrt().asDiagonal() * e * basis;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()[0];
}

}  // namespace

Eigen::VectorXd shape_derivative_apply(const Eigen::VectorXd& g, const curve::ShapeFn2D& a, const bem::DtNPair& dtn,
                                       Side side) {
  const curve::CurveSample& s = dtn.sample;
  if (g.size() != s.n) {
    throw Error(ErrorKind::Shape, "dtn_shape", "shape_derivative_apply", "vector length does not match the sample");
  }
  const bem::BoundaryOperator& op = pick(dtn, side);
  const Eigen::VectorXd av = a.sample(s.n);
  const Eigen::VectorXd ng = op.apply(g);
  return -ds(s, av.cwiseProduct(ds(s, g))) + s.curvature.cwiseProduct(av).cwiseProduct(ng) -
         op.apply(av.cwiseProduct(ng));
}

Eigen::MatrixXd shape_derivative_matrix(const curve::ShapeFn2D& a, const bem::DtNPair& dtn, Side side) {
  const int n = dtn.sample.n;
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) m.col(j) = shape_derivative_apply(Eigen::VectorXd::Unit(n, j), a, dtn, side);
  return m;
}

TransplantedDtN transplanted_dtn(const curve::CurveParam& curve, const curve::ShapeFn2D& a, double h, int n, Side side) {
  const curve::CurveSample base = curve::sample_curve(curve, n);
  const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::perturb_curve(curve, a, h), n));
  return {h, pick(dtn, side).matrix, base.weights};
}

OperatorFdReport operator_fd_test(const curve::CurveParam& curve, const curve::ShapeFn2D& a, int n,
                                  const std::vector<double>& h_list, Side side, int band, int threads) {
  if (h_list.size() < 2) {
    throw Error(ErrorKind::Input, "dtn_shape", "operator_fd_test", "need at least two step sizes");
  }
  OperatorFdReport r;
  r.h_list = h_list;
  r.band = band > 0 ? band : n / 8;
  const bem::DtNPair base = bem::build_dtn(curve::sample_curve(curve, n));
  const Eigen::MatrixXd n0 = pick(base, side).matrix;
  const Eigen::MatrixXd deriv = shape_derivative_matrix(a, base, side);
  const Eigen::MatrixXd basis = band_basis(base.weights(), r.band);

  const std::size_t tasks = 2 * h_list.size();
  std::vector<Eigen::MatrixXd> mats(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next++) < tasks;) {
      const double h = (t % 2 == 0 ? 1.0 : -1.0) * h_list[t / 2];
      try {
        mats[t] = transplanted_dtn(curve, a, h, n, side).matrix;
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < std::max(1, std::min<int>(threads, static_cast<int>(tasks))); ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 0; i < h_list.size(); ++i) {
    const double h = h_list[i];
    r.one_sided_errors.push_back(weighted_norm((mats[2 * i] - n0) / h - deriv, basis, base.weights()));
    r.central_errors.push_back(
        weighted_norm((mats[2 * i] - mats[2 * i + 1]) / (2.0 * h) - deriv, basis, base.weights()));
  }
  r.slope_one_sided = perturb::loglog_slope(h_list, r.one_sided_errors);
  r.slope_central = perturb::loglog_slope(h_list, r.central_errors);
  return r;
}

double circle_oracle_error(int n, int lmax, Side side) {
  const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::circle(1.0), n));
  const curve::ShapeFn2D one = curve::ShapeFn2D::constant(1.0);
  const double sign = side == Side::Interior ? -1.0 : 1.0;
  double err = 0.0;
  for (int l = -lmax; l <= lmax; ++l) {
    const Eigen::VectorXd g = periodic::mode(n, l);
    const Eigen::VectorXd d = shape_derivative_apply(g, one, dtn, side);
    err = std::max(err, (d - sign * std::abs(l) * g).cwiseAbs().maxCoeff());
  }
  return err;
}

double principal_order_slope(const curve::ShapeFn2D& a, int n, const std::vector<int>& modes) {
  const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::circle(1.0), n));
  std::vector<double> ls, norms;
  for (int l : modes) {
    const Eigen::VectorXd g = periodic::mode(n, l);
    const Eigen::VectorXd d = shape_derivative_apply(g, a, dtn);
    ls.push_back(std::abs(l));
    norms.push_back(std::sqrt(bem::inner(d, d, dtn.weights()) / bem::inner(g, g, dtn.weights())));
  }
  return perturb::loglog_slope(ls, norms);
}

}  // namespace plasmon::dtn_shape
