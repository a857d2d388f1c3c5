#include "spectrum2d.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace plasmon::spectrum {
namespace {

std::vector<int> order_by_distance(const Eigen::VectorXd& eps) {
  std::vector<int> idx(eps.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return std::abs(eps[a] - 1.0) > std::abs(eps[b] - 1.0); });
  return idx;
}

void check_num(int num, Eigen::Index n, const char* op) {
  if (num < 1 || num > n / 2) {
    throw Error(ErrorKind::Input, "spectrum2d", op, "requested eigenvalue count must lie in [1, N/2]");
  }
}

}  // namespace

std::string to_string(Route route) { return route == Route::Dtn ? "dtn" : "np"; }

Eigen::VectorXd project_mean_zero(const Eigen::VectorXd& g, const Eigen::VectorXd& w) {
  return g.array() - g.dot(w) / w.sum();
}

FullSpectrum solve_all(const bem::DtNPair& dtn) {
  const auto n = dtn.size();
  const Eigen::VectorXd sq = dtn.weights().cwiseSqrt();
  const auto sym = [&](const Eigen::MatrixXd& m) {
    Eigen::MatrixXd s = sq.asDiagonal() * m * sq.cwiseInverse().asDiagonal();
    return Eigen::MatrixXd(0.5 * (s + s.transpose()));
  };
  const Eigen::MatrixXd nm = sym(dtn.n_minus.matrix);
  const Eigen::MatrixXd np = sym(dtn.n_plus.matrix);

  // Orthonormal basis of the complement of the (weighted) constants.
  const Eigen::VectorXd constant = sq.normalized();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(constant);
  const Eigen::MatrixXd q = Eigen::MatrixXd(qr.householderQ()).rightCols(n - 1);

  const Eigen::MatrixXd b_minus = q.transpose() * nm * q;
  const Eigen::MatrixXd b_plus = -(q.transpose() * np * q);

  // B- v = mu B+ v, i.e. A = -N+^{-1} N- made symmetric in the (., .)_+ product.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(b_minus, b_plus);
  if (ges.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "spectrum2d", "solve_plasmonic",
                "exterior DtN operator is not invertible on the mean-zero subspace");
  }
  const Eigen::VectorXd mu = ges.eigenvalues();
  if (!(mu.minCoeff() > 0.0)) {
    throw Error(ErrorKind::Numerical, "spectrum2d", "solve_plasmonic",
                "interior DtN operator is not positive on the mean-zero subspace");
  }
  FullSpectrum out;
  out.eigenvalues.resize(n - 1);
  out.eigenfunctions.resize(n, n - 1);
  // mu ascending -> eps = 1/mu descending; store ascending in eps.
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    const Eigen::Index src = n - 2 - k;
    out.eigenvalues[k] = 1.0 / mu[src];
    // v^T B+ v = 1 and v^T B- v = mu; rescale so that <g, N- g> = 1.
    const Eigen::VectorXd v = ges.eigenvectors().col(src) / std::sqrt(mu[src]);
    out.eigenfunctions.col(k) = sq.cwiseInverse().asDiagonal() * (q * v);
  }
  return out;
}

PlasmonicSpectrum solve_plasmonic(const bem::DtNPair& dtn, int num) {
  check_num(num, dtn.size(), "solve_plasmonic");
  const FullSpectrum full = solve_all(dtn);
  const std::vector<int> order = order_by_distance(full.eigenvalues);

  std::vector<int> chosen(order.begin(), order.begin() + num);
  std::sort(chosen.begin(), chosen.end(),
            [&](int a, int b) { return full.eigenvalues[a] < full.eigenvalues[b]; });

  PlasmonicSpectrum spec;
  spec.route = Route::Dtn;
  spec.eigenfunctions.resize(dtn.size(), num);
  for (int k = 0; k < num; ++k) {
    const double eps = full.eigenvalues[chosen[k]];
    const Eigen::VectorXd g = full.eigenfunctions.col(chosen[k]);
    const Eigen::VectorXd r = eps * dtn.n_minus.apply(g) + dtn.n_plus.apply(g);
    spec.eigenvalues.push_back(eps);
    spec.eigenfunctions.col(k) = g;
    spec.residuals.push_back(std::sqrt(bem::inner(r, r, dtn.weights())));
  }
  for (int i : order) spec.all_by_distance.push_back(full.eigenvalues[i]);
  spec.clustering = clustering_stats(spec.all_by_distance);
  return spec;
}

double eps_from_np(double lambda) {
  if (std::abs(1.0 - 2.0 * lambda) < 1e-8) {
    throw Error(ErrorKind::Degeneracy, "spectrum2d", "np_route",
                "K* eigenvalue 1/2 on a non-constant density (eps = infinity)");
  }
  return (1.0 + 2.0 * lambda) / (1.0 - 2.0 * lambda);
}

PlasmonicSpectrum np_route(const bem::BoundaryOperator& kstar, int num) {
  const auto n = kstar.size();
  check_num(num, n, "np_route");
  Eigen::EigenSolver<Eigen::MatrixXd> es(kstar.matrix);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "spectrum2d", "np_route", "eigen-decomposition of K* failed");
  }
  const Eigen::VectorXd lambda = es.eigenvalues().real();
  Eigen::Index constant_mode = 0;
  (lambda.array() - 0.5).abs().minCoeff(&constant_mode);

  std::vector<double> eps_all;
  std::vector<double> resid_all;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == constant_mode) continue;
    eps_all.push_back(eps_from_np(lambda[k]));
    const Eigen::VectorXd phi = es.eigenvectors().col(k).real();
    const Eigen::VectorXd r = kstar.apply(phi) - lambda[k] * phi;
    resid_all.push_back(std::sqrt(bem::inner(r, r, kstar.weights) / bem::inner(phi, phi, kstar.weights)));
  }
  const Eigen::VectorXd eps = Eigen::Map<Eigen::VectorXd>(eps_all.data(), static_cast<Eigen::Index>(eps_all.size()));
  const std::vector<int> order = order_by_distance(eps);
  std::vector<int> chosen(order.begin(), order.begin() + num);
  std::sort(chosen.begin(), chosen.end(), [&](int a, int b) { return eps[a] < eps[b]; });

  PlasmonicSpectrum spec;
  spec.route = Route::Np;
  for (int i : chosen) {
    spec.eigenvalues.push_back(eps[i]);
    spec.residuals.push_back(resid_all[i]);
  }
  for (int i : order) spec.all_by_distance.push_back(eps[i]);
  spec.clustering = clustering_stats(spec.all_by_distance);
  return spec;
}

double rayleigh(const Eigen::VectorXd& g, const bem::DtNPair& dtn) {
  const Eigen::VectorXd& w = dtn.weights();
  const double den = bem::inner(g, dtn.n_minus.apply(g), w);
  const double scale = dtn.n_minus.matrix.norm() / std::sqrt(static_cast<double>(dtn.size()));
  if (!(den > 1e-10 * bem::inner(g, g, w) * scale)) {
    throw Error(ErrorKind::EInfinity, "spectrum2d", "rayleigh",
                "interior energy <g, N- g> vanishes: g is constant (interior-constant plasmon)");
  }
  return -bem::inner(g, dtn.n_plus.apply(g), w) / den;
}

double plus_product(const Eigen::VectorXd& g, const Eigen::VectorXd& h, const bem::DtNPair& dtn) {
  return -bem::inner(g, dtn.n_plus.apply(h), dtn.weights());
}

ClusteringStats clustering_stats(const std::vector<double>& by_distance, int tail_start, int window) {
  ClusteringStats st;
  st.tail_start = tail_start;
  st.window = window;
  const int n = static_cast<int>(by_distance.size());
  double sum = 0.0;
  int count = 0;
  for (int k = tail_start; k < n; ++k) {
    const double d = std::abs(by_distance[k] - 1.0);
    sum += d;
    st.tail_max = std::max(st.tail_max, d);
    ++count;
  }
  st.tail_mean = count ? sum / count : 0.0;
  for (int start = tail_start; start + window <= n; start += window) {
    double m = 0.0;
    for (int k = start; k < start + window; ++k) m = std::max(m, std::abs(by_distance[k] - 1.0));
    st.window_max.push_back(m);
  }
  return st;
}

}  // namespace plasmon::spectrum
