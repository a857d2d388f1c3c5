#include "perturb2d.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "error.hpp"

namespace plasmon::perturb {
namespace {

Eigen::VectorXd arclength_derivative(const curve::CurveSample& s, const Eigen::VectorXd& g) {
  return periodic::derivative(g).cwiseQuotient(s.speed);
}

struct Tracked {
  double eps = 0.0;
  double overlap = 0.0;
};

// Eigenvalue of the perturbed problem whose eigenfunction overlaps most with g in (., .)_-.
Tracked track(const curve::CurveParam& curve, const curve::ShapeFn2D& a, double h, int n, const bem::DtNPair& base,
              const Eigen::VectorXd& g) {
  const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::perturb_curve(curve, a, h), n));
  const spectrum::FullSpectrum full = spectrum::solve_all(dtn);
  const Eigen::VectorXd ng = base.n_minus.apply(g).cwiseProduct(base.weights());
  Tracked best;
  for (Eigen::Index j = 0; j < full.eigenvalues.size(); ++j) {
    const Eigen::VectorXd gh = full.eigenfunctions.col(j);
    const double norm = std::sqrt(bem::inner(gh, base.n_minus.apply(gh), base.weights()));
    const double ov = std::abs(ng.dot(gh)) / norm;
    if (ov > best.overlap) best = {full.eigenvalues[j], ov};
  }
  return best;
}

}  // namespace

double epsdot_2d(const bem::DtNPair& dtn, double eps, const Eigen::VectorXd& g, const curve::ShapeFn2D& a) {
  return q1_form_2d(dtn, eps, g, a)(0, 0);
}

Eigen::MatrixXd q1_form_2d(const bem::DtNPair& dtn, double eps, const Eigen::MatrixXd& g, const curve::ShapeFn2D& a) {
  if (std::abs(eps - 1.0) < 1e-8) {
    throw Error(ErrorKind::Input, "perturb", "epsdot_2d",
                "first-order formula requires eps != 1 (eps = 1 is the accumulation point)");
  }
  const curve::CurveSample& s = dtn.sample;
  const Eigen::VectorXd av = a.sample(s.n).cwiseProduct(s.weights);
  const auto k = g.cols();
  Eigen::MatrixXd ds(s.n, k), dn(s.n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    ds.col(j) = arclength_derivative(s, g.col(j));
    dn.col(j) = dtn.n_minus.apply(g.col(j));
  }
  return (eps + 1.0) * (-ds.transpose() * av.asDiagonal() * ds + eps * dn.transpose() * av.asDiagonal() * dn);
}

double epsdot_2d_checked(const bem::DtNPair& dtn, const spectrum::FullSpectrum& full, int index,
                         const curve::ShapeFn2D& a) {
  const double eps = full.eigenvalues[index];
  std::vector<Eigen::Index> cluster{index};
  for (Eigen::Index j = 0; j < full.eigenvalues.size(); ++j) {
    if (j != index && std::abs(full.eigenvalues[j] - eps) <= 1e-8 * std::max(1.0, std::abs(eps))) cluster.push_back(j);
  }
  Eigen::MatrixXd g(dtn.size(), static_cast<Eigen::Index>(cluster.size()));
  for (std::size_t c = 0; c < cluster.size(); ++c) g.col(static_cast<Eigen::Index>(c)) = full.eigenfunctions.col(cluster[c]);
  const Eigen::MatrixXd q = q1_form_2d(dtn, eps, g, a);
  if (q.cols() > 1) {
    const double off = q.row(0).tail(q.cols() - 1).cwiseAbs().maxCoeff();
    if (off > 1e-8 * std::max(1.0, q.cwiseAbs().maxCoeff())) {
      throw Error(ErrorKind::Splitting, "perturb", "epsdot_2d",
                  "degenerate eigenvalue and the eigenfunction does not diagonalize q1 on the eigenspace");
    }
  }
  return q(0, 0);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

EpsdotFdReport validate_epsdot_2d(const curve::CurveParam& curve, const curve::ShapeFn2D& a, int n, int num, int index,
                                  const std::vector<double>& h_list, int threads) {
  if (h_list.size() < 2) {
    throw Error(ErrorKind::Input, "perturb", "validate_epsdot_2d", "need at least two step sizes");
  }
  const bem::DtNPair base = bem::build_dtn(curve::sample_curve(curve, n));
  const spectrum::PlasmonicSpectrum sel = spectrum::solve_plasmonic(base, num);
  if (index < 0 || index >= num) {
    throw Error(ErrorKind::Input, "perturb", "validate_epsdot_2d", "eigen-index out of range");
  }
  const spectrum::FullSpectrum full = spectrum::solve_all(base);
  Eigen::Index j0 = 0;
  (full.eigenvalues.array() - sel.eigenvalues[index]).abs().minCoeff(&j0);
  const Eigen::VectorXd g = full.eigenfunctions.col(j0);

  EpsdotFdReport r;
  r.epsilon = full.eigenvalues[j0];
  r.epsdot = epsdot_2d_checked(base, full, static_cast<int>(j0), a);
  r.h_list = h_list;

  // Task 2i is +h_i, task 2i+1 is -h_i; results are merged by index.
  const std::size_t tasks = 2 * h_list.size();
  std::vector<Tracked> out(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next++) < tasks;) {
      const double h = (t % 2 == 0 ? 1.0 : -1.0) * h_list[t / 2];
      try {
        out[t] = track(curve, a, h, n, base, g);
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
    const double d = (out[2 * i].eps - out[2 * i + 1].eps) / (2.0 * h_list[i]);
    r.central.push_back(d);
    r.errors.push_back(std::abs(d - r.epsdot));
    r.min_overlap = std::min({r.min_overlap, out[2 * i].overlap, out[2 * i + 1].overlap});
  }
  r.slope = loglog_slope(r.h_list, r.errors);

  std::vector<std::size_t> order(h_list.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return h_list[x] < h_list[y]; });
  const std::size_t s = order[0], b = order[1];
  const double ratio = h_list[b] / h_list[s];
  r.richardson = r.central[s] + (r.central[s] - r.central[b]) / (ratio * ratio - 1.0);
  r.richardson_error = std::abs(r.richardson - r.epsdot);
  return r;
}

}  // namespace plasmon::perturb
