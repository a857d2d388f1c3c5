#include "perturb.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "error.hpp"
#include "perturb_ops.hpp"

namespace plasmon::perturb {
namespace {

using sphere::SHField;
using sphere::SphereGrid;
using sphere::TangentField;

double ball_eps(int k) { return sphere::ball_spectrum(k).first; }

// Grid resolving every product in the first- and second-order formulas.
SphereGrid grid_for(int k, const SHField& a) { return SphereGrid::for_band_limit(2 * (a.L + k) + 2); }

SHField dn_interior(const SHField& f) { return sphere::dtn_sphere_apply(f, sphere::Side::Interior); }

void check_inputs(int k, const char* op) {
  if (k == 0) throw Error(ErrorKind::EInfinity, "perturb", op, "degree 0 is the interior-constant space (eps = infinity)");
  if (k < 0) throw Error(ErrorKind::Input, "perturb", op, "eigenspace degree k must be >= 1");
}

// Orthonormal basis of the cluster spanned by `v`, made independent of the
// eigen-solver's choice: Gram-Schmidt on the projector columns, then sorted.
Eigen::MatrixXd canonical_cluster(const Eigen::MatrixXd& v) {
  const Eigen::MatrixXd proj = v * v.transpose();
  std::vector<Eigen::VectorXd> out;
  for (Eigen::Index j = 0; j < proj.cols() && static_cast<Eigen::Index>(out.size()) < v.cols(); ++j) {
    Eigen::VectorXd c = proj.col(j);
    for (const auto& q : out) c -= q.dot(c) * q;
    if (c.norm() > 1e-6) out.push_back(c.normalized());
  }
  for (auto& q : out) {
    Eigen::Index lead = 0;
    while (lead < q.size() && std::abs(q[lead]) < 1e-12) ++lead;
    if (lead < q.size() && q[lead] < 0) q = -q;
  }
  std::sort(out.begin(), out.end(), [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (std::abs(x[i] - y[i]) > 1e-12) return std::abs(x[i]) > std::abs(y[i]);
    }
    return false;
  });
  Eigen::MatrixXd m(v.rows(), v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) m.col(j) = out[j];
  return m;
}

}  // namespace

SHField FirstOrderReport::branch_trace(int i) const {
  SHField u(k);
  for (int m = -k; m <= k; ++m) u(k, m) = basis(m + k, i) / std::sqrt(static_cast<double>(k));
  return u;
}

int FirstOrderReport::branch_along(int m) const {
  Eigen::Index best = 0;
  basis.row(m + k).cwiseAbs().maxCoeff(&best);
  return static_cast<int>(best);
}

Eigen::MatrixXd q1_form(int k, const std::vector<SHField>& traces, const SHField& a) {
  check_inputs(k, "q1_matrix");
  const double eps = ball_eps(k);
  const SphereGrid grid = grid_for(k, a);
  const Eigen::MatrixXd av = grid.synthesis(a);
  const auto n = static_cast<Eigen::Index>(traces.size());
  std::vector<TangentField> grads;
  std::vector<Eigen::MatrixXd> dn;
  for (const auto& u : traces) {
    grads.push_back(sphere::surface_gradient(grid, u));
    dn.push_back(grid.synthesis(dn_interior(u)));
  }
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double tangential = grid.integrate(av.cwiseProduct(sphere::dot(grads[i], grads[j])));
      const double normal = grid.integrate(av.cwiseProduct(dn[i]).cwiseProduct(dn[j]));
      q(i, j) = (eps + 1.0) * (-tangential + eps * normal);
    }
  }
  return q;
}

FirstOrderReport q1_matrix(int k, const SHField& a) {
  check_inputs(k, "q1_matrix");
  FirstOrderReport r;
  r.k = k;
  r.epsilon = ball_eps(k);
  r.dimension = 2 * k + 1;
  std::vector<SHField> traces;
  for (int m = -k; m <= k; ++m) {
    SHField u = SHField::basis(k, k, m);
    u.coeffs /= std::sqrt(static_cast<double>(k));
    traces.push_back(u);
  }
  r.q1 = q1_form(k, traces, a);
  r.symmetry_residual = (r.q1 - r.q1.transpose()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd sym = 0.5 * (r.q1 + r.q1.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  r.epsdot = es.eigenvalues();
  r.basis = es.eigenvectors();
  const double tol = 1e-9 * std::max(1.0, sym.cwiseAbs().maxCoeff());
  for (int start = 0; start < r.dimension;) {
    int end = start + 1;
    while (end < r.dimension && r.epsdot[end] - r.epsdot[end - 1] <= tol) ++end;
    r.basis.middleCols(start, end - start) = canonical_cluster(r.basis.middleCols(start, end - start));
    start = end;
  }

  // <u_i, d_n u_j> for the branch traces, by quadrature.
  const SphereGrid grid = grid_for(k, a);
  Eigen::MatrixXd gram(r.dimension, r.dimension);
  for (int i = 0; i < r.dimension; ++i) {
    const Eigen::MatrixXd ui = grid.synthesis(r.branch_trace(i));
    for (int j = 0; j < r.dimension; ++j) {
      gram(i, j) = grid.integrate(ui.cwiseProduct(grid.synthesis(dn_interior(r.branch_trace(j)))));
    }
  }
  r.orthonormality_residual = (gram - Eigen::MatrixXd::Identity(r.dimension, r.dimension)).cwiseAbs().maxCoeff();
  return r;
}

UdotSolution solve_udot(int k, const SHField& u, const SHField& a, double epsdot) {
  check_inputs(k, "solve_udot");
  const double eps = ball_eps(k);
  const int l_out = a.L + k;
  const SphereGrid grid = grid_for(k, a);
  const sphere::SphereGeometry geometry = sphere::SphereGeometry::unit(grid);
  const ops::FieldContext ctx(grid, geometry, a, l_out);

  const SHField dn_u = dn_interior(u).resized(l_out);
  UdotSolution s;
  s.F1 = grid.analysis(-(eps + 1.0) * ctx.a.cwiseProduct(grid.synthesis(dn_u)), l_out);
  s.G = SHField(l_out);
  s.G.coeffs = -epsdot * dn_u.coeffs - (eps + 1.0) * ops::P1(ctx, u).coeffs;

  s.phi = SHField(l_out);
  s.psi = SHField(l_out);
  for (int l = 0; l <= l_out; ++l) {
    for (int m = -l; m <= l; ++m) {
      const double f = s.F1(l, m), g = s.G(l, m);
      if (l == k) {
        // Solvable only if <G, w> = eps <F1, d_n w> for w = Y_{k,m}.
        s.compatibility_residual = std::max(s.compatibility_residual, std::abs(g - eps * k * f));
        s.phi(l, m) = 0.0;
        s.psi(l, m) = -f;
      } else {
        s.phi(l, m) = (g - (l + 1.0) * f) / (eps * l - (l + 1.0));
        s.psi(l, m) = s.phi(l, m) - f;
      }
    }
  }
  if (s.compatibility_residual > kCompatibilityTolerance) {
    throw Error(ErrorKind::Splitting, "perturb", "solve_udot",
                "u-dot system is not solvable: the branch does not diagonalize q1 on the eigenspace");
  }

  SHField jump(l_out), flux(l_out);
  jump.coeffs = s.phi.coeffs - s.psi.coeffs - s.F1.coeffs;
  flux.coeffs = eps * dn_interior(s.phi).coeffs + sphere::dtn_sphere_apply(s.psi, sphere::Side::Exterior).coeffs -
                s.G.coeffs;
  s.system_residual = std::max(grid.synthesis(jump).cwiseAbs().maxCoeff(), grid.synthesis(flux).cwiseAbs().maxCoeff());
  return s;
}

UdotSolution solve_udot(const FirstOrderReport& first, int branch, const SHField& a) {
  if (branch < 0 || branch >= first.dimension) {
    throw Error(ErrorKind::Input, "perturb", "solve_udot", "branch index out of range");
  }
  try {
    return solve_udot(first.k, first.branch_trace(branch), a, first.epsdot[branch]);
  } catch (const Error& e) {
    throw Error(e.kind(), e.module(), e.operation(),
                e.detail() + " (branch " + std::to_string(branch) + ")");
  }
}

std::array<double, 6> epsddot_lines(int k, const SHField& u, const SHField& a, double epsdot, const SHField& phi) {
  check_inputs(k, "epsddot");
  const double eps = ball_eps(k);
  const SphereGrid grid = SphereGrid::for_band_limit(2 * (std::max(a.L, phi.L) + k) + 2);
  const sphere::SphereGeometry geometry = sphere::SphereGeometry::unit(grid);

  const Eigen::MatrixXd av = grid.synthesis(a);
  const TangentField grad_a = sphere::surface_gradient(grid, a);
  const Eigen::MatrixXd uv = grid.synthesis(u);
  const TangentField grad_u = sphere::surface_gradient(grid, u);
  const SHField dn_u_sh = dn_interior(u);
  const Eigen::MatrixXd dn_u = grid.synthesis(dn_u_sh);
  const TangentField grad_dn_u = sphere::surface_gradient(grid, dn_u_sh);
  const TangentField grad_phi = sphere::surface_gradient(grid, phi);
  const Eigen::MatrixXd dn_phi = grid.synthesis(dn_interior(phi));
  const Eigen::MatrixXd h = grid.synthesis(geometry.H);
  const Eigen::MatrixXd a2 = av.cwiseProduct(av);

  // grad(a d_n u) by the product rule.
  TangentField grad_a_dn_u = sphere::scale(dn_u, grad_a);
  grad_a_dn_u.theta += av.cwiseProduct(grad_dn_u.theta);
  grad_a_dn_u.phi += av.cwiseProduct(grad_dn_u.phi);

  std::array<double, 6> line{};
  line[0] = grid.integrate(-epsdot * av.cwiseProduct(sphere::dot(grad_u, grad_u)) -
                           (eps + 1.0) * a2.cwiseProduct(sphere::dot(grad_u, geometry.W0.apply(grad_u))));
  line[1] = (eps * eps - 1.0) * grid.integrate(av.cwiseProduct(sphere::dot(grad_u, grad_a_dn_u)));
  line[2] = -(eps + 1.0) * grid.integrate(av.cwiseProduct(sphere::dot(grad_u, grad_phi)));
  line[3] = -epsdot * grid.integrate(uv.cwiseProduct(dn_phi));
  line[4] = grid.integrate(eps * av.cwiseProduct((epsdot + (eps + 1.0) * av.cwiseProduct(h).array()).matrix())
                               .cwiseProduct(dn_u)
                               .cwiseProduct(dn_u));
  line[5] = eps * (eps + 1.0) * grid.integrate(av.cwiseProduct(dn_u).cwiseProduct(dn_phi));
  return line;
}

SecondOrderReport epsddot(int k, const SHField& u, const SHField& a, double epsdot, const UdotSolution& udot,
                          std::uint64_t gauge_seed) {
  SecondOrderReport r;
  r.lines = epsddot_lines(k, u, a, epsdot, udot.phi);
  r.epsddot = 2.0 * std::accumulate(r.lines.begin(), r.lines.end(), 0.0);

  // Shift u-dot by a random element of the eigenspace and re-evaluate.
  std::mt19937_64 rng(gauge_seed);
  std::normal_distribution<double> normal;
  SHField shifted = udot.phi.resized(std::max(udot.phi.L, k));
  Eigen::VectorXd e(2 * k + 1);
  for (auto& c : e) c = normal(rng);
  e.normalize();
  for (int m = -k; m <= k; ++m) shifted(k, m) += e[m + k];
  const auto lines = epsddot_lines(k, u, a, epsdot, shifted);
  r.gauge_residual = std::abs(2.0 * std::accumulate(lines.begin(), lines.end(), 0.0) - r.epsddot);
  return r;
}

PerturbReport sphere_perturbation(int k, const SHField& a, std::uint64_t seed) {
  PerturbReport rep;
  rep.first = q1_matrix(k, a);
  for (int i = 0; i < rep.first.dimension; ++i) {
    const UdotSolution ud = solve_udot(rep.first, i, a);
    const SHField u = rep.first.branch_trace(i);
    const SecondOrderReport so = epsddot(k, u, a, rep.first.epsdot[i], ud, seed + static_cast<std::uint64_t>(i));
    BranchReport b;
    b.epsilon = rep.first.epsilon;
    b.epsdot = rep.first.epsdot[i];
    b.epsddot = so.epsddot;
    b.basis = rep.first.basis.col(i);
    b.lines = so.lines;
    b.compatibility_residual = ud.compatibility_residual;
    b.system_residual = ud.system_residual;
    b.gauge_residual = so.gauge_residual;
    rep.branches.push_back(b);
  }
  return rep;
}

}  // namespace plasmon::perturb
