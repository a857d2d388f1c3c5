#include "perturb_ops.hpp"

namespace plasmon::perturb::ops {

using sphere::SHField;
using sphere::TangentField;

FieldContext::FieldContext(const sphere::SphereGrid& g, const sphere::SphereGeometry& geo, const SHField& shape,
                           int l_out)
    : grid(g), geometry(geo), a(g.synthesis(shape)), grad_a(sphere::surface_gradient(g, shape)), L_out(l_out) {}

SHField laplace_beltrami(const SHField& u) {
  SHField out = u;
  for (int l = 0; l <= u.L; ++l) {
    for (int m = -l; m <= l; ++m) out(l, m) *= -static_cast<double>(l) * (l + 1);
  }
  return out;
}

SHField P1(const FieldContext& c, const SHField& u) {
  const TangentField flux = sphere::scale(c.a, sphere::surface_gradient(c.grid, u));
  SHField out = sphere::surface_divergence(c.grid, flux, c.L_out);
  out.coeffs = -out.coeffs;
  return out;
}

SHField Q1(const FieldContext& c, const SHField& g) {
  const Eigen::MatrixXd h = c.grid.synthesis(c.geometry.H);
  return c.grid.analysis(2.0 * c.a.cwiseProduct(h).cwiseProduct(c.grid.synthesis(g)), c.L_out);
}

SHField P2(const FieldContext& c, const SHField& u) {
  const Eigen::MatrixXd h = c.grid.synthesis(c.geometry.H);
  const Eigen::MatrixXd a2 = c.a.cwiseProduct(c.a);
  const TangentField grad_u = sphere::surface_gradient(c.grid, u);
  const TangentField grad_h = sphere::surface_gradient(c.grid, c.geometry.H);

  TangentField w_grad = c.geometry.W0.apply(grad_u);
  w_grad.theta += h.cwiseProduct(grad_u.theta);
  w_grad.phi += h.cwiseProduct(grad_u.phi);

  const Eigen::MatrixXd pointwise =
      a2.cwiseProduct(h).cwiseProduct(c.grid.synthesis(laplace_beltrami(u))) -
      a2.cwiseProduct(sphere::dot(grad_h, grad_u));
  SHField out = c.grid.analysis(pointwise, c.L_out);
  out.coeffs += sphere::surface_divergence(c.grid, sphere::scale(a2, w_grad), c.L_out).coeffs;
  out.coeffs *= -2.0;
  return out;
}

SHField Q2(const FieldContext& c, const SHField& g) {
  const Eigen::MatrixXd h = c.grid.synthesis(c.geometry.H);
  const Eigen::MatrixXd k = c.grid.synthesis(c.geometry.K);
  const Eigen::MatrixXd a2 = c.a.cwiseProduct(c.a);
  const Eigen::MatrixXd gv = c.grid.synthesis(g);

  const Eigen::MatrixXd potential =
      a2.cwiseProduct(8.0 * h.cwiseProduct(h) - 2.0 * k) - sphere::dot(c.grad_a, c.grad_a);
  SHField out = c.grid.analysis(potential.cwiseProduct(gv), c.L_out);
  const TangentField flux = sphere::scale(a2, sphere::surface_gradient(c.grid, g));
  out.coeffs -= sphere::surface_divergence(c.grid, flux, c.L_out).coeffs;
  return out;
}

}  // namespace plasmon::perturb::ops
