#pragma once

// Boundary operators appearing in the h-derivatives of the normal derivative of a
// harmonic function under the normal shift x -> x + h a(x) n(x):
//   (d_n u)'  = P1 u + Q1 d_n u + d_n u'
//   (d_n u)'' = P2 u + Q2 d_n u + 2 P1 u' + 2 Q1 d_n u' + d_n u''

#include "sphere3d.hpp"

namespace plasmon::perturb::ops {

struct FieldContext {
  const sphere::SphereGrid& grid;
  const sphere::SphereGeometry& geometry;
  Eigen::MatrixXd a;              // shape function on the grid
  sphere::TangentField grad_a;
  int L_out;                      // band limit of returned fields

  FieldContext(const sphere::SphereGrid& g, const sphere::SphereGeometry& geo, const sphere::SHField& shape, int l_out);
};

/// -div(a grad u)
sphere::SHField P1(const FieldContext& c, const sphere::SHField& u);
/// 2 a H g
sphere::SHField Q1(const FieldContext& c, const sphere::SHField& g);
/// -2 (a^2 H Lap u + div(a^2 W grad u) - a^2 grad H . grad u), W = W0 + H I
sphere::SHField P2(const FieldContext& c, const sphere::SHField& u);
/// -div(a^2 grad g) + a^2 (8 H^2 - 2 K) g - |grad a|^2 g
sphere::SHField Q2(const FieldContext& c, const sphere::SHField& g);

/// Laplace-Beltrami via the multiplier -l(l+1).
sphere::SHField laplace_beltrami(const sphere::SHField& u);

}  // namespace plasmon::perturb::ops
