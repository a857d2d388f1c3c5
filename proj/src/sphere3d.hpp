#pragma once

#include <Eigen/Core>
#include <utility>

namespace plasmon::sphere {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n);

/// Real orthonormal spherical harmonic coefficients c_{l,m}, 0 <= l <= L, |m| <= l.
///
/// Y_{l,0} = P_l(cos theta) N_l, Y_{l,m} ~ cos(m phi) and Y_{l,-m} ~ sin(m phi) for m > 0,
/// without the Condon-Shortley phase, so Y_{1,-1} ~ y, Y_{1,0} ~ z, Y_{1,1} ~ x.
struct SHField {
  int L = 0;
  Eigen::VectorXd coeffs;

  SHField() = default;
  explicit SHField(int band_limit) : L(band_limit), coeffs(Eigen::VectorXd::Zero(size(band_limit))) {}

  static constexpr int size(int band_limit) { return (band_limit + 1) * (band_limit + 1); }
  static constexpr int index(int l, int m) { return l * l + l + m; }

  double operator()(int l, int m) const { return coeffs[index(l, m)]; }
  double& operator()(int l, int m) { return coeffs[index(l, m)]; }

  static SHField basis(int L, int l, int m);
  static SHField constant(double value);

  /// Same coefficients zero-padded or truncated to band limit `band_limit`.
  SHField resized(int band_limit) const;
};

/// Gauss-Legendre(theta) x uniform(phi) grid with tabulated normalized Legendre functions.
/// Quadrature is exact for band-limited integrands of total degree <= 2 * band_limit().
class SphereGrid {
 public:
  SphereGrid(int n_theta, int n_phi, int table_degree);

  /// Smallest grid able to integrate products of two degree-L fields.
  static SphereGrid for_band_limit(int L);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  int table_degree() const { return lmax_; }
  int band_limit() const;

  const Eigen::VectorXd& theta() const { return theta_; }
  const Eigen::VectorXd& phi() const { return phi_; }
  const Eigen::VectorXd& cos_theta() const { return x_; }
  const Eigen::VectorXd& sin_theta() const { return s_; }
  /// Area weight of the grid point (i, j); independent of j.
  double weight(int i) const { return w_[i] * 2.0 * kPi / n_phi_; }

  /// Grid values of f (rows theta, columns phi).
  Eigen::MatrixXd synthesis(const SHField& f) const;
  /// Requires n_theta >= L + 1 and n_phi >= 2L + 1.
  SHField analysis(const Eigen::MatrixXd& values, int L) const;

  double integrate(const Eigen::MatrixXd& values) const;

  static constexpr double kPi = 3.14159265358979323846;

  // Normalized associated Legendre function values (and theta derivative) at node i.
  double legendre(int l, int m, int i) const { return p_(i, tri(l, m)); }
  double legendre_dtheta(int l, int m, int i) const { return dp_(i, tri(l, m)); }

 private:
  static int tri(int l, int m) { return l * (l + 1) / 2 + m; }
  void check_band(int L, const char* op) const;

  int n_theta_, n_phi_, lmax_;
  Eigen::VectorXd x_, w_, theta_, s_, phi_;
  Eigen::MatrixXd p_, dp_;
};

/// Tangent field in the local (theta-hat, phi-hat) frame on a SphereGrid.
struct TangentField {
  Eigen::MatrixXd theta;
  Eigen::MatrixXd phi;
};

/// Symmetric tangent tensor field (theta-theta, theta-phi, phi-phi components).
struct TangentTensor {
  Eigen::MatrixXd tt, tp, pp;

  TangentField apply(const TangentField& v) const;
};

Eigen::MatrixXd dot(const TangentField& u, const TangentField& v);
TangentField scale(const Eigen::MatrixXd& a, const TangentField& v);

TangentField surface_gradient(const SphereGrid& grid, const SHField& f);

/// Weak-form divergence: coefficients c_{l,m} = -<V, grad Y_{l,m}> for l <= L.
SHField surface_divergence(const SphereGrid& grid, const TangentField& v, int L);

/// Point evaluation at (theta, phi).
double evaluate(const SHField& f, double theta, double phi);

/// Plasmonic eigenvalue (k+1)/k of the unit ball and its multiplicity 2k+1.
std::pair<double, int> ball_spectrum(int k);

enum class Side { Interior, Exterior };

/// DtN on the unit sphere: multiplier l inside, -(l+1) outside.
SHField dtn_sphere_apply(const SHField& f, Side side);

/// Curvature data of the unit sphere in the convention where the sphere bends away
/// from the outward normal: H = -1, K = 1, W0 = 0.
struct SphereGeometry {
  SHField H;
  SHField K;
  TangentTensor W0;

  static SphereGeometry unit(const SphereGrid& grid);
};

}  // namespace plasmon::sphere
