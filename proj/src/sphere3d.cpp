#include "sphere3d.hpp"

#include <cmath>

#include "error.hpp"

namespace plasmon::sphere {
namespace {

constexpr double kPi = SphereGrid::kPi;

int tri(int l, int m) { return l * (l + 1) / 2 + m; }

// Normalized associated Legendre functions (no Condon-Shortley phase) and their
// theta derivatives at x = cos(theta), s = sin(theta) > 0, for 0 <= m <= l <= lmax.
void legendre_column(double x, double s, int lmax, Eigen::Ref<Eigen::VectorXd> p, Eigen::Ref<Eigen::VectorXd> dp) {
  p[0] = 1.0 / std::sqrt(4.0 * kPi);
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) p[tri(m, m)] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * p[tri(m - 1, m - 1)];
    if (m + 1 <= lmax) p[tri(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * p[tri(m, m)];
    for (int l = m + 2; l <= lmax; ++l) {
      const double l2 = static_cast<double>(l) * l, m2 = static_cast<double>(m) * m;
      const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - m2) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      p[tri(l, m)] = a * (x * p[tri(l - 1, m)] - b * p[tri(l - 2, m)]);
    }
  }
  for (int l = 0; l <= lmax; ++l) {
    for (int m = 0; m <= l; ++m) {
      const double prev = l - 1 >= m ? p[tri(l - 1, m)] : 0.0;
      const double c = std::sqrt((2.0 * l + 1.0) * (static_cast<double>(l) * l - static_cast<double>(m) * m) / (2.0 * l - 1.0));
      dp[tri(l, m)] = (l * x * p[tri(l, m)] - (l > 0 ? c * prev : 0.0)) / s;
    }
  }
}

// cos part (m >= 0, sqrt(2) for m > 0) and sin part (m > 0) of the azimuthal factor.
double azimuthal(int m, double phi) {
  if (m == 0) return 1.0;
  return m > 0 ? std::sqrt(2.0) * std::cos(m * phi) : std::sqrt(2.0) * std::sin(-m * phi);
}

double azimuthal_dphi(int m, double phi) {
  if (m == 0) return 0.0;
  return m > 0 ? -m * std::sqrt(2.0) * std::sin(m * phi) : -m * std::sqrt(2.0) * std::cos(-m * phi);
}

// Azimuthal table: column (L + m) holds azimuthal(m, phi_j).
Eigen::MatrixXd azimuthal_table(const Eigen::VectorXd& phi, int L, bool derivative) {
  Eigen::MatrixXd t(phi.size(), 2 * L + 1);
  for (int m = -L; m <= L; ++m) {
    for (Eigen::Index j = 0; j < phi.size(); ++j) {
      t(j, L + m) = derivative ? azimuthal_dphi(m, phi[j]) : azimuthal(m, phi[j]);
    }
  }
  return t;
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
  Eigen::VectorXd x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[n - 1 - i] = z;
    w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

SHField SHField::basis(int L, int l, int m) {
  SHField f(L);
  f(l, m) = 1.0;
  return f;
}

SHField SHField::constant(double value) {
  SHField f(0);
  f(0, 0) = value * std::sqrt(4.0 * kPi);
  return f;
}

SHField SHField::resized(int band_limit) const {
  SHField out(band_limit);
  const int n = std::min(size(band_limit), size(L));
  out.coeffs.head(n) = coeffs.head(n);
  return out;
}

SphereGrid::SphereGrid(int n_theta, int n_phi, int table_degree)
    : n_theta_(n_theta), n_phi_(n_phi), lmax_(table_degree) {
  if (n_theta < 1 || n_phi < 1 || table_degree < 0) {
    throw Error(ErrorKind::Shape, "sphere3d", "SphereGrid", "grid dimensions must be positive");
  }
  std::tie(x_, w_) = gauss_legendre(n_theta);
  theta_ = x_.array().acos();
  s_ = (1.0 - x_.array().square()).sqrt();
  phi_.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) phi_[j] = 2.0 * kPi * j / n_phi;
  const int nt = tri(lmax_, lmax_) + 1;
  p_.resize(n_theta, nt);
  dp_.resize(n_theta, nt);
  Eigen::VectorXd p(nt), dp(nt);
  for (int i = 0; i < n_theta; ++i) {
    legendre_column(x_[i], s_[i], lmax_, p, dp);
    p_.row(i) = p.transpose();
    dp_.row(i) = dp.transpose();
  }
}

SphereGrid SphereGrid::for_band_limit(int L) { return SphereGrid(L + 1, 2 * L + 1, L); }

int SphereGrid::band_limit() const { return std::min({n_theta_ - 1, (n_phi_ - 1) / 2, lmax_}); }

void SphereGrid::check_band(int L, const char* op) const {
  if (L < 0 || L > lmax_ || n_theta_ < L + 1 || n_phi_ < 2 * L + 1) {
    throw Error(ErrorKind::Shape, "sphere3d", op,
                "grid does not resolve the band limit (need n_theta >= L+1, n_phi >= 2L+1)");
  }
}

Eigen::MatrixXd SphereGrid::synthesis(const SHField& f) const {
  if (f.L > lmax_) {
    throw Error(ErrorKind::Shape, "sphere3d", "sh_synthesis", "band limit exceeds the Legendre table");
  }
  const int L = f.L;
  // a(i, L + m) = sum_l c_{l,m} Pbar_l^{|m|}(x_i)
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_theta_, 2 * L + 1);
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      const double c = f(l, m);
      if (c != 0.0) a.col(L + m) += c * p_.col(tri(l, std::abs(m)));
    }
  }
  return a * azimuthal_table(phi_, L, false).transpose();
}

SHField SphereGrid::analysis(const Eigen::MatrixXd& values, int L) const {
  check_band(L, "sh_analysis");
  if (values.rows() != n_theta_ || values.cols() != n_phi_) {
    throw Error(ErrorKind::Shape, "sphere3d", "sh_analysis", "grid values do not match the grid");
  }
  // b(i, L + m) = (2 pi / n_phi) sum_j f_ij azimuthal(m, phi_j)
  const Eigen::MatrixXd b = values * azimuthal_table(phi_, L, false) * (2.0 * kPi / n_phi_);
  SHField out(L);
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      out(l, m) = (w_.array() * p_.col(tri(l, std::abs(m))).array() * b.col(L + m).array()).sum();
    }
  }
  return out;
}

double SphereGrid::integrate(const Eigen::MatrixXd& values) const {
  return (2.0 * kPi / n_phi_) * w_.dot(values.rowwise().sum());
}

TangentField TangentTensor::apply(const TangentField& v) const {
  return {tt.cwiseProduct(v.theta) + tp.cwiseProduct(v.phi), tp.cwiseProduct(v.theta) + pp.cwiseProduct(v.phi)};
}

Eigen::MatrixXd dot(const TangentField& u, const TangentField& v) {
  return u.theta.cwiseProduct(v.theta) + u.phi.cwiseProduct(v.phi);
}

TangentField scale(const Eigen::MatrixXd& a, const TangentField& v) {
  return {a.cwiseProduct(v.theta), a.cwiseProduct(v.phi)};
}

TangentField surface_gradient(const SphereGrid& grid, const SHField& f) {
  if (f.L > grid.table_degree()) {
    throw Error(ErrorKind::Shape, "sphere3d", "surface_gradient", "band limit exceeds the Legendre table");
  }
  const int L = f.L, nt = grid.n_theta();
  Eigen::MatrixXd dth = Eigen::MatrixXd::Zero(nt, 2 * L + 1);
  Eigen::MatrixXd ovs = Eigen::MatrixXd::Zero(nt, 2 * L + 1);
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      const double c = f(l, m);
      if (c == 0.0) continue;
      for (int i = 0; i < nt; ++i) {
        dth(i, L + m) += c * grid.legendre_dtheta(l, std::abs(m), i);
        ovs(i, L + m) += c * grid.legendre(l, std::abs(m), i) / grid.sin_theta()[i];
      }
    }
  }
  return {dth * azimuthal_table(grid.phi(), L, false).transpose(),
          ovs * azimuthal_table(grid.phi(), L, true).transpose()};
}

SHField surface_divergence(const SphereGrid& grid, const TangentField& v, int L) {
  if (L > grid.band_limit()) {
    throw Error(ErrorKind::Shape, "sphere3d", "surface_divergence", "output band limit exceeds grid resolution");
  }
  const int nt = grid.n_theta();
  const Eigen::MatrixXd bt = v.theta * azimuthal_table(grid.phi(), L, false);
  const Eigen::MatrixXd bp = v.phi * azimuthal_table(grid.phi(), L, true);
  SHField out(L);
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      double sum = 0.0;
      for (int i = 0; i < nt; ++i) {
        sum += grid.weight(i) * (grid.legendre_dtheta(l, std::abs(m), i) * bt(i, L + m) +
                       grid.legendre(l, std::abs(m), i) / grid.sin_theta()[i] * bp(i, L + m));
      }
      out(l, m) = -sum;
    }
  }
  return out;
}

double evaluate(const SHField& f, double theta, double phi) {
  const int nt = tri(f.L, f.L) + 1;
  Eigen::VectorXd p(nt), dp(nt);
  const double s = std::max(std::sin(theta), 1e-300);
  legendre_column(std::cos(theta), s, f.L, p, dp);
  double v = 0.0;
  for (int l = 0; l <= f.L; ++l) {
    for (int m = -l; m <= l; ++m) v += f(l, m) * p[tri(l, std::abs(m))] * azimuthal(m, phi);
  }
  return v;
}

std::pair<double, int> ball_spectrum(int k) {
  if (k == 0) {
    throw Error(ErrorKind::EInfinity, "sphere3d", "ball_spectrum",
                "degree 0 is the interior-constant plasmon (eps = infinity)");
  }
  if (k < 0) throw Error(ErrorKind::Input, "sphere3d", "ball_spectrum", "degree must be >= 1");
  return {(k + 1.0) / k, 2 * k + 1};
}

SHField dtn_sphere_apply(const SHField& f, Side side) {
  SHField out = f;
  for (int l = 0; l <= f.L; ++l) {
    const double mult = side == Side::Interior ? l : -(l + 1.0);
    for (int m = -l; m <= l; ++m) out(l, m) *= mult;
  }
  return out;
}

SphereGeometry SphereGeometry::unit(const SphereGrid& grid) {
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(grid.n_theta(), grid.n_phi());
  return {SHField::constant(-1.0), SHField::constant(1.0), {zero, zero, zero}};
}

}  // namespace plasmon::sphere
