#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace plasmon::oracle {
namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre rule on [lo, hi] by Newton iteration on P_n.
void gauss_rule(int n, double lo, double hi, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5)), dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    x[i] = lo + 0.5 * (hi - lo) * (z + 1.0);
    w[i] = (hi - lo) / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

std::vector<double> ellipse_eigenvalues(double a, double b, int kmax) {
  const double xi0 = std::atanh(b / a);
  std::vector<double> out;
  for (int k = 1; k <= kmax; ++k) {
    out.push_back(1.0 / std::tanh(k * xi0));
    out.push_back(std::tanh(k * xi0));
  }
  return out;
}

std::vector<double> ellipse_np_eigenvalues(double a, double b, int kmax) {
  const double q = (a - b) / (a + b);
  std::vector<double> out;
  for (int k = 1; k <= kmax; ++k) {
    out.push_back(0.5 * std::pow(q, k));
    out.push_back(-0.5 * std::pow(q, k));
  }
  return out;
}

std::vector<double> farthest_from_one(std::vector<double> values, int num) {
  std::stable_sort(values.begin(), values.end(),
                   [](double x, double y) { return std::abs(x - 1.0) > std::abs(y - 1.0); });
  values.resize(std::min<std::size_t>(values.size(), static_cast<std::size_t>(num)));
  std::sort(values.begin(), values.end());
  return values;
}

double ball_disk_integral(const std::function<double(double, double, double)>& a, int n_psi, int n_phi) {
  std::vector<double> psi, w;
  gauss_rule(n_psi, 0.0, 0.5 * kPi, psi, w);
  double sum = 0.0;
  for (int i = 0; i < n_psi; ++i) {
    const double rho = std::sin(psi[i]), z = std::cos(psi[i]);
    // dx dy / sqrt(1 - rho^2) = rho d(rho) dphi / cos(psi) = sin(psi) dpsi dphi
    double ring = 0.0;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * j / n_phi;
      const double x = rho * std::cos(phi), y = rho * std::sin(phi);
      ring += a(x, y, z) + a(x, y, -z);
    }
    sum += w[i] * ring * (2.0 * kPi / n_phi) * (3.0 * rho * rho - 2.0) * rho;
  }
  return 9.0 / (4.0 * kPi) * sum;
}

double wigner3j_000(int l1, int l2, int l3) {
  const int j = l1 + l2 + l3;
  if (j % 2 != 0 || l3 > l1 + l2 || l3 < std::abs(l1 - l2)) return 0.0;
  const int g = j / 2;
  const double log_mag = 0.5 * (std::lgamma(j - 2 * l1 + 1.0) + std::lgamma(j - 2 * l2 + 1.0) +
                                std::lgamma(j - 2 * l3 + 1.0) - std::lgamma(j + 2.0)) +
                         std::lgamma(g + 1.0) - std::lgamma(g - l1 + 1.0) - std::lgamma(g - l2 + 1.0) -
                         std::lgamma(g - l3 + 1.0);
  return (g % 2 == 0 ? 1.0 : -1.0) * std::exp(log_mag);
}

double gaunt_zonal(int l1, int l2, int l3) {
  const double w = wigner3j_000(l1, l2, l3);
  return std::sqrt((2.0 * l1 + 1.0) * (2.0 * l2 + 1.0) * (2.0 * l3 + 1.0) / (4.0 * kPi)) * w * w;
}

}  // namespace plasmon::oracle
