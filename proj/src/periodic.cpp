#include "periodic.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>

#include "error.hpp"

namespace plasmon {

TrigSeries::TrigSeries(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  if (cos_.empty()) cos_.push_back(0.0);
}

TrigSeries TrigSeries::fit(const Eigen::VectorXd& samples, double drop_below) {
  const auto n = static_cast<int>(samples.size());
  if (n < 2 || n % 2 != 0) {
    throw Error(ErrorKind::Shape, "periodic", "fit", "sample count must be even and >= 2");
  }
  Eigen::FFT<double> fft;
  std::vector<double> in(samples.data(), samples.data() + n);
  std::vector<std::complex<double>> coef;
  fft.fwd(coef, in);

  const int half = n / 2;
  std::vector<double> c(half), s(half - 1);
  c[0] = coef[0].real() / n;
  for (int m = 1; m < half; ++m) {
    c[m] = 2.0 * coef[m].real() / n;
    s[m - 1] = -2.0 * coef[m].imag() / n;
  }
  if (drop_below > 0.0) {
    int last = half - 1;
    while (last > 0 && std::abs(c[last]) <= drop_below && std::abs(s[last - 1]) <= drop_below) --last;
    c.resize(last + 1);
    s.resize(last);
  }
  return TrigSeries(std::move(c), std::move(s));
}

double TrigSeries::eval(double t, int derivative) const {
  // d^k/dt^k of cos(mt) and sin(mt) cycle through (cos, -sin, -cos, sin) scaled by m^k.
  double value = derivative == 0 ? cos_[0] : 0.0;
  const int terms = degree();
  for (int m = 1; m <= terms; ++m) {
    const double cm = m < static_cast<int>(cos_.size()) ? cos_[m] : 0.0;
    const double sm = m - 1 < static_cast<int>(sin_.size()) ? sin_[m - 1] : 0.0;
    if (cm == 0.0 && sm == 0.0) continue;
    const double ct = std::cos(m * t), st = std::sin(m * t);
    const double scale = std::pow(static_cast<double>(m), derivative);
    double dc = 0.0, ds = 0.0;  // derivative of cos(mt), sin(mt) without scale
    switch (derivative % 4) {
      case 0: dc = ct; ds = st; break;
      case 1: dc = -st; ds = ct; break;
      case 2: dc = -ct; ds = -st; break;
      case 3: dc = st; ds = -ct; break;
    }
    value += scale * (cm * dc + sm * ds);
  }
  return value;
}

Eigen::VectorXd TrigSeries::sample(int n, int derivative) const {
  Eigen::VectorXd out(n);
  const double dt = 2.0 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j) out[j] = eval(j * dt, derivative);
  return out;
}

int TrigSeries::degree() const {
  return std::max(static_cast<int>(cos_.size()) - 1, static_cast<int>(sin_.size()));
}

bool TrigSeries::is_constant(double tol) const {
  for (std::size_t m = 1; m < cos_.size(); ++m)
    if (std::abs(cos_[m]) > tol) return false;
  for (double s : sin_)
    if (std::abs(s) > tol) return false;
  return true;
}

TrigSeries TrigSeries::operator*(double s) const {
  TrigSeries out = *this;
  for (double& c : out.cos_) c *= s;
  for (double& c : out.sin_) c *= s;
  return out;
}

TrigSeries TrigSeries::operator+(const TrigSeries& other) const {
  std::vector<double> c(std::max(cos_.size(), other.cos_.size()), 0.0);
  std::vector<double> s(std::max(sin_.size(), other.sin_.size()), 0.0);
  for (std::size_t i = 0; i < cos_.size(); ++i) c[i] += cos_[i];
  for (std::size_t i = 0; i < other.cos_.size(); ++i) c[i] += other.cos_[i];
  for (std::size_t i = 0; i < sin_.size(); ++i) s[i] += sin_[i];
  for (std::size_t i = 0; i < other.sin_.size(); ++i) s[i] += other.sin_[i];
  return TrigSeries(std::move(c), std::move(s));
}

namespace periodic {

Eigen::VectorXd grid(int n) {
  return Eigen::VectorXd::LinSpaced(n, 0.0, 2.0 * std::numbers::pi * (n - 1) / n);
}

Eigen::VectorXd derivative(const Eigen::VectorXd& samples) {
  const auto n = static_cast<int>(samples.size());
  Eigen::FFT<double> fft;
  std::vector<double> in(samples.data(), samples.data() + n);
  std::vector<std::complex<double>> coef;
  fft.fwd(coef, in);
  for (int m = 0; m < n; ++m) {
    int freq = m <= n / 2 ? m : m - n;
    if (n % 2 == 0 && m == n / 2) freq = 0;
    coef[m] *= std::complex<double>(0.0, static_cast<double>(freq));
  }
  std::vector<double> out;
  fft.inv(out, coef);
  return Eigen::Map<Eigen::VectorXd>(out.data(), n);
}

Eigen::VectorXd mode(int n, int l) {
  const Eigen::VectorXd t = grid(n);
  if (l >= 0) return (static_cast<double>(l) * t).array().cos();
  return (static_cast<double>(-l) * t).array().sin();
}

}  // namespace periodic

}  // namespace plasmon
