#pragma once

#include <Eigen/Core>
#include <vector>

namespace plasmon {

/// Real trigonometric polynomial f(t) = c_0 + sum_{m>=1} (c_m cos mt + s_m sin mt).
///
/// `cos_coeffs[m]` multiplies cos(mt) for m >= 0. `sin_coeffs[m-1]` multiplies sin(mt),
/// so the sine list starts at m = 1. This is also the on-disk encoding of radial curves
/// and 2D shape functions.
class TrigSeries {
 public:
  TrigSeries() = default;
  TrigSeries(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static TrigSeries constant(double value) { return TrigSeries({value}, {}); }

  /// Least-squares (interpolatory) fit from values on the uniform grid t_j = 2 pi j / M.
  /// The Nyquist mode is dropped; trailing coefficients below `drop_below` are trimmed.
  static TrigSeries fit(const Eigen::VectorXd& samples, double drop_below = 0.0);

  /// d-th derivative at t.
  double eval(double t, int derivative = 0) const;

  /// Values on the uniform grid of n points.
  Eigen::VectorXd sample(int n, int derivative = 0) const;

  int degree() const;
  bool is_constant(double tol = 0.0) const;

  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }

  TrigSeries operator*(double s) const;
  TrigSeries operator+(const TrigSeries& other) const;

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Uniform periodic grid helpers (t_j = 2 pi j / n).
namespace periodic {

Eigen::VectorXd grid(int n);

/// Spectral derivative d/dt of samples on the uniform grid. The Nyquist mode is
/// treated as cos(n t / 2) and its derivative is dropped.
Eigen::VectorXd derivative(const Eigen::VectorXd& samples);

/// Fourier mode e^{ilt} sampled on the grid, real part (cos) if l >= 0 and sin(|l| t) if l < 0.
Eigen::VectorXd mode(int n, int l);

}  // namespace periodic

}  // namespace plasmon
