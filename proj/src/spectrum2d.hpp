#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "bem2d.hpp"

namespace plasmon::spectrum {

enum class Route { Dtn, Np };

std::string to_string(Route route);

/// Statistics of the full computed spectrum ordered by decreasing |eps - 1|.
struct ClusteringStats {
  int tail_start = 20;             // eigenvalues with index k > tail_start form the tail
  double tail_mean = 0.0;          // mean |eps_k - 1| over the tail
  double tail_max = 0.0;           // max |eps_k - 1| over the tail
  int window = 20;                 // tail window length
  std::vector<double> window_max;  // max |eps_k - 1| per successive tail window
};

struct PlasmonicSpectrum {
  Route route = Route::Dtn;
  // Selected eigenpairs (the `num` largest |eps - 1|), stored ascending by eps.
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenfunctions;  // columns g_k with <g_k, N- g_k> = 1 (dtn route only)
  std::vector<double> residuals;   // ||(eps N- + N+) g||_w, or ||K* phi - lambda phi||_w / ||phi||_w
  // Every computed eigenvalue, ordered by decreasing |eps - 1|.
  std::vector<double> all_by_distance;
  ClusteringStats clustering;
};

/// Full eigen-decomposition on the mean-zero subspace: eigenvalues ascending and the
/// corresponding eigenfunctions normalized by <g, N- g> = 1 and (., .)_+ orthogonal.
struct FullSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenfunctions;
};

FullSpectrum solve_all(const bem::DtNPair& dtn);

/// (eps N- + N+) g = 0 on the complement of the constants.
PlasmonicSpectrum solve_plasmonic(const bem::DtNPair& dtn, int num);

/// Plasmonic eigenvalues from the eigenvalues lambda != 1/2 of K*, eps = (1 + 2 lambda) / (1 - 2 lambda).
PlasmonicSpectrum np_route(const bem::BoundaryOperator& kstar, int num);

double eps_from_np(double lambda);

/// -<g, N+ g> / <g, N- g>. Throws EInfinity when g is (numerically) constant.
double rayleigh(const Eigen::VectorXd& g, const bem::DtNPair& dtn);

/// (g, g')_+ = -<g, N+ g'>.
double plus_product(const Eigen::VectorXd& g, const Eigen::VectorXd& h, const bem::DtNPair& dtn);

ClusteringStats clustering_stats(const std::vector<double>& by_distance, int tail_start = 20, int window = 20);

/// Weighted mean-zero projection g - (<g,1>/<1,1>) 1.
Eigen::VectorXd project_mean_zero(const Eigen::VectorXd& g, const Eigen::VectorXd& weights);

}  // namespace plasmon::spectrum
