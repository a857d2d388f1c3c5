#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace plasmon::validation {

struct Options {
  int n = 128;         // boundary nodes for the circle, ellipse and g0 checks
  int n_kite = 256;    // boundary nodes for the clustering check
  std::uint64_t seed = 1;
  int threads = 1;
  std::map<std::string, double> tolerances;  // overrides of default_tolerances()
};

/// Named tolerances used by the acceptance checks.
std::map<std::string, double> default_tolerances();

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;     // one-line description of the decisive numbers
  nlohmann::json values;   // deterministic sub-values
  double seconds = 0.0;    // wall time, reported separately from `values`
};

/// Runs the eleven acceptance criteria in order. A criterion that throws is recorded
/// as failed with the error message and the suite continues.
std::vector<CriterionResult> run_acceptance(const Options& options);

/// One aligned `PASS`/`FAIL` line per criterion.
std::string format_table(const std::vector<CriterionResult>& results);

/// Radial Fourier coefficients of the kite-like test curve.
std::vector<double> kite_radius_cos();
std::vector<double> kite_radius_sin();

/// k = 1 branch-z epsilon-ddot for a = Y_{2,0}, frozen from a converged run.
inline constexpr double kGoldenEpsddotY20 = 3.028491202834;

}  // namespace plasmon::validation
