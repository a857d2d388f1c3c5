#include "validation.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "bem2d.hpp"
#include "curve2d.hpp"
#include "dtn_shape.hpp"
#include "error.hpp"
#include "oracles.hpp"
#include "perturb.hpp"
#include "perturb2d.hpp"
#include "spectrum2d.hpp"
#include "sphere3d.hpp"

namespace plasmon::validation {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

class Tol {
 public:
  explicit Tol(const Options& o) : map_(default_tolerances()) {
    for (const auto& [k, v] : o.tolerances) {
      if (!map_.count(k)) throw Error(ErrorKind::Config, "validation", "tolerances", "unknown tolerance '" + k + "'");
      map_[k] = v;
    }
  }
  double operator[](const std::string& key) const { return map_.at(key); }

 private:
  std::map<std::string, double> map_;
};

std::string sci(double x) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << x;
  return os.str();
}

CriterionResult start(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

// Mean-zero random node vector normalized by <d, N- d> = 1.
Eigen::VectorXd random_direction(const bem::DtNPair& dtn, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd d(dtn.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = gauss(rng);
  d = spectrum::project_mean_zero(d, dtn.weights());
  return d / std::sqrt(bem::inner(d, dtn.n_minus.apply(d), dtn.weights()));
}

sphere::SHField random_shape(int L, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  sphere::SHField a(L);
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) a(l, m) = uni(rng) / (1.0 + l);
  }
  return a;
}

curve::CurveParam ellipse21() { return curve::CurveParam::ellipse(2.0, 1.0); }

CriterionResult disk_degeneracy(const Options& o, const Tol& tol) {
  CriterionResult r = start(1, "disk degeneracy");
  const auto t0 = Clock::now();
  const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(curve::CurveParam::circle(1.0), o.n));
  const spectrum::PlasmonicSpectrum sp = spectrum::solve_plasmonic(dtn, 20);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  double dev = 0.0;
  for (double e : sp.eigenvalues) dev = std::max(dev, std::abs(e - 1.0));
  r.values = {{"N", o.n}, {"count", sp.eigenvalues.size()}, {"max_deviation", dev}};
  r.passed = sp.eigenvalues.size() == 20 && dev <= tol["circle_eps"] && secs < tol["circle_seconds"];
  r.summary = "circle N=" + std::to_string(o.n) + ": max|eps-1| = " + sci(dev);
  r.seconds = secs;
  return r;
}

CriterionResult ellipse_oracle(const Options& o, const Tol& tol) {
  CriterionResult r = start(2, "ellipse oracle");
  const std::vector<double> ref = oracle::farthest_from_one(oracle::ellipse_eigenvalues(2.0, 1.0, 40), 10);
  const auto t0 = Clock::now();
  const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(ellipse21(), o.n));
  const spectrum::PlasmonicSpectrum sp = spectrum::solve_plasmonic(dtn, 10);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  double err = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) err = std::max(err, std::abs(sp.eigenvalues[i] - ref[i]));
  r.values = {{"N", o.n}, {"eigenvalues", sp.eigenvalues}, {"oracle", ref}, {"max_error", err}};
  r.passed = err <= tol["ellipse_oracle"] && secs < tol["ellipse_seconds"];
  r.summary = "ellipse(2,1) N=" + std::to_string(o.n) + ": max|eps-oracle| = " + sci(err);
  r.seconds = secs;
  return r;
}

CriterionResult clustering(const Options& o, const Tol& tol) {
  CriterionResult r = start(3, "clustering");
  const auto t0 = Clock::now();
  const auto kite = curve::CurveParam::radial(TrigSeries(kite_radius_cos(), kite_radius_sin()));
  const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(kite, o.n_kite));
  const spectrum::PlasmonicSpectrum sp = spectrum::solve_plasmonic(dtn, 20);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const spectrum::ClusteringStats& c = sp.clustering;
  // Windows whose maximum is below the floor are at round-off and carry no ordering.
  const double floor = tol["kite_noise_floor"];
  bool decreasing = c.window_max.size() >= 2;
  for (std::size_t i = 1; i < c.window_max.size(); ++i) {
    if (c.window_max[i - 1] < floor) break;
    decreasing = decreasing && c.window_max[i] < c.window_max[i - 1];
  }
  r.values = {{"N", o.n_kite},         {"tail_start", c.tail_start}, {"tail_mean", c.tail_mean},
              {"tail_max", c.tail_max}, {"window", c.window},         {"window_max", c.window_max},
              {"decreasing", decreasing}};
  r.passed = c.tail_max < tol["kite_tail"] && decreasing && secs < tol["kite_seconds"];
  r.summary = "kite N=" + std::to_string(o.n_kite) + ": tail max|eps-1| = " + sci(c.tail_max) +
              (decreasing ? ", windows decreasing" : ", windows not decreasing");
  r.seconds = secs;
  return r;
}

CriterionResult two_routes(const Options& o, const Tol& tol) {
  CriterionResult r = start(4, "two-route agreement");
  const curve::CurveSample s = curve::sample_curve(ellipse21(), o.n);
  const spectrum::PlasmonicSpectrum a = spectrum::solve_plasmonic(bem::build_dtn(s), 10);
  const spectrum::PlasmonicSpectrum b = spectrum::np_route(bem::assemble_np_adjoint(s), 10);
  double err = 0.0;
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) err = std::max(err, std::abs(a.eigenvalues[i] - b.eigenvalues[i]));
  r.values = {{"dtn", a.eigenvalues}, {"np", b.eigenvalues}, {"max_difference", err}};
  r.passed = err <= tol["routes"];
  r.summary = "ellipse(2,1): max|eps_dtn - eps_np| = " + sci(err);
  return r;
}

CriterionResult rayleigh_identity(const Options& o, const Tol& tol) {
  CriterionResult r = start(5, "rayleigh identity");
  const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(ellipse21(), o.n));
  const spectrum::PlasmonicSpectrum sp = spectrum::solve_plasmonic(dtn, 10);
  std::mt19937_64 rng(o.seed);
  const double s = 1e-5;
  double identity = 0.0, critical = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Eigen::VectorXd g = sp.eigenfunctions.col(k);
    identity = std::max(identity, std::abs(spectrum::rayleigh(g, dtn) - sp.eigenvalues[k]));
    for (int j = 0; j < 2; ++j) {
      const Eigen::VectorXd d = random_direction(dtn, rng);
      const double fd = (spectrum::rayleigh(g + s * d, dtn) - spectrum::rayleigh(g - s * d, dtn)) / (2.0 * s);
      critical = std::max(critical, std::abs(fd));
    }
  }
  r.values = {{"identity_error", identity}, {"directions", 20}, {"step", s}, {"max_directional_derivative", critical}};
  r.passed = identity <= tol["rayleigh"] && critical <= tol["criticality"];
  r.summary = "max|R(g_k)-eps_k| = " + sci(identity) + ", max|dR| over 20 directions = " + sci(critical);
  return r;
}

CriterionResult ball(const Options&, const Tol&) {
  CriterionResult r = start(6, "ball spectrum");
  const int L = 11;
  bool ok = true;
  json rows = json::array();
  for (int k = 1; k <= 10; ++k) {
    const auto [eps, mult] = sphere::ball_spectrum(k);
    int count = 0;
    for (int l = 1; l <= L; ++l) {
      for (int m = -l; m <= l; ++m) {
        const sphere::SHField f = sphere::SHField::basis(L, l, m);
        const double inner = sphere::dtn_sphere_apply(f, sphere::Side::Interior)(l, m);
        const double outer = sphere::dtn_sphere_apply(f, sphere::Side::Exterior)(l, m);
        if (-outer / inner == eps) ++count;
      }
    }
    const bool exact = eps == (k + 1.0) / k && count == mult && mult == 2 * k + 1;
    ok = ok && exact;
    rows.push_back({{"k", k}, {"epsilon", eps}, {"multiplicity", count}});
  }
  r.values = {{"degrees", rows}};
  r.passed = ok;
  r.summary = ok ? "k=1..10: eps=(k+1)/k with multiplicity 2k+1" : "multiplier arithmetic mismatch";
  return r;
}

CriterionResult first_order_sphere(const Options&, const Tol& tol) {
  CriterionResult r = start(7, "first-order sphere");
  double q1_norm = 0.0;
  for (int k = 1; k <= 3; ++k) q1_norm = std::max(q1_norm, perturb::q1_matrix(k, sphere::SHField::constant(1.0)).q1.norm());

  const perturb::FirstOrderReport first = perturb::q1_matrix(1, sphere::SHField::basis(2, 2, 0));
  const double branch_z = first.epsdot[first.branch_along(0)];
  const double c20 = std::sqrt(5.0 / (16.0 * std::numbers::pi));
  const double disk = oracle::ball_disk_integral([&](double, double, double z) { return c20 * (3.0 * z * z - 1.0); });
  const double err = std::abs(branch_z - disk);
  r.values = {{"q1_norm_constant_shape", q1_norm},
              {"branch_z", branch_z},
              {"disk_integral", disk},
              {"disk_integral_error", err},
              {"negated_disk_integral_error", std::abs(branch_z + disk)}};
  r.passed = q1_norm <= tol["q1_constant"] && err <= tol["disk_integral"];
  r.summary = "a=1: max||q1|| = " + sci(q1_norm) + "; Y20 branch z " + std::to_string(branch_z) +
              " vs disk integral " + std::to_string(disk);
  return r;
}

CriterionResult second_order_sphere(const Options& o, const Tol& tol) {
  CriterionResult r = start(8, "second-order sphere");
  double constant = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (const auto& b : perturb::sphere_perturbation(k, sphere::SHField::constant(1.0), o.seed).branches) {
      constant = std::max(constant, std::abs(b.epsddot));
    }
  }
  std::mt19937_64 rng(o.seed);
  double gauge = 0.0, compat = 0.0;
  for (int i = 0; i < 5; ++i) {
    const int k = 1 + i % 2;
    const perturb::PerturbReport rep = perturb::sphere_perturbation(k, random_shape(3, rng), o.seed + 100 * i);
    for (const auto& b : rep.branches) {
      gauge = std::max(gauge, b.gauge_residual);
      compat = std::max(compat, b.compatibility_residual);
    }
  }
  const perturb::PerturbReport y20 = perturb::sphere_perturbation(1, sphere::SHField::basis(2, 2, 0), o.seed);
  const double golden = y20.branches[y20.first.branch_along(0)].epsddot;
  const double golden_err = std::abs(golden - kGoldenEpsddotY20);
  r.values = {{"epsddot_constant_shape", constant},
              {"gauge_residual", gauge},
              {"compatibility_residual", compat},
              {"golden", golden},
              {"golden_reference", kGoldenEpsddotY20},
              {"golden_error", golden_err}};
  r.passed = constant <= tol["epsddot_constant"] && gauge <= tol["gauge"] && compat <= tol["compatibility"] &&
             golden_err <= tol["golden"];
  r.summary = "a=1: max|epsddot| = " + sci(constant) + ", gauge " + sci(gauge) + ", compat " + sci(compat) +
              ", golden err " + sci(golden_err);
  return r;
}

CriterionResult fd_2d(const Options& o, const Tol& tol) {
  CriterionResult r = start(9, "2D first order vs FD");
  const auto t0 = Clock::now();
  const std::vector<double> h_list{0.04, 0.02, 0.01};
  const perturb::EpsdotFdReport rep =
      perturb::validate_epsdot_2d(ellipse21(), TrigSeries({0.0, 0.0, 1.0}, {}), o.n, 10, 0, h_list, o.threads);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  r.values = {{"epsilon", rep.epsilon},   {"epsdot", rep.epsdot},       {"h_list", rep.h_list},
              {"central", rep.central},   {"errors", rep.errors},       {"slope", rep.slope},
              {"richardson", rep.richardson}, {"richardson_error", rep.richardson_error},
              {"min_overlap", rep.min_overlap}};
  r.passed = std::abs(rep.slope - 2.0) <= tol["fd_slope"] && rep.richardson_error <= tol["richardson"] &&
             secs < tol["fd_seconds"];
  r.summary = "eps=" + std::to_string(rep.epsilon) + ": slope " + std::to_string(rep.slope) + ", extrapolated error " +
              sci(rep.richardson_error);
  r.seconds = secs;
  return r;
}

CriterionResult dtn_derivative(const Options& o, const Tol& tol) {
  CriterionResult r = start(10, "DtN shape derivative");
  const int lmax = o.n / 4;
  const double oracle_in = dtn_shape::circle_oracle_error(o.n, lmax, dtn_shape::Side::Interior);
  const double oracle_out = dtn_shape::circle_oracle_error(o.n, lmax, dtn_shape::Side::Exterior);
  const std::vector<double> h_list{0.02, 0.01, 0.005};
  const TrigSeries a({0.0, 0.0, 1.0}, {});
  const auto in = dtn_shape::operator_fd_test(ellipse21(), a, o.n, h_list, dtn_shape::Side::Interior, 0, o.threads);
  const auto out = dtn_shape::operator_fd_test(ellipse21(), a, o.n, h_list, dtn_shape::Side::Exterior, 0, o.threads);
  r.values = {{"circle_oracle_error", {{"interior", oracle_in}, {"exterior", oracle_out}}},
              {"h_list", h_list},
              {"band", in.band},
              {"interior", {{"slope_one_sided", in.slope_one_sided}, {"slope_central", in.slope_central},
                            {"central_errors", in.central_errors}}},
              {"exterior", {{"slope_one_sided", out.slope_one_sided}, {"slope_central", out.slope_central},
                            {"central_errors", out.central_errors}}}};
  r.passed = std::max(oracle_in, oracle_out) <= tol["dtn_oracle"] && in.slope_central >= tol["dtn_slope"] &&
             out.slope_central >= tol["dtn_slope"];
  r.summary = "circle oracle " + sci(std::max(oracle_in, oracle_out)) + "; central slope interior " +
              std::to_string(in.slope_central) + ", exterior " + std::to_string(out.slope_central);
  return r;
}

CriterionResult g0_checks(const Options& o, const Tol& tol) {
  CriterionResult r = start(11, "g0 characterization");
  const bem::DtNPair circle = bem::build_dtn(curve::sample_curve(curve::CurveParam::circle(1.0), o.n));
  const Eigen::VectorXd gc = bem::compute_g0(circle);
  const double spread_circle = gc.maxCoeff() - gc.minCoeff();

  const bem::DtNPair ell = bem::build_dtn(curve::sample_curve(ellipse21(), o.n));
  const Eigen::VectorXd ge = bem::compute_g0(ell);
  const double ratio = ge.maxCoeff() / ge.minCoeff();
  const Eigen::VectorXd ge2 = bem::compute_g0(ell, curve::Vec2(0.7, -0.3));
  const double base_point = (ge - ge2).cwiseAbs().maxCoeff();

  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double far = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd g(o.n);
    for (int i = 0; i < o.n; ++i) g[i] = gauss(rng);
    // Remove the g0 component in <., .>, then normalize.
    g -= (bem::inner(g, ge, ell.weights()) / bem::inner(ge, ge, ell.weights())) * ge;
    g /= std::sqrt(bem::inner(g, g, ell.weights()));
    far = std::max(far, std::abs(bem::far_field_log_coefficient(ell, g)));
  }
  r.values = {{"circle_spread", spread_circle},
              {"ellipse_max_over_min", ratio},
              {"base_point_difference", base_point},
              {"far_field_coefficient", far}};
  r.passed = spread_circle <= tol["g0_constant"] && ratio - 1.0 >= tol["g0_nonconstant"] &&
             base_point <= tol["g0_base_point"] && far <= tol["far_field"];
  r.summary = "circle spread " + sci(spread_circle) + ", ellipse max/min " + std::to_string(ratio) + ", base point " +
              sci(base_point) + ", far field " + sci(far);
  return r;
}

}  // namespace

std::map<std::string, double> default_tolerances() {
  return {
      {"circle_eps", 1e-8},       {"circle_seconds", 1.0},   {"ellipse_oracle", 1e-8},
      {"ellipse_seconds", 2.0},   {"kite_tail", 0.05},       {"kite_noise_floor", 1e-10},
      {"kite_seconds", 5.0},      {"routes", 1e-8},          {"rayleigh", 1e-8},
      {"criticality", 1e-6},      {"q1_constant", 1e-10},    {"disk_integral", 1e-8},
      {"epsddot_constant", 1e-8}, {"gauge", 1e-10},          {"compatibility", 1e-8},
      {"golden", 1e-10},          {"fd_slope", 0.2},         {"richardson", 1e-6},
      {"fd_seconds", 20.0},       {"dtn_oracle", 1e-8},      {"dtn_slope", 1.8},
      {"g0_constant", 1e-8},      {"g0_nonconstant", 1e-3},  {"g0_base_point", 1e-8},
      {"far_field", 1e-8},
  };
}

std::vector<double> kite_radius_cos() { return {1.0, 0.15, 0.4, 0.1}; }
std::vector<double> kite_radius_sin() { return {}; }

std::vector<CriterionResult> run_acceptance(const Options& options) {
  const Tol tol(options);
  using Check = std::function<CriterionResult(const Options&, const Tol&)>;
  const std::vector<std::pair<std::string, Check>> checks{
      {"disk degeneracy", disk_degeneracy},
      {"ellipse oracle", ellipse_oracle},
      {"clustering", clustering},
      {"two-route agreement", two_routes},
      {"rayleigh identity", rayleigh_identity},
      {"ball spectrum", ball},
      {"first-order sphere", first_order_sphere},
      {"second-order sphere", second_order_sphere},
      {"2D first order vs FD", fd_2d},
      {"DtN shape derivative", dtn_derivative},
      {"g0 characterization", g0_checks},
  };
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto t0 = Clock::now();
    try {
      out.push_back(checks[i].second(options, tol));
      // Timed criteria report their solve time; the rest report the whole check.
      if (out.back().seconds == 0.0) out.back().seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    } catch (const std::exception& e) {
      CriterionResult r = start(static_cast<int>(i) + 1, checks[i].first);
      r.summary = std::string("error: ") + e.what();
      r.values = {{"error", e.what()}};
      out.push_back(r);
    }
  }
  return out;
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.name;
    for (std::size_t pad = r.name.size(); pad < 22; ++pad) os << ' ';
    os << "  " << r.summary << '\n';
  }
  return os.str();
}

}  // namespace plasmon::validation
