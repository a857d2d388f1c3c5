#include "jobs.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bem2d.hpp"
#include "config.hpp"
#include "dtn_shape.hpp"
#include "error.hpp"
#include "perturb.hpp"
#include "perturb2d.hpp"
#include "spectrum2d.hpp"
#include "validation.hpp"

#ifndef PLASMON_VERSION
#define PLASMON_VERSION "0.0.0"
#endif

namespace plasmon::jobs {
namespace {

using json = nlohmann::json;
using config::get_bool;
using config::get_double;
using config::get_double_list;
using config::get_int;
using config::get_string;

const std::vector<double> kDefaultSteps{0.04, 0.02, 0.01};

struct Checks {
  json list = json::array();
  bool all = true;

  void add(const std::string& name, double value, double tolerance, bool passed) {
    list.push_back({{"name", name}, {"value", value}, {"tolerance", tolerance}, {"passed", passed}});
    all = all && passed;
  }
  void at_most(const std::string& name, double value, double tolerance) {
    add(name, value, tolerance, value <= tolerance);
  }
};

// User overrides in the "tolerances" block; unknown names are rejected.
std::map<std::string, double> tolerances(const json& cfg, std::map<std::string, double> defaults) {
  if (!cfg.contains("tolerances")) return defaults;
  const json& t = cfg["tolerances"];
  if (!t.is_object()) throw Error(ErrorKind::Config, "config", "tolerances", "expected an object");
  for (const auto& item : t.items()) {
    if (!defaults.count(item.key())) {
      throw Error(ErrorKind::Config, "config", "tolerances", "unknown tolerance '" + item.key() + "'");
    }
    if (!item.value().is_number()) {
      throw Error(ErrorKind::Config, "config", "tolerances", "'" + item.key() + "' must be a number");
    }
    defaults[item.key()] = item.value().get<double>();
  }
  return defaults;
}

double constant_value(const TrigSeries& s) { return s.cos_coeffs().empty() ? 0.0 : s.cos_coeffs()[0]; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json matrix_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void write_operator(const std::filesystem::path& dir, const std::string& name, const Eigen::MatrixXd& m,
                    const std::string& curve_hash) {
  std::filesystem::create_directories(dir);
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  std::ofstream bin(dir / (name + ".bin"), std::ios::binary);
  bin.write(reinterpret_cast<const char*>(rm.data()), static_cast<std::streamsize>(rm.size() * sizeof(double)));
  const json header{{"operator", name}, {"N", m.rows()},        {"rows", m.rows()},
                    {"cols", m.cols()}, {"dtype", "float64"},   {"layout", "row-major"},
                    {"curve_hash", curve_hash}};
  std::ofstream(dir / (name + ".json")) << header.dump(2) << '\n';
  if (!bin || !std::filesystem::exists(dir / (name + ".json"))) {
    throw Error(ErrorKind::Input, "cli", "dump_operators", "cannot write to " + dir.string());
  }
}

JobResult spectrum_job(const json& cfg, const JobContext& ctx) {
  config::require_keys(cfg, {"curve", "N", "num_eigs", "route", "scale", "dump_operators", "tolerances"}, "spectrum");
  if (!cfg.contains("curve")) throw Error(ErrorKind::Config, "config", "spectrum", "missing 'curve'");
  const curve::CurveParam base = config::parse_curve(cfg["curve"]);
  const int n = get_int(cfg, "N", 128);
  const int num = get_int(cfg, "num_eigs", 10);
  const std::string route_name = get_string(cfg, "route", "dtn");
  const double scale = get_double(cfg, "scale", 1.0);
  const bool dump = get_bool(cfg, "dump_operators", false);
  const auto tol = tolerances(cfg, {{"residual", 1e-8}});
  if (route_name != "dtn" && route_name != "np") {
    throw Error(ErrorKind::Config, "config", "spectrum", "route must be \"dtn\" or \"np\"");
  }
  if (!(scale > 0.0)) throw Error(ErrorKind::Config, "config", "spectrum", "scale must be positive");
  if (dump && ctx.out_dir.empty()) {
    throw Error(ErrorKind::Config, "config", "spectrum", "dump_operators requires an output directory");
  }

  const curve::CurveParam c = scale == 1.0 ? base : base.scaled(scale);
  const curve::CurveSample sample = curve::sample_curve(c, n);
  spectrum::PlasmonicSpectrum sp;
  if (route_name == "dtn") {
    const bem::DtNPair dtn = bem::build_dtn(sample);
    sp = spectrum::solve_plasmonic(dtn, num);
    if (dump) {
      const std::string hash = fnv1a_hex(c.describe());
      const std::filesystem::path dir = std::filesystem::path(ctx.out_dir) / "operators";
      write_operator(dir, "n_minus", dtn.n_minus.matrix, hash);
      write_operator(dir, "n_plus", dtn.n_plus.matrix, hash);
      write_operator(dir, "single_layer", dtn.single_layer.matrix, hash);
      write_operator(dir, "np_adjoint", dtn.np_adjoint.matrix, hash);
    }
  } else {
    const bem::BoundaryOperator kstar = bem::assemble_np_adjoint(sample);
    sp = spectrum::np_route(kstar, num);
    if (dump) {
      write_operator(std::filesystem::path(ctx.out_dir) / "operators", "np_adjoint", kstar.matrix,
                     fnv1a_hex(c.describe()));
    }
  }

  Checks checks;
  double worst = 0.0;
  for (double res : sp.residuals) worst = std::max(worst, res);
  checks.at_most("residual", worst, tol.at("residual"));

  JobResult out;
  out.record["outputs"] = {
      {"curve", cfg["curve"]},
      {"N", n},
      {"route", route_name},
      {"eigenvalues", sp.eigenvalues},
      {"residuals", sp.residuals},
      {"clustering", {{"tail_mean", sp.clustering.tail_mean}, {"tail_max", sp.clustering.tail_max}}},
  };
  out.record["checks"] = checks.list;
  out.passed = checks.all;
  std::ostringstream csv;
  csv << "k,epsilon,residual\n";
  for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
    csv << k + 1 << ',' << fmt(sp.eigenvalues[k]) << ',' << fmt(sp.residuals[k]) << '\n';
  }
  out.csv = csv.str();
  return out;
}

JobResult sphere_perturb_job(const json& cfg, const JobContext& ctx) {
  config::require_keys(cfg, {"geometry", "k", "shape", "gauge", "tolerances"}, "perturb");
  const int k = get_int(cfg, "k", 1);
  if (get_string(cfg, "gauge", "zeroE") != "zeroE") {
    throw Error(ErrorKind::Config, "config", "perturb", "the only supported gauge is \"zeroE\"");
  }
  if (!cfg.contains("shape")) throw Error(ErrorKind::Config, "config", "perturb", "missing 'shape'");
  const sphere::SHField a = config::parse_sh_field(cfg["shape"]);
  const auto tol = tolerances(cfg, {{"symmetry", 1e-10},
                                    {"compatibility", perturb::kCompatibilityTolerance},
                                    {"gauge", 1e-10},
                                    {"system", 1e-10},
                                    {"scale_invariance", 1e-8}});

  const perturb::PerturbReport rep = perturb::sphere_perturbation(k, a, ctx.seed);
  Checks checks;
  checks.at_most("q1_symmetry", rep.first.symmetry_residual, tol.at("symmetry"));
  json branches = json::array();
  double compat = 0.0, gauge = 0.0, system = 0.0, dot = 0.0, ddot = 0.0;
  std::ostringstream csv;
  csv << "branch,epsilon,epsdot,epsddot\n";
  for (std::size_t i = 0; i < rep.branches.size(); ++i) {
    const perturb::BranchReport& b = rep.branches[i];
    branches.push_back({{"epsilon", b.epsilon},
                        {"epsdot", b.epsdot},
                        {"epsddot", b.epsddot},
                        {"basis", std::vector<double>(b.basis.data(), b.basis.data() + b.basis.size())},
                        {"lines", b.lines},
                        {"diagnostics",
                         {{"compatibility_residual", b.compatibility_residual},
                          {"system_residual", b.system_residual},
                          {"gauge_residual", b.gauge_residual}}}});
    compat = std::max(compat, b.compatibility_residual);
    gauge = std::max(gauge, b.gauge_residual);
    system = std::max(system, b.system_residual);
    dot = std::max(dot, std::abs(b.epsdot));
    ddot = std::max(ddot, std::abs(b.epsddot));
    csv << i << ',' << fmt(b.epsilon) << ',' << fmt(b.epsdot) << ',' << fmt(b.epsddot) << '\n';
  }
  checks.at_most("compatibility", compat, tol.at("compatibility"));
  checks.at_most("gauge_independence", gauge, tol.at("gauge"));
  checks.at_most("system_residual", system, tol.at("system"));
  // A constant shift is a dilation, which leaves every eigenvalue unchanged.
  bool constant = true;
  for (Eigen::Index i = 1; i < a.coeffs.size(); ++i) constant = constant && a.coeffs[i] == 0.0;
  if (constant) {
    checks.at_most("epsdot_zero", dot, tol.at("scale_invariance"));
    checks.at_most("epsddot_zero", ddot, tol.at("scale_invariance"));
  }

  JobResult out;
  out.record["outputs"] = {{"geometry", "sphere"},
                           {"k", k},
                           {"epsilon", rep.first.epsilon},
                           {"shape", config::sh_field_json(a)},
                           {"gauge", "zeroE"},
                           {"q1", matrix_rows(rep.first.q1)},
                           {"branches", branches}};
  out.record["checks"] = checks.list;
  out.passed = checks.all;
  out.csv = csv.str();
  return out;
}

JobResult curve_perturb_job(const json& cfg, const JobContext& ctx) {
  config::require_keys(cfg, {"geometry", "eigen_index", "shape", "N", "num_eigs", "h_list", "tolerances"}, "perturb");
  const curve::CurveParam c = config::parse_curve(cfg["geometry"]);
  if (!cfg.contains("shape")) throw Error(ErrorKind::Config, "config", "perturb", "missing 'shape'");
  const TrigSeries a = config::parse_series(cfg["shape"], "shape");
  const int n = get_int(cfg, "N", 128);
  const int num = get_int(cfg, "num_eigs", 10);
  const int index = get_int(cfg, "eigen_index", 0);
  const std::vector<double> h_list = get_double_list(cfg, "h_list", kDefaultSteps);
  const auto tol = tolerances(cfg, {{"slope", 0.2}, {"richardson", 1e-6}});

  json branch;
  Checks checks;
  std::ostringstream csv;
  if (h_list.empty()) {
    const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(c, n));
    const spectrum::PlasmonicSpectrum sel = spectrum::solve_plasmonic(dtn, num);
    if (index < 0 || index >= num) throw Error(ErrorKind::Config, "config", "perturb", "eigen_index out of range");
    const spectrum::FullSpectrum full = spectrum::solve_all(dtn);
    Eigen::Index j = 0;
    (full.eigenvalues.array() - sel.eigenvalues[index]).abs().minCoeff(&j);
    const double epsdot = perturb::epsdot_2d_checked(dtn, full, static_cast<int>(j), a);
    branch = {{"epsilon", full.eigenvalues[j]}, {"epsdot", epsdot}, {"diagnostics", json::object()}};
    csv << "h,central,error\n";
  } else {
    const perturb::EpsdotFdReport r = perturb::validate_epsdot_2d(c, a, n, num, index, h_list, ctx.threads);
    branch = {{"epsilon", r.epsilon},
              {"epsdot", r.epsdot},
              {"diagnostics",
               {{"h_list", r.h_list},
                {"central", r.central},
                {"errors", r.errors},
                {"slope", r.slope},
                {"richardson", r.richardson},
                {"richardson_error", r.richardson_error},
                {"min_overlap", r.min_overlap}}}};
    checks.add("fd_slope", r.slope, tol.at("slope"), std::abs(r.slope - 2.0) <= tol.at("slope"));
    checks.at_most("richardson_error", r.richardson_error, tol.at("richardson"));
    csv << "h,central,error\n";
    for (std::size_t i = 0; i < r.h_list.size(); ++i) {
      csv << fmt(r.h_list[i]) << ',' << fmt(r.central[i]) << ',' << fmt(r.errors[i]) << '\n';
    }
  }

  JobResult out;
  out.record["outputs"] = {{"geometry", cfg["geometry"]},
                           {"N", n},
                           {"eigen_index", index},
                           {"shape", config::series_json(a)},
                           {"branches", json::array({branch})}};
  out.record["checks"] = checks.list;
  out.passed = checks.all;
  out.csv = csv.str();
  return out;
}

JobResult perturb_job(const json& cfg, const JobContext& ctx) {
  if (!cfg.is_object() || !cfg.contains("geometry")) {
    throw Error(ErrorKind::Config, "config", "perturb", "missing 'geometry' (\"sphere\" or a curve object)");
  }
  const json& g = cfg["geometry"];
  if (g.is_string()) {
    if (g.get<std::string>() != "sphere") {
      throw Error(ErrorKind::Config, "config", "perturb", "geometry must be \"sphere\" or a curve object");
    }
    return sphere_perturb_job(cfg, ctx);
  }
  return curve_perturb_job(cfg, ctx);
}

JobResult dn_derivative_job(const json& cfg, const JobContext& ctx) {
  config::require_keys(cfg, {"curve", "shape", "N", "h_list", "side", "band", "tolerances"}, "dn-derivative");
  if (!cfg.contains("curve")) throw Error(ErrorKind::Config, "config", "dn-derivative", "missing 'curve'");
  if (!cfg.contains("shape")) throw Error(ErrorKind::Config, "config", "dn-derivative", "missing 'shape'");
  const curve::CurveParam c = config::parse_curve(cfg["curve"]);
  const TrigSeries a = config::parse_series(cfg["shape"], "shape");
  const int n = get_int(cfg, "N", 128);
  const std::vector<double> h_list = get_double_list(cfg, "h_list", {0.02, 0.01, 0.005});
  const std::string side_name = get_string(cfg, "side", "both");
  const int band = get_int(cfg, "band", n / 8);
  const auto tol = tolerances(cfg, {{"central_slope", 1.8}, {"oracle", 1e-8}, {"zero", 1e-12}});
  std::vector<dtn_shape::Side> sides;
  if (side_name == "interior" || side_name == "both") sides.push_back(dtn_shape::Side::Interior);
  if (side_name == "exterior" || side_name == "both") sides.push_back(dtn_shape::Side::Exterior);
  if (sides.empty()) {
    throw Error(ErrorKind::Config, "config", "dn-derivative", "side must be \"interior\", \"exterior\" or \"both\"");
  }
  if (band < 1 || band >= n / 2) throw Error(ErrorKind::Config, "config", "dn-derivative", "band must be in [1, N/2)");

  const bem::DtNPair dtn = bem::build_dtn(curve::sample_curve(c, n));
  const bool zero = a.is_constant() && constant_value(a) == 0.0;
  const auto* circle = std::get_if<curve::Circle>(&c.kind());

  Checks checks;
  json results = json::array();
  std::ostringstream csv;
  csv << "side,h,one_sided_error,central_error\n";
  for (dtn_shape::Side side : sides) {
    const char* name = side == dtn_shape::Side::Interior ? "interior" : "exterior";
    json entry{{"side", name}};
    if (zero) {
      const double norm = dtn_shape::shape_derivative_matrix(a, dtn, side).cwiseAbs().maxCoeff();
      entry["derivative_max_abs"] = norm;
      checks.at_most(std::string(name) + "_zero_derivative", norm, tol.at("zero"));
    } else {
      if (circle && a.is_constant()) {
        // Circle of radius R shifted by c: the multiplier |l| / R moves to |l| / (R + c h).
        const double r0 = circle->radius, c0 = constant_value(a);
        const double sign = side == dtn_shape::Side::Interior ? -1.0 : 1.0;
        double err = 0.0;
        for (int l = -band; l <= band; ++l) {
          const Eigen::VectorXd g = periodic::mode(n, l);
          const Eigen::VectorXd d = dtn_shape::shape_derivative_apply(g, a, dtn, side);
          err = std::max(err, (d - sign * c0 * std::abs(l) / (r0 * r0) * g).cwiseAbs().maxCoeff());
        }
        entry["oracle_error"] = err;
        checks.at_most(std::string(name) + "_circle_oracle", err, tol.at("oracle"));
      }
      if (h_list.size() >= 2) {
        const dtn_shape::OperatorFdReport r = dtn_shape::operator_fd_test(c, a, n, h_list, side, band, ctx.threads);
        entry["slopes"] = {{"one_sided", r.slope_one_sided}, {"central", r.slope_central}};
        entry["max_errors"] = r.central_errors;
        entry["one_sided_errors"] = r.one_sided_errors;
        checks.add(std::string(name) + "_central_slope", r.slope_central, tol.at("central_slope"),
                   r.slope_central >= tol.at("central_slope"));
        for (std::size_t i = 0; i < h_list.size(); ++i) {
          csv << name << ',' << fmt(h_list[i]) << ',' << fmt(r.one_sided_errors[i]) << ','
              << fmt(r.central_errors[i]) << '\n';
        }
      }
    }
    results.push_back(entry);
  }

  JobResult out;
  out.record["outputs"] = {
      {"curve", cfg["curve"]}, {"a", config::series_json(a)}, {"N", n}, {"band", band}, {"h_list", h_list},
      {"results", results}};
  out.record["checks"] = checks.list;
  out.passed = checks.all;
  out.csv = csv.str();
  return out;
}

JobResult validate_job(const json& cfg, const JobContext& ctx) {
  config::require_keys(cfg, {"N", "N_kite", "seed", "tolerances"}, "validate");
  validation::Options opt;
  opt.n = get_int(cfg, "N", 128);
  opt.n_kite = get_int(cfg, "N_kite", 256);
  opt.seed = cfg.contains("seed") ? cfg["seed"].get<std::uint64_t>() : ctx.seed;
  opt.threads = ctx.threads;
  opt.tolerances = tolerances(cfg, validation::default_tolerances());

  const auto results = validation::run_acceptance(opt);
  JobResult out;
  json criteria = json::array();
  std::ostringstream csv;
  csv << "id,name,passed\n";
  out.timing = json::object();
  for (const auto& r : results) {
    criteria.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"summary", r.summary}, {"values", r.values}});
    out.passed = out.passed && r.passed;
    out.timing[std::to_string(r.id)] = r.seconds;
    csv << r.id << ',' << r.name << ',' << (r.passed ? "true" : "false") << '\n';
  }
  out.record["outputs"] = {{"N", opt.n}, {"N_kite", opt.n_kite}, {"criteria", criteria}};
  json checks = json::array();
  for (const auto& r : results) checks.push_back({{"name", std::to_string(r.id) + " " + r.name}, {"passed", r.passed}});
  out.record["checks"] = checks;
  out.table = validation::format_table(results);
  out.csv = csv.str();
  return out;
}

}  // namespace

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

JobResult run_job(const std::string& command, const json& cfg, const JobContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  JobResult out;
  if (command == "spectrum") {
    out = spectrum_job(cfg, ctx);
  } else if (command == "perturb") {
    out = perturb_job(cfg, ctx);
  } else if (command == "dn-derivative") {
    out = dn_derivative_job(cfg, ctx);
  } else if (command == "validate") {
    out = validate_job(cfg, ctx);
  } else {
    throw Error(ErrorKind::Config, "cli", "run_job", "unknown command '" + command + "'");
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json record{{"artifact", "plasmon"}, {"version", PLASMON_VERSION}, {"command", command},
              {"job", {{"config", cfg}, {"seed", ctx.seed}}}};
  record["outputs"] = out.record["outputs"];
  record["checks"] = out.record["checks"];
  record["passed"] = out.passed;
  out.record = std::move(record);
  if (out.table.empty()) {
    std::ostringstream t;
    for (const auto& c : out.record["checks"]) {
      t << (c["passed"].get<bool>() ? "PASS" : "FAIL") << "  " << c["name"].get<std::string>() << '\n';
    }
    out.table = t.str();
  }
  return out;
}

}  // namespace plasmon::jobs
