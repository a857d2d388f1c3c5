#include "plasmon/plasmon.h"

#include <cstring>
#include <new>
#include <string>

#include "bem2d.hpp"
#include "config.hpp"
#include "error.hpp"
#include "jobs.hpp"
#include "spectrum2d.hpp"

#ifndef PLASMON_VERSION
#define PLASMON_VERSION "0.0.0"
#endif

struct pl_curve {
  plasmon::curve::CurveParam curve;
};

struct pl_dtn {
  plasmon::bem::DtNPair dtn;
};

struct pl_spectrum {
  plasmon::spectrum::PlasmonicSpectrum spectrum;
};

struct pl_result {
  std::string json, csv, table, timing;
  bool passed = false;
  double wall = 0.0;
};

namespace {

thread_local std::string last_error;

pl_status fail(pl_status status, const std::string& message) {
  last_error = message;
  return status;
}

pl_status status_of(plasmon::ErrorKind kind) {
  using plasmon::ErrorKind;
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Input:
    case ErrorKind::Shape:
      return PL_ERR_CONFIG;
    default:
      return PL_ERR_NUMERICAL;
  }
}

// Runs `body`, translating exceptions into status codes.
template <class F>
pl_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const plasmon::Error& e) {
    return fail(status_of(e.kind()), std::string(to_string(e.kind())) + " error: " + e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(PL_ERR_CONFIG, std::string("config error: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(PL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PL_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* pl_version(void) { return PLASMON_VERSION; }

const char* pl_last_error(void) { return last_error.c_str(); }

pl_status pl_curve_from_json(const char* json, pl_curve** out) {
  if (!json || !out) return fail(PL_ERR_CONFIG, "null argument");
  return guarded([&] {
    *out = new pl_curve{plasmon::config::parse_curve(nlohmann::json::parse(json))};
    return PL_OK;
  });
}

void pl_curve_free(pl_curve* curve) { delete curve; }

pl_status pl_dtn_build(const pl_curve* curve, int n, pl_dtn** out) {
  if (!curve || !out) return fail(PL_ERR_CONFIG, "null argument");
  return guarded([&] {
    *out = new pl_dtn{plasmon::bem::build_dtn(plasmon::curve::sample_curve(curve->curve, n))};
    return PL_OK;
  });
}

int pl_dtn_size(const pl_dtn* dtn) { return dtn ? dtn->dtn.size() : 0; }

pl_status pl_dtn_matrix(const pl_dtn* dtn, int side, double* out, size_t capacity) {
  if (!dtn || !out) return fail(PL_ERR_CONFIG, "null argument");
  if (side != 0 && side != 1) return fail(PL_ERR_CONFIG, "side must be 0 (interior) or 1 (exterior)");
  const Eigen::MatrixXd& m = side == 0 ? dtn->dtn.n_minus.matrix : dtn->dtn.n_plus.matrix;
  if (capacity < static_cast<size_t>(m.size())) return fail(PL_ERR_CONFIG, "output buffer too small");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
  }
  return PL_OK;
}

pl_status pl_dtn_weights(const pl_dtn* dtn, double* out, size_t capacity) {
  if (!dtn || !out) return fail(PL_ERR_CONFIG, "null argument");
  const Eigen::VectorXd w = dtn->dtn.weights();
  if (capacity < static_cast<size_t>(w.size())) return fail(PL_ERR_CONFIG, "output buffer too small");
  std::memcpy(out, w.data(), sizeof(double) * w.size());
  return PL_OK;
}

void pl_dtn_free(pl_dtn* dtn) { delete dtn; }

pl_status pl_spectrum_solve(const pl_dtn* dtn, int num, pl_spectrum** out) {
  if (!dtn || !out) return fail(PL_ERR_CONFIG, "null argument");
  return guarded([&] {
    *out = new pl_spectrum{plasmon::spectrum::solve_plasmonic(dtn->dtn, num)};
    return PL_OK;
  });
}

int pl_spectrum_count(const pl_spectrum* s) { return s ? static_cast<int>(s->spectrum.eigenvalues.size()) : 0; }

double pl_spectrum_eigenvalue(const pl_spectrum* s, int k) {
  if (!s || k < 0 || k >= pl_spectrum_count(s)) return 0.0;
  return s->spectrum.eigenvalues[k];
}

double pl_spectrum_residual(const pl_spectrum* s, int k) {
  if (!s || k < 0 || k >= pl_spectrum_count(s)) return 0.0;
  return s->spectrum.residuals[k];
}

pl_status pl_spectrum_eigenfunction(const pl_spectrum* s, int k, double* out, size_t capacity) {
  if (!s || !out) return fail(PL_ERR_CONFIG, "null argument");
  if (k < 0 || k >= pl_spectrum_count(s)) return fail(PL_ERR_CONFIG, "eigenpair index out of range");
  const Eigen::MatrixXd& g = s->spectrum.eigenfunctions;
  if (capacity < static_cast<size_t>(g.rows())) return fail(PL_ERR_CONFIG, "output buffer too small");
  for (Eigen::Index i = 0; i < g.rows(); ++i) out[i] = g(i, k);
  return PL_OK;
}

void pl_spectrum_free(pl_spectrum* s) { delete s; }

pl_status pl_run_job(const char* command, const char* config_json, uint64_t seed, int threads, const char* out_dir,
                     pl_result** out) {
  if (!command || !config_json || !out) return fail(PL_ERR_CONFIG, "null argument");
  *out = nullptr;
  return guarded([&] {
    const nlohmann::json cfg = nlohmann::json::parse(config_json);
    plasmon::jobs::JobContext ctx{seed, threads > 0 ? threads : 1, out_dir ? out_dir : ""};
    const plasmon::jobs::JobResult r = plasmon::jobs::run_job(command, cfg, ctx);
    nlohmann::json timing = r.timing.is_object() ? r.timing : nlohmann::json::object();
    timing["total"] = r.wall_seconds;
    *out = new pl_result{r.record.dump(2) + "\n", r.csv, r.table, timing.dump(2) + "\n", r.passed, r.wall_seconds};
    return r.passed ? PL_OK : PL_VALIDATION_FAILED;
  });
}

const char* pl_result_json(const pl_result* r) { return r ? r->json.c_str() : ""; }
const char* pl_result_csv(const pl_result* r) { return r ? r->csv.c_str() : ""; }
const char* pl_result_table(const pl_result* r) { return r ? r->table.c_str() : ""; }
const char* pl_result_timing_json(const pl_result* r) { return r ? r->timing.c_str() : ""; }
int pl_result_passed(const pl_result* r) { return r && r->passed ? 1 : 0; }
double pl_result_wall_time(const pl_result* r) { return r ? r->wall : 0.0; }
void pl_result_free(pl_result* r) { delete r; }

}  // extern "C"
