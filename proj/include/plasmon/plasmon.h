#ifndef PLASMON_PLASMON_H
#define PLASMON_PLASMON_H

/* C interface to the plasmon library. All handles are opaque; every call that can
 * fail returns a pl_status and leaves a message in pl_last_error() for the calling
 * thread. Strings returned by accessors are owned by the handle. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PLASMON_BUILDING_LIBRARY)
#    define PL_API __declspec(dllexport)
#  else
#    define PL_API __declspec(dllimport)
#  endif
#else
#  define PL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pl_status {
  PL_OK = 0,
  PL_VALIDATION_FAILED = 1, /* job ran, at least one check failed */
  PL_ERR_CONFIG = 2,        /* malformed configuration or argument */
  PL_ERR_NUMERICAL = 3,     /* solver, geometry or perturbation failure */
  PL_ERR_INTERNAL = 5
} pl_status;

typedef struct pl_curve pl_curve;
typedef struct pl_dtn pl_dtn;
typedef struct pl_spectrum pl_spectrum;
typedef struct pl_result pl_result;

PL_API const char* pl_version(void);

/* Message of the last failed call on this thread, or "" if none. */
PL_API const char* pl_last_error(void);

/* Curves from the JSON curve block, e.g. {"kind":"ellipse","a":2,"b":1}. */
PL_API pl_status pl_curve_from_json(const char* json, pl_curve** out);
PL_API void pl_curve_free(pl_curve* curve);

/* Interior and exterior Dirichlet-to-Neumann matrices on n uniform nodes. */
PL_API pl_status pl_dtn_build(const pl_curve* curve, int n, pl_dtn** out);
PL_API int pl_dtn_size(const pl_dtn* dtn);
/* Copies the n x n operator in row-major order; side 0 interior, 1 exterior. */
PL_API pl_status pl_dtn_matrix(const pl_dtn* dtn, int side, double* out, size_t capacity);
/* Quadrature weights of the discrete boundary inner product (n values). */
PL_API pl_status pl_dtn_weights(const pl_dtn* dtn, double* out, size_t capacity);
PL_API void pl_dtn_free(pl_dtn* dtn);

/* The num plasmonic eigenvalues farthest from 1, ascending. */
PL_API pl_status pl_spectrum_solve(const pl_dtn* dtn, int num, pl_spectrum** out);
PL_API int pl_spectrum_count(const pl_spectrum* spectrum);
PL_API double pl_spectrum_eigenvalue(const pl_spectrum* spectrum, int k);
PL_API double pl_spectrum_residual(const pl_spectrum* spectrum, int k);
/* Node values of eigenfunction k, normalized by <g, N- g> = 1. */
PL_API pl_status pl_spectrum_eigenfunction(const pl_spectrum* spectrum, int k, double* out, size_t capacity);
PL_API void pl_spectrum_free(pl_spectrum* spectrum);

/* Runs "spectrum", "perturb", "dn-derivative" or "validate". On PL_OK or
 * PL_VALIDATION_FAILED *out holds the result; out_dir may be NULL. */
PL_API pl_status pl_run_job(const char* command, const char* config_json, uint64_t seed, int threads,
                            const char* out_dir, pl_result** out);
PL_API const char* pl_result_json(const pl_result* result);
PL_API const char* pl_result_csv(const pl_result* result);
PL_API const char* pl_result_table(const pl_result* result);
/* {"total": seconds, ...} with per-stage entries where available. */
PL_API const char* pl_result_timing_json(const pl_result* result);
PL_API int pl_result_passed(const pl_result* result);
PL_API double pl_result_wall_time(const pl_result* result);
PL_API void pl_result_free(pl_result* result);

#ifdef __cplusplus
}
#endif

#endif
