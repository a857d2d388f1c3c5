/* Exercises the C interface from C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "plasmon/plasmon.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  EXPECT(strlen(pl_version()) > 0);

  pl_curve* curve = NULL;
  EXPECT(pl_curve_from_json("{\"kind\":\"ellipse\",\"a\":2,\"b\":1}", &curve) == PL_OK);

  pl_dtn* dtn = NULL;
  EXPECT(pl_dtn_build(curve, 64, &dtn) == PL_OK);
  EXPECT(pl_dtn_size(dtn) == 64);

  double* m = malloc(sizeof(double) * 64 * 64);
  double w[64];
  EXPECT(pl_dtn_matrix(dtn, 0, m, 64 * 64) == PL_OK);
  EXPECT(pl_dtn_weights(dtn, w, 64) == PL_OK);
  /* Interior DtN annihilates constants. */
  double row = 0.0;
  for (int j = 0; j < 64; ++j) row += m[5 * 64 + j];
  EXPECT(fabs(row) < 1e-9);
  EXPECT(pl_dtn_matrix(dtn, 2, m, 64 * 64) == PL_ERR_CONFIG);
  EXPECT(pl_dtn_matrix(dtn, 0, m, 10) == PL_ERR_CONFIG);
  free(m);

  pl_spectrum* sp = NULL;
  EXPECT(pl_spectrum_solve(dtn, 4, &sp) == PL_OK);
  EXPECT(pl_spectrum_count(sp) == 4);
  EXPECT(fabs(pl_spectrum_eigenvalue(sp, 0) - 0.5) < 1e-10);
  EXPECT(fabs(pl_spectrum_eigenvalue(sp, 3) - 2.0) < 1e-10);
  EXPECT(pl_spectrum_residual(sp, 0) < 1e-9);
  double g[64];
  EXPECT(pl_spectrum_eigenfunction(sp, 1, g, 64) == PL_OK);
  EXPECT(pl_spectrum_eigenfunction(sp, 9, g, 64) == PL_ERR_CONFIG);
  pl_spectrum_free(sp);

  EXPECT(pl_spectrum_solve(dtn, 40, &sp) == PL_ERR_CONFIG);
  EXPECT(strlen(pl_last_error()) > 0);
  pl_dtn_free(dtn);
  pl_curve_free(curve);

  EXPECT(pl_curve_from_json("{\"kind\":\"blob\"}", &curve) == PL_ERR_CONFIG);
  EXPECT(strstr(pl_last_error(), "blob") != NULL);
  EXPECT(pl_curve_from_json("{not json", &curve) == PL_ERR_CONFIG);

  pl_result* res = NULL;
  EXPECT(pl_run_job("spectrum", "{\"curve\":{\"kind\":\"circle\",\"radius\":1},\"N\":64,\"num_eigs\":10}", 1, 1, NULL,
                    &res) == PL_OK);
  EXPECT(pl_result_passed(res) == 1);
  EXPECT(strstr(pl_result_json(res), "\"eigenvalues\"") != NULL);
  EXPECT(strncmp(pl_result_csv(res), "k,epsilon,residual", 18) == 0);
  EXPECT(pl_result_wall_time(res) >= 0.0);
  pl_result_free(res);

  EXPECT(pl_run_job("perturb", "{\"geometry\":\"sphere\",\"k\":0,\"shape\":{\"L\":0}}", 1, 1, NULL, &res) ==
         PL_ERR_NUMERICAL);
  EXPECT(res == NULL);

  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
