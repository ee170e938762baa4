/* SPDX-License-Identifier: Apache-2.0 */
/* Compiles the public header as C and runs a short round trip. */
#include <math.h>
#include <stdio.h>

#include "dcesta/dcesta.h"

int main(void) {
  dcesta_trajectory* ref = NULL;
  dcesta_trajectory* eff = NULL;
  dcesta_residual res;
  double l = 0.0;
  int rc = 1;
  if (dcesta_trajectory_smoothstep(1.0, 0.3, 1.0, &ref) != DCESTA_OK) goto done;
  if (dcesta_sta_effective_length(ref, 0.5, &l) != DCESTA_OK) goto done;
  if (fabs(l - 0.83032591930481892) > 1e-10) goto done;
  if (dcesta_trajectory_effective(ref, &eff) != DCESTA_OK) goto done;
  if (dcesta_moore_residual(eff, NULL, 256, &res) != DCESTA_OK) goto done;
  if (!(res.sup_deviation < 1e-8)) goto done;
  rc = 0;
done:
  if (rc) fprintf(stderr, "capi_smoke: %s\n", dcesta_last_error());
  dcesta_trajectory_free(eff);
  dcesta_trajectory_free(ref);
  return rc;
}
