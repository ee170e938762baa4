/* SPDX-License-Identifier: Apache-2.0 */
#ifndef DCESTA_H
#define DCESTA_H

/*
 * C interface to the moving-mirror cavity toolkit.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_free function. Every call returns a dcesta_status; on failure
 * dcesta_last_error() describes the problem (per thread, valid until the
 * next failing call on that thread). Units are natural (c = hbar = k_B = 1).
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(DCESTA_BUILDING_LIBRARY)
#    define DCESTA_API __declspec(dllexport)
#  else
#    define DCESTA_API __declspec(dllimport)
#  endif
#else
#  define DCESTA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dcesta_status {
  DCESTA_OK = 0,
  DCESTA_E_ARGUMENT = 1,      /* null pointer or malformed argument */
  DCESTA_E_CONFIG = 2,        /* invalid trajectory description */
  DCESTA_E_DOMAIN = 3,
  DCESTA_E_DISCONTINUITY = 4,
  DCESTA_E_CONVERGENCE = 5,
  DCESTA_E_BRACKET = 6,
  DCESTA_E_QUADRATURE = 7,
  DCESTA_E_SINGULARITY = 8,
  DCESTA_E_INVALID_CYCLE = 9,
  DCESTA_E_FIT = 10,
  DCESTA_E_INTERNAL = 11
} dcesta_status;

typedef struct dcesta_trajectory dcesta_trajectory;
typedef struct dcesta_moore dcesta_moore;

DCESTA_API const char* dcesta_version(void);
DCESTA_API const char* dcesta_last_error(void);
DCESTA_API const char* dcesta_status_name(dcesta_status status);

/* ---- trajectories ---------------------------------------------------- */

DCESTA_API dcesta_status dcesta_trajectory_from_json(const char* json, dcesta_trajectory** out);
DCESTA_API dcesta_status dcesta_trajectory_static(double L0, dcesta_trajectory** out);
DCESTA_API dcesta_status dcesta_trajectory_smoothstep(double L0, double eps, double tau, dcesta_trajectory** out);
DCESTA_API dcesta_status dcesta_trajectory_step(double L0, double L1, dcesta_trajectory** out);
/* Shortcut to adiabaticity of `reference`. */
DCESTA_API dcesta_status dcesta_trajectory_effective(const dcesta_trajectory* reference, dcesta_trajectory** out);
DCESTA_API void dcesta_trajectory_free(dcesta_trajectory* traj);

/* Writes the JSON description into buf (NUL-terminated, truncated to size).
 * *needed receives the full length without the terminator. */
DCESTA_API dcesta_status dcesta_trajectory_describe(const dcesta_trajectory* traj, char* buf, size_t size,
                                                    size_t* needed);

typedef struct dcesta_trajectory_info {
  int kind; /* 0 static, 1 smoothstep, 2 step, 3 linear, 4 samples, 5 composite, 6 effective */
  double t_start;
  double t_end;
  double initial_length;
  double final_length;
} dcesta_trajectory_info;

DCESTA_API dcesta_status dcesta_trajectory_info_get(const dcesta_trajectory* traj, dcesta_trajectory_info* out);
DCESTA_API dcesta_status dcesta_trajectory_eval(const dcesta_trajectory* traj, double t, double* L);
/* out[0..3] = L, L', L'', L'''. */
DCESTA_API dcesta_status dcesta_trajectory_eval_derivs(const dcesta_trajectory* traj, double t, double out[4]);

typedef struct dcesta_validation {
  double min_length;
  double max_speed;
  int continuity; /* -1 jump, 0..2 C^k, 3 C3 or better */
  int physical;
} dcesta_validation;

DCESTA_API dcesta_status dcesta_trajectory_validate(const dcesta_trajectory* traj, dcesta_validation* out);

/* ---- shortcuts to adiabaticity --------------------------------------- */

DCESTA_API dcesta_status dcesta_sta_effective_length(const dcesta_trajectory* reference, double t, double* out);
DCESTA_API dcesta_status dcesta_sta_effective_length_step(double L0, double L1, double t, double* out);
DCESTA_API dcesta_status dcesta_sta_effective_speed(const dcesta_trajectory* reference, double t, double* out);
/* Batch over a grid: L_ref, L_eff and dL_eff/dt at each t (arrays of n). */
DCESTA_API dcesta_status dcesta_sta_table(const dcesta_trajectory* reference, const double* t, size_t n,
                                          double* L_ref, double* L_eff, double* v_eff);
/* omega_eff^2 from (omega, omega', omega''); *is_real is 0 when negative. */
DCESTA_API dcesta_status dcesta_sta_effective_frequency(double omega, double d_omega, double dd_omega,
                                                        double* omega_sq, int* is_real);

/* ---- Moore functions -------------------------------------------------- */

typedef struct dcesta_moore_options {
  double eps_moore;
  double root_tol;
} dcesta_moore_options;

DCESTA_API void dcesta_moore_options_default(dcesta_moore_options* opt);
/* opt may be NULL for defaults. */
DCESTA_API dcesta_status dcesta_moore_recursion(const dcesta_trajectory* traj, const dcesta_moore_options* opt,
                                                dcesta_moore** out);
DCESTA_API dcesta_status dcesta_moore_wkb(const dcesta_trajectory* reference, const dcesta_moore_options* opt,
                                          dcesta_moore** out);
DCESTA_API void dcesta_moore_free(dcesta_moore* R);

DCESTA_API dcesta_status dcesta_moore_value(const dcesta_moore* R, double z, double* out);
/* out[0..3] = R, R', R'', R'''; entries above `order` are still written. */
DCESTA_API dcesta_status dcesta_moore_derivatives(const dcesta_moore* R, double z, int order, double out[4]);
DCESTA_API dcesta_status dcesta_moore_equation_residual(const dcesta_moore* R, double t, double* out);
/* New handle for the wall along which R solves the Moore equation. */
DCESTA_API dcesta_status dcesta_moore_boundary(const dcesta_moore* R, dcesta_trajectory** out);
DCESTA_API dcesta_status dcesta_moore_mode(const dcesta_moore* R, int n, double x, double t, double* re,
                                           double* im);

typedef struct dcesta_residual {
  double period;
  double mean;
  double sup_deviation;
  double l2_deviation;
  double periodicity_error;
} dcesta_residual;

DCESTA_API dcesta_status dcesta_moore_residual(const dcesta_trajectory* traj, const dcesta_moore_options* opt,
                                               int samples, dcesta_residual* out);

/* ---- stress tensor and energies --------------------------------------- */

typedef struct dcesta_thermal {
  double T;
  double L_therm;
} dcesta_thermal;

typedef struct dcesta_quad_options {
  double abs_tol;
  double rel_tol;
} dcesta_quad_options;

DCESTA_API void dcesta_quad_options_default(dcesta_quad_options* opt);
DCESTA_API dcesta_status dcesta_thermal_F(double T, double L0, double* out);
DCESTA_API dcesta_status dcesta_g_function(const dcesta_moore* R, dcesta_thermal th, double z, double* out);
/* out[0] = Ttt, out[1] = Ttx. */
DCESTA_API dcesta_status dcesta_stress_tensor(const dcesta_moore* R, dcesta_thermal th, double x, double t,
                                              double out[2]);
/* wall may be NULL: the Moore function's own boundary is used. */
DCESTA_API dcesta_status dcesta_total_energy(const dcesta_moore* R, const dcesta_trajectory* wall,
                                             dcesta_thermal th, double t, const dcesta_quad_options* opt,
                                             double* out);
DCESTA_API dcesta_status dcesta_adiabatic_energy(double L, dcesta_thermal th, double* out);
DCESTA_API dcesta_status dcesta_adiabaticity(const dcesta_moore* R, const dcesta_trajectory* wall,
                                             dcesta_thermal th, double t, const dcesta_quad_options* opt,
                                             double* out);
/* Energy curve on n times; q_valid[i] is 0 where Q* is ill-conditioned. */
DCESTA_API dcesta_status dcesta_energy_curve(const dcesta_moore* R, const dcesta_trajectory* wall,
                                             dcesta_thermal th, const double* t, size_t n,
                                             const dcesta_quad_options* opt, double* E, double* E_ad, double* Q,
                                             int* q_valid);
/* Density map, row-major (nt rows of nx); NaN outside the cavity. */
DCESTA_API dcesta_status dcesta_density_map(const dcesta_moore* R, dcesta_thermal th, const double* t, size_t nt,
                                            const double* x, size_t nx, double* Ttt, double* Ttx);

/* ---- Otto cycles ------------------------------------------------------- */

typedef struct dcesta_otto_spec {
  double L0;
  double L1;
  double T0;
  double T1;
  int stroke_kind; /* 0 reference, 1 sta */
  double tau;
  dcesta_moore_options moore;
  dcesta_quad_options quad;
} dcesta_otto_spec;

typedef struct dcesta_otto_result {
  int available; /* 0 when the reference stroke is superluminal */
  double W_ad, W, Q_ad, Q;
  double w_ad_AB, w_ad_CD, w_AB, w_CD;
  double w_fric_AB, w_fric_CD;
  double eta, eta_ad;
  double P, cycle_time;
} dcesta_otto_result;

typedef struct dcesta_fit_report {
  int applicable;
  double exponent;
  double stderr_exponent;
  double ci_low;
  double ci_high;
  size_t points_used;
} dcesta_fit_report;

DCESTA_API void dcesta_otto_spec_default(dcesta_otto_spec* spec);
DCESTA_API dcesta_status dcesta_otto_check(const dcesta_otto_spec* spec);
DCESTA_API dcesta_status dcesta_otto_adiabatic(const dcesta_otto_spec* spec, dcesta_otto_result* out);
DCESTA_API dcesta_status dcesta_otto_finite_time(const dcesta_otto_spec* spec, dcesta_otto_result* out);
/* Sweep over n taus for one stroke kind (spec->stroke_kind); out has n entries. */
DCESTA_API dcesta_status dcesta_otto_sweep(const dcesta_otto_spec* spec, const double* taus, size_t n,
                                           dcesta_otto_result* out);
DCESTA_API dcesta_status dcesta_otto_max_sta_power(const dcesta_otto_spec* spec, double* out);
DCESTA_API dcesta_status dcesta_otto_fit(const double* taus, const dcesta_otto_result* rows, size_t n,
                                         dcesta_fit_report* out);
DCESTA_API dcesta_status dcesta_efficiency_at_speed(double v, double* out);
DCESTA_API dcesta_status dcesta_speed_for_lengths(double L0, double L1, double* out);

#ifdef __cplusplus
}
#endif

#endif /* DCESTA_H */
