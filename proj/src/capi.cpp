// SPDX-License-Identifier: Apache-2.0
#include "dcesta/dcesta.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "dcesta/errors.hpp"
#include "dcesta/moore.hpp"
#include "dcesta/otto.hpp"
#include "dcesta/sta.hpp"
#include "dcesta/stress.hpp"
#include "dcesta/trajectory.hpp"

struct dcesta_trajectory {
  dcesta::Trajectory traj;
};

struct dcesta_moore {
  dcesta::MooreFunction fn;
};

namespace {

thread_local std::string g_last_error;

dcesta_status status_for(dcesta::ErrorKind kind) {
  using dcesta::ErrorKind;
  switch (kind) {
    case ErrorKind::domain: return DCESTA_E_DOMAIN;
    case ErrorKind::discontinuity: return DCESTA_E_DISCONTINUITY;
    case ErrorKind::convergence: return DCESTA_E_CONVERGENCE;
    case ErrorKind::bracket: return DCESTA_E_BRACKET;
    case ErrorKind::quadrature: return DCESTA_E_QUADRATURE;
    case ErrorKind::singularity: return DCESTA_E_SINGULARITY;
    case ErrorKind::invalid_cycle: return DCESTA_E_INVALID_CYCLE;
    case ErrorKind::fit: return DCESTA_E_FIT;
    case ErrorKind::config: return DCESTA_E_CONFIG;
  }
  return DCESTA_E_INTERNAL;
}

dcesta_status fail(dcesta_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Body>
dcesta_status guarded(Body&& body) {
  try {
    body();
    return DCESTA_OK;
  } catch (const dcesta::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DCESTA_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DCESTA_E_INTERNAL, e.what());
  } catch (...) {
    return fail(DCESTA_E_INTERNAL, "unknown failure");
  }
}

#define DCESTA_REQUIRE(cond)                                                  \
  do {                                                                        \
    if (!(cond)) return fail(DCESTA_E_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

dcesta::MooreOptions moore_options(const dcesta_moore_options* opt) {
  dcesta::MooreOptions o;
  if (opt) {
    o.eps_moore = opt->eps_moore;
    o.root_tol = opt->root_tol;
  }
  return o;
}

dcesta::StressOptions stress_options(const dcesta_quad_options* opt) {
  dcesta::StressOptions o;
  if (opt) {
    o.quad_abs_tol = opt->abs_tol;
    o.quad_rel_tol = opt->rel_tol;
  }
  return o;
}

dcesta::ThermalState thermal(dcesta_thermal th) { return dcesta::ThermalState::at(th.T, th.L_therm); }

dcesta::OttoCycleSpec otto_spec(const dcesta_otto_spec& s) {
  dcesta::OttoCycleSpec o;
  o.L0 = s.L0;
  o.L1 = s.L1;
  o.T0 = s.T0;
  o.T1 = s.T1;
  o.stroke_kind = s.stroke_kind == 1 ? dcesta::StrokeKind::sta : dcesta::StrokeKind::reference;
  o.tau = s.tau;
  o.moore = moore_options(&s.moore);
  o.stress = stress_options(&s.quad);
  return o;
}

void copy_result(const dcesta::OttoCycleResult& r, bool available, dcesta_otto_result* out) {
  *out = {available ? 1 : 0, r.W_ad,     r.W,         r.Q_ad,      r.Q,   r.w_ad_AB, r.w_ad_CD, r.w_AB,
          r.w_CD,            r.w_fric_AB, r.w_fric_CD, r.eta,       r.eta_ad, r.P,    r.cycle_time};
}

dcesta_status emit(dcesta::Trajectory traj, dcesta_trajectory** out) {
  *out = new dcesta_trajectory{std::move(traj)};
  return DCESTA_OK;
}

}  // namespace

extern "C" {

const char* dcesta_version(void) { return DCESTA_VERSION_STRING; }

const char* dcesta_last_error(void) { return g_last_error.c_str(); }

const char* dcesta_status_name(dcesta_status status) {
  switch (status) {
    case DCESTA_OK: return "ok";
    case DCESTA_E_ARGUMENT: return "argument";
    case DCESTA_E_CONFIG: return "config";
    case DCESTA_E_DOMAIN: return "domain";
    case DCESTA_E_DISCONTINUITY: return "discontinuity";
    case DCESTA_E_CONVERGENCE: return "convergence";
    case DCESTA_E_BRACKET: return "bracket";
    case DCESTA_E_QUADRATURE: return "quadrature";
    case DCESTA_E_SINGULARITY: return "singularity";
    case DCESTA_E_INVALID_CYCLE: return "invalid_cycle";
    case DCESTA_E_FIT: return "fit";
    case DCESTA_E_INTERNAL: return "internal";
  }
  return "unknown";
}

/* ---- trajectories ---- */

dcesta_status dcesta_trajectory_from_json(const char* json, dcesta_trajectory** out) {
  DCESTA_REQUIRE(json && out);
  return guarded([&] { emit(dcesta::trajectory_from_json(json), out); });
}

dcesta_status dcesta_trajectory_static(double L0, dcesta_trajectory** out) {
  DCESTA_REQUIRE(out);
  return guarded([&] { emit(dcesta::Trajectory::constant(L0), out); });
}

dcesta_status dcesta_trajectory_smoothstep(double L0, double eps, double tau, dcesta_trajectory** out) {
  DCESTA_REQUIRE(out);
  return guarded([&] { emit(dcesta::Trajectory::smoothstep(L0, eps, tau), out); });
}

dcesta_status dcesta_trajectory_step(double L0, double L1, dcesta_trajectory** out) {
  DCESTA_REQUIRE(out);
  return guarded([&] { emit(dcesta::Trajectory::step(L0, L1), out); });
}

dcesta_status dcesta_trajectory_effective(const dcesta_trajectory* reference, dcesta_trajectory** out) {
  DCESTA_REQUIRE(reference && out);
  return guarded([&] { emit(dcesta::effective_trajectory(reference->traj), out); });
}

void dcesta_trajectory_free(dcesta_trajectory* traj) { delete traj; }

dcesta_status dcesta_trajectory_describe(const dcesta_trajectory* traj, char* buf, size_t size, size_t* needed) {
  DCESTA_REQUIRE(traj && (buf || size == 0));
  return guarded([&] {
    const std::string text = dcesta::trajectory_to_json(traj->traj);
    if (needed) *needed = text.size();
    if (size > 0) {
      const std::size_t n = std::min(size - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

dcesta_status dcesta_trajectory_info_get(const dcesta_trajectory* traj, dcesta_trajectory_info* out) {
  DCESTA_REQUIRE(traj && out);
  return guarded([&] {
    const auto& t = traj->traj;
    *out = {static_cast<int>(t.kind()), t.t_start(), t.t_end(), t.initial_length(), t.final_length()};
  });
}

dcesta_status dcesta_trajectory_eval(const dcesta_trajectory* traj, double t, double* L) {
  DCESTA_REQUIRE(traj && L);
  return guarded([&] { *L = traj->traj.eval(t); });
}

dcesta_status dcesta_trajectory_eval_derivs(const dcesta_trajectory* traj, double t, double out[4]) {
  DCESTA_REQUIRE(traj && out);
  return guarded([&] {
    const auto d = traj->traj.eval_derivs(t);
    out[0] = d.L;
    out[1] = d.dL;
    out[2] = d.d2L;
    out[3] = d.d3L;
  });
}

dcesta_status dcesta_trajectory_validate(const dcesta_trajectory* traj, dcesta_validation* out) {
  DCESTA_REQUIRE(traj && out);
  return guarded([&] {
    const auto v = dcesta::validate(traj->traj);
    *out = {v.min_length, v.max_speed, v.continuity, v.physical ? 1 : 0};
  });
}

/* ---- shortcuts ---- */

dcesta_status dcesta_sta_effective_length(const dcesta_trajectory* reference, double t, double* out) {
  DCESTA_REQUIRE(reference && out);
  return guarded([&] { *out = dcesta::effective_length(reference->traj, t); });
}

dcesta_status dcesta_sta_effective_length_step(double L0, double L1, double t, double* out) {
  DCESTA_REQUIRE(out);
  return guarded([&] { *out = dcesta::effective_trajectory_step(L0, L1, t); });
}

dcesta_status dcesta_sta_effective_speed(const dcesta_trajectory* reference, double t, double* out) {
  DCESTA_REQUIRE(reference && out);
  return guarded([&] { *out = dcesta::effective_speed(reference->traj, t); });
}

dcesta_status dcesta_sta_table(const dcesta_trajectory* reference, const double* t, size_t n, double* L_ref,
                               double* L_eff, double* v_eff) {
  DCESTA_REQUIRE(reference && (n == 0 || (t && L_ref && L_eff && v_eff)));
  return guarded([&] {
    const auto phase = std::make_shared<const dcesta::WkbPhase>(reference->traj);
    const auto eff = dcesta::effective_trajectory(phase);
    for (size_t i = 0; i < n; ++i) {
      L_ref[i] = reference->traj.eval(t[i]);
      L_eff[i] = eff.eval(t[i]);
      v_eff[i] = dcesta::effective_speed(*phase, t[i]);
    }
  });
}

dcesta_status dcesta_sta_effective_frequency(double omega, double d_omega, double dd_omega, double* omega_sq,
                                             int* is_real) {
  DCESTA_REQUIRE(omega_sq && is_real);
  return guarded([&] {
    const auto f = dcesta::effective_frequency(dcesta::FrequencySample{omega, d_omega, dd_omega});
    *omega_sq = f.omega_sq;
    *is_real = f.real ? 1 : 0;
  });
}

/* ---- Moore functions ---- */

void dcesta_moore_options_default(dcesta_moore_options* opt) {
  if (!opt) return;
  const dcesta::MooreOptions d;
  opt->eps_moore = d.eps_moore;
  opt->root_tol = d.root_tol;
}

dcesta_status dcesta_moore_recursion(const dcesta_trajectory* traj, const dcesta_moore_options* opt,
                                     dcesta_moore** out) {
  DCESTA_REQUIRE(traj && out);
  return guarded(
      [&] { *out = new dcesta_moore{dcesta::MooreFunction::recursion(traj->traj, moore_options(opt))}; });
}

dcesta_status dcesta_moore_wkb(const dcesta_trajectory* reference, const dcesta_moore_options* opt,
                               dcesta_moore** out) {
  DCESTA_REQUIRE(reference && out);
  return guarded(
      [&] { *out = new dcesta_moore{dcesta::MooreFunction::analytic_wkb(reference->traj, moore_options(opt))}; });
}

void dcesta_moore_free(dcesta_moore* R) { delete R; }

dcesta_status dcesta_moore_value(const dcesta_moore* R, double z, double* out) {
  DCESTA_REQUIRE(R && out);
  return guarded([&] { *out = R->fn.value(z); });
}

dcesta_status dcesta_moore_derivatives(const dcesta_moore* R, double z, int order, double out[4]) {
  DCESTA_REQUIRE(R && out && order >= 1 && order <= 3);
  return guarded([&] {
    const auto d = R->fn.derivatives(z, order);
    out[0] = d.R;
    out[1] = d.d1;
    out[2] = d.d2;
    out[3] = d.d3;
  });
}

dcesta_status dcesta_moore_equation_residual(const dcesta_moore* R, double t, double* out) {
  DCESTA_REQUIRE(R && out);
  return guarded([&] { *out = R->fn.moore_residual(t); });
}

dcesta_status dcesta_moore_boundary(const dcesta_moore* R, dcesta_trajectory** out) {
  DCESTA_REQUIRE(R && out);
  return guarded([&] { emit(R->fn.boundary(), out); });
}

dcesta_status dcesta_moore_mode(const dcesta_moore* R, int n, double x, double t, double* re, double* im) {
  DCESTA_REQUIRE(R && re && im && n >= 1);
  return guarded([&] {
    const auto phi = dcesta::mode_function(R->fn, n, x, t);
    *re = phi.real();
    *im = phi.imag();
  });
}

dcesta_status dcesta_moore_residual(const dcesta_trajectory* traj, const dcesta_moore_options* opt, int samples,
                                    dcesta_residual* out) {
  DCESTA_REQUIRE(traj && out && samples >= 2);
  return guarded([&] {
    const auto r = dcesta::extract_residual(traj->traj, moore_options(opt), samples);
    *out = {r.period, r.mean, r.sup_deviation, r.l2_deviation, r.periodicity_error};
  });
}

/* ---- stress ---- */

void dcesta_quad_options_default(dcesta_quad_options* opt) {
  if (!opt) return;
  const dcesta::StressOptions d;
  opt->abs_tol = d.quad_abs_tol;
  opt->rel_tol = d.quad_rel_tol;
}

dcesta_status dcesta_thermal_F(double T, double L0, double* out) {
  DCESTA_REQUIRE(out);
  return guarded([&] { *out = dcesta::thermal_F(T, L0); });
}

dcesta_status dcesta_g_function(const dcesta_moore* R, dcesta_thermal th, double z, double* out) {
  DCESTA_REQUIRE(R && out);
  return guarded([&] { *out = dcesta::g_function(R->fn, z, thermal(th)); });
}

dcesta_status dcesta_stress_tensor(const dcesta_moore* R, dcesta_thermal th, double x, double t, double out[2]) {
  DCESTA_REQUIRE(R && out);
  return guarded([&] {
    const auto s = dcesta::stress_tensor(R->fn, thermal(th), x, t);
    out[0] = s.Ttt;
    out[1] = s.Ttx;
  });
}

dcesta_status dcesta_total_energy(const dcesta_moore* R, const dcesta_trajectory* wall, dcesta_thermal th, double t,
                                  const dcesta_quad_options* opt, double* out) {
  DCESTA_REQUIRE(R && out);
  return guarded([&] {
    const auto& w = wall ? wall->traj : R->fn.boundary();
    *out = dcesta::total_energy(R->fn, w, thermal(th), t, stress_options(opt));
  });
}

dcesta_status dcesta_adiabatic_energy(double L, dcesta_thermal th, double* out) {
  DCESTA_REQUIRE(out);
  return guarded([&] { *out = dcesta::adiabatic_energy(L, thermal(th)); });
}

dcesta_status dcesta_adiabaticity(const dcesta_moore* R, const dcesta_trajectory* wall, dcesta_thermal th, double t,
                                  const dcesta_quad_options* opt, double* out) {
  DCESTA_REQUIRE(R && out);
  return guarded([&] {
    const auto& w = wall ? wall->traj : R->fn.boundary();
    *out = dcesta::adiabaticity_parameter(R->fn, w, thermal(th), t, stress_options(opt));
  });
}

dcesta_status dcesta_energy_curve(const dcesta_moore* R, const dcesta_trajectory* wall, dcesta_thermal th,
                                  const double* t, size_t n, const dcesta_quad_options* opt, double* E,
                                  double* E_ad, double* Q, int* q_valid) {
  DCESTA_REQUIRE(R && (n == 0 || (t && E && E_ad && Q && q_valid)));
  return guarded([&] {
    const auto& w = wall ? wall->traj : R->fn.boundary();
    const auto rows =
        dcesta::sample_energy(R->fn, w, thermal(th), std::vector<double>(t, t + n), stress_options(opt));
    for (size_t i = 0; i < n; ++i) {
      E[i] = rows[i].E;
      E_ad[i] = rows[i].E_ad;
      q_valid[i] = rows[i].Qstar.has_value() ? 1 : 0;
      Q[i] = rows[i].Qstar.value_or(std::nan(""));
    }
  });
}

dcesta_status dcesta_density_map(const dcesta_moore* R, dcesta_thermal th, const double* t, size_t nt,
                                 const double* x, size_t nx, double* Ttt, double* Ttx) {
  DCESTA_REQUIRE(R && (nt == 0 || t) && (nx == 0 || x) && (nt * nx == 0 || (Ttt && Ttx)));
  return guarded([&] {
    const auto rows = dcesta::sample_density(R->fn, thermal(th), std::vector<double>(t, t + nt),
                                             std::vector<double>(x, x + nx));
    for (size_t i = 0; i < rows.size(); ++i) {
      Ttt[i] = rows[i].Ttt;
      Ttx[i] = rows[i].Ttx;
    }
  });
}

/* ---- Otto cycles ---- */

void dcesta_otto_spec_default(dcesta_otto_spec* spec) {
  if (!spec) return;
  const dcesta::OttoCycleSpec d;
  spec->L0 = d.L0;
  spec->L1 = d.L1;
  spec->T0 = d.T0;
  spec->T1 = d.T1;
  spec->stroke_kind = d.stroke_kind == dcesta::StrokeKind::sta ? 1 : 0;
  spec->tau = d.tau;
  dcesta_moore_options_default(&spec->moore);
  dcesta_quad_options_default(&spec->quad);
}

dcesta_status dcesta_otto_check(const dcesta_otto_spec* spec) {
  DCESTA_REQUIRE(spec);
  return guarded([&] { dcesta::check_cycle(otto_spec(*spec)); });
}

dcesta_status dcesta_otto_adiabatic(const dcesta_otto_spec* spec, dcesta_otto_result* out) {
  DCESTA_REQUIRE(spec && out);
  return guarded([&] { copy_result(dcesta::cycle_adiabatic(otto_spec(*spec)), true, out); });
}

dcesta_status dcesta_otto_finite_time(const dcesta_otto_spec* spec, dcesta_otto_result* out) {
  DCESTA_REQUIRE(spec && out);
  return guarded([&] { copy_result(dcesta::cycle_finite_time(otto_spec(*spec)), true, out); });
}

dcesta_status dcesta_otto_sweep(const dcesta_otto_spec* spec, const double* taus, size_t n,
                                dcesta_otto_result* out) {
  DCESTA_REQUIRE(spec && (n == 0 || (taus && out)));
  return guarded([&] {
    const auto base = otto_spec(*spec);
    const auto rows = dcesta::otto_sweep(base, std::vector<double>(taus, taus + n), {base.stroke_kind});
    for (size_t i = 0; i < n; ++i) copy_result(rows[i].result, rows[i].available, &out[i]);
  });
}

dcesta_status dcesta_otto_max_sta_power(const dcesta_otto_spec* spec, double* out) {
  DCESTA_REQUIRE(spec && out);
  return guarded([&] { *out = dcesta::max_sta_power(otto_spec(*spec)); });
}

dcesta_status dcesta_otto_fit(const double* taus, const dcesta_otto_result* rows, size_t n,
                              dcesta_fit_report* out) {
  DCESTA_REQUIRE(out && (n == 0 || (taus && rows)));
  return guarded([&] {
    std::vector<dcesta::SweepRow> sweep(n);
    for (size_t i = 0; i < n; ++i) {
      sweep[i].tau = taus[i];
      sweep[i].available = rows[i].available != 0;
      sweep[i].result.W_ad = rows[i].W_ad;
      sweep[i].result.W = rows[i].W;
    }
    const auto rep = dcesta::power_decay_fit(sweep);
    *out = {rep.applicable ? 1 : 0, rep.exponent, rep.stderr_exponent, rep.ci_low, rep.ci_high, rep.points_used};
  });
}

dcesta_status dcesta_efficiency_at_speed(double v, double* out) {
  DCESTA_REQUIRE(out);
  return guarded([&] { *out = dcesta::efficiency_at_speed(v); });
}

dcesta_status dcesta_speed_for_lengths(double L0, double L1, double* out) {
  DCESTA_REQUIRE(out);
  return guarded([&] { *out = dcesta::speed_for_lengths(L0, L1); });
}

}  // extern "C"
