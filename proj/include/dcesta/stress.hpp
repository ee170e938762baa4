// SPDX-License-Identifier: Apache-2.0
#pragma once

// Renormalized stress tensor of the cavity field in an initially thermal
// state, built from the Moore function on the two null rays through (t, x).

#include <optional>
#include <vector>

#include "dcesta/moore.hpp"
#include "dcesta/trajectory.hpp"

namespace dcesta {

/// Planck sum F(T L0) = sum_n n pi / (exp(n pi / (L0 T)) - 1). Zero at T = 0.
double thermal_F(double T, double L0);

/// Thermal occupation fixed when the field thermalized at length L_therm.
/// F stays frozen along adiabats.
struct ThermalState {
  double T = 0.0;
  double L_therm = 1.0;
  double F = 0.0;

  static ThermalState at(double T, double L_therm);
  static ThermalState vacuum() { return at(0.0, 1.0); }
};

struct StressSample {
  double t = 0.0;
  double x = 0.0;
  double Ttt = 0.0;  // equals Txx
  double Ttx = 0.0;  // equals Txt
};

struct StressOptions {
  double quad_abs_tol = 1e-9;
  double quad_rel_tol = 1e-12;
  unsigned quad_max_depth = 22;
  /// |E_ad| L below this times pi/24 makes Q* ill-conditioned.
  double singular_band = 1e-6;
};

/// G(z) = -(R'''/R' - 1.5 (R''/R')^2) / (24 pi) + R'^2 (F - pi/24) / 2.
double g_function(const MooreDerivs& d, const ThermalState& th);
double g_function(const MooreFunction& R, double z, const ThermalState& th);

StressSample stress_tensor(const MooreFunction& R, const ThermalState& th, double x, double t);

/// E(t) = int_0^{L(t)} Ttt dx = int_{t-L}^{t+L} G(u) du, split at the kink
/// images of the wall junctions.
double total_energy(const MooreFunction& R, const Trajectory& traj, const ThermalState& th, double t,
                    const StressOptions& opt = {});

/// (F - pi/24) / L with F frozen at the thermalization length.
double adiabatic_energy(double L, const ThermalState& th);

/// Q* = E(t) / E_ad(L(t)). Throws SingularityError inside the band where
/// E_ad crosses zero.
double adiabaticity_parameter(const MooreFunction& R, const Trajectory& traj, const ThermalState& th,
                              double t, const StressOptions& opt = {});

struct EnergySample {
  double t = 0.0;
  double E = 0.0;
  double E_ad = 0.0;
  std::optional<double> Qstar;  // empty where ill-conditioned
};

/// Energy curve over a time grid (evaluated in parallel, ordered output).
std::vector<EnergySample> sample_energy(const MooreFunction& R, const Trajectory& traj, const ThermalState& th,
                                        const std::vector<double>& t_grid, const StressOptions& opt = {});

/// Density map over a rectangular (t, x) grid, row-major in t. Points outside
/// the cavity are returned as NaN.
std::vector<StressSample> sample_density(const MooreFunction& R, const ThermalState& th,
                                         const std::vector<double>& t_grid, const std::vector<double>& x_grid);

}  // namespace dcesta
