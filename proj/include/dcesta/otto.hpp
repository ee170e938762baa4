// SPDX-License-Identifier: Apache-2.0
#pragma once

// Quantum Otto cycle with the cavity field as working medium.
//
// Cycle order, starting thermalized with the cold bath at length L0:
//   AB  compression L0 -> L1 (occupation frozen at the cold bath)
//   BC  heating at fixed L1 with the hot bath
//   CD  expansion L1 -> L0 (occupation frozen at the hot bath)
//   DA  cooling at fixed L0 with the cold bath
// Stroke works <w> are energy changes of the field; the engine delivers
// W = -(<w>_AB + <w>_CD). Thermalization is instantaneous and exchanges no
// work. The larger of T0, T1 is the hot bath.

#include <string>
#include <vector>

#include "dcesta/moore.hpp"
#include "dcesta/stress.hpp"
#include "dcesta/trajectory.hpp"

namespace dcesta {

enum class StrokeKind { reference, sta };
const char* to_string(StrokeKind kind);

struct OttoCycleSpec {
  double L0 = 1.0;
  double L1 = 0.7;
  double T0 = 1.0;  // bath label paired with L0
  double T1 = 5.0;  // bath label paired with L1
  StrokeKind stroke_kind = StrokeKind::reference;
  double tau = 1.0;
  MooreOptions moore{};
  StressOptions stress{};

  double eps() const { return 1.0 - L1 / L0; }
  double hot_temperature() const;
  double cold_temperature() const;
};

struct OttoCycleResult {
  double W_ad = 0.0;
  double W = 0.0;
  double Q_ad = 0.0;
  double Q = 0.0;
  double w_ad_AB = 0.0;
  double w_ad_CD = 0.0;
  double w_AB = 0.0;
  double w_CD = 0.0;
  double w_fric_AB = 0.0;
  double w_fric_CD = 0.0;
  double eta = 0.0;
  double eta_ad = 0.0;
  double P = 0.0;
  double cycle_time = 0.0;
};

/// (F - pi/24) (1/L_to - 1/L_from): energy change along an adiabat.
double adiabatic_stroke_work(double L_from, double L_to, const ThermalState& th);

/// Throws InvalidCycle if L1 > L0 or if 1 - L1/L0 > 1 - T_cold/T_hot.
void check_cycle(const OttoCycleSpec& spec);

OttoCycleResult cycle_adiabatic(const OttoCycleSpec& spec);

/// Both strokes driven for real: the reference quintic of duration tau or
/// its effective trajectory, solved by the Moore recursion.
OttoCycleResult cycle_finite_time(const OttoCycleSpec& spec);

/// Field energy after the wall has stopped, for a stroke starting in a
/// thermal state at its initial length.
double stroke_final_energy(const Trajectory& wall, const ThermalState& th, const MooreOptions& mopt,
                           const StressOptions& sopt);

/// Full-cycle time 2 (L0 + L1 + tau) used to normalize power for both
/// stroke kinds.
double cycle_time(const OttoCycleSpec& spec);
double power(const OttoCycleResult& result, const OttoCycleSpec& spec);
/// W_ad / (2 (L0 + L1)): the tau -> 0 limit of the STA power.
double max_sta_power(const OttoCycleSpec& spec);

/// 1 - (1 - v)/(1 + v) = 2v/(1 + v). Throws DomainError unless 0 <= v < 1.
double efficiency_at_speed(double v);
/// (L0 - L1) / (L0 + L1): the constant speed of the step-limit shortcut.
double speed_for_lengths(double L0, double L1);
/// L0 (1 - v) / (1 + v).
double final_length_for_speed(double L0, double v);

struct FitReport {
  bool applicable = false;
  double exponent = 0.0;
  double stderr_exponent = 0.0;
  double ci_low = 0.0;   // 95 %
  double ci_high = 0.0;
  std::size_t points_used = 0;
  std::string note;
};

struct SweepRow {
  double tau = 0.0;
  StrokeKind kind = StrokeKind::reference;
  bool available = true;  // false when a stroke wall would move faster than light
  OttoCycleResult result;
};

/// Finite-time cycles over a tau grid (parallel, ordered output). Rows whose
/// walls are not physical are kept with available = false.
std::vector<SweepRow> otto_sweep(const OttoCycleSpec& base, const std::vector<double>& taus,
                                 const std::vector<StrokeKind>& kinds);

/// Least-squares slope of log(W_ad - W) against log tau over the available
/// rows. Points whose
/// friction is below `noise_floor * |W_ad|` are dropped; if none survive the
/// fit is reported as not applicable, and fewer than four survivors raise
/// FitError.
FitReport power_decay_fit(const std::vector<SweepRow>& rows, double noise_floor = 1e-8);
FitReport power_decay_fit(const OttoCycleSpec& base, const std::vector<double>& taus);

}  // namespace dcesta
