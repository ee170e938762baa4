// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shortcuts to adiabaticity. The adiabatic phase of a reference trajectory,
//   phi(z) = int_0^z dt / L_ref(t),
// solves the Moore equation exactly along the effective trajectory L_eff
// defined by phi(t + L_eff) - phi(t - L_eff) = 2. Driving the mirror along
// L_eff produces no particles.

#include <functional>
#include <memory>
#include <vector>

#include "dcesta/trajectory.hpp"

namespace dcesta {

/// phi and its derivatives up to third order at one point.
struct PhaseDerivs {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

class WkbPhase {
 public:
  explicit WkbPhase(Trajectory reference);

  double operator()(double z) const;
  PhaseDerivs derivs(double z, Side side = Side::right) const;
  const Trajectory& reference() const { return ref_; }

 private:
  double primitive(double z) const;  // integral from t_start

  Trajectory ref_;
  double t0_ = 0.0, t1_ = 0.0;
  double offset_ = 0.0;  // primitive(0), subtracted so that phi(0) = 0
  std::vector<double> nodes_;
  std::vector<double> cumulative_;
};

WkbPhase wkb_phase(const Trajectory& reference);

/// L_eff(t) for one t. Exactly L0 for t <= t_start - L0 and L1 for
/// t >= t_end + L1.
double effective_length(const WkbPhase& phase, double t);
double effective_length(const Trajectory& reference, double t);

/// Closed-form effective trajectory of the instantaneous jump at t = 0:
/// linear between -L0 and L1.
double effective_trajectory_step(double L0, double L1, double t);

/// The effective trajectory as a Trajectory value (kind `effective`), with
/// analytic derivatives up to third order.
Trajectory effective_trajectory(const Trajectory& reference);
Trajectory effective_trajectory(std::shared_ptr<const WkbPhase> phase);

/// dL_eff/dt = (L(t+L_eff) - L(t-L_eff)) / (L(t-L_eff) + L(t+L_eff)).
/// Signed: negative while compressing.
double effective_speed(const WkbPhase& phase, double t);
double effective_speed(const Trajectory& reference, double t);

struct FrequencySample {
  double omega = 0.0;
  double d1 = 0.0;  // first time derivative
  double d2 = 0.0;  // second time derivative
};

struct EffectiveFrequency {
  double omega_sq = 0.0;
  double omega = 0.0;   // sqrt(omega_sq), NaN when omega_sq < 0
  bool real = true;     // false when omega_sq < 0
};

/// Oscillator STA frequency for a reference frequency profile:
/// w_eff^2 = w^2 + (w''/w - 1.5 (w'/w)^2) / 2. Throws DomainError for w <= 0.
EffectiveFrequency effective_frequency(const FrequencySample& ref);
EffectiveFrequency effective_frequency(const std::function<FrequencySample(double)>& ref, double t);

}  // namespace dcesta
