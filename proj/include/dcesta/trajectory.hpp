// SPDX-License-Identifier: Apache-2.0
#pragma once

// Mirror worldlines L(t) for a cavity whose left wall is fixed at x = 0.
// Natural units throughout (c = hbar = k_B = 1).

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dcesta {

enum class TrajectoryKind { static_length, smoothstep, step, linear_segment, sampled, composite, effective };

const char* to_string(TrajectoryKind kind);

/// Which one-sided limit a derivative record refers to. Breakpoints are
/// evaluated from the right (half-open pieces [a, b)) unless asked otherwise.
enum class Side { interior, left, right };

struct LengthDerivs {
  double L = 0.0;
  double dL = 0.0;
  double d2L = 0.0;
  double d3L = 0.0;
  Side side = Side::interior;
};

/// Smoothness marker: highest derivative order that is continuous at a
/// point. kSmooth means "C3 or better", kJump means L itself jumps.
inline constexpr int kSmooth = 3;
inline constexpr int kJump = -1;

/// Implementation interface behind Trajectory. Shapes are immutable once
/// built and every method is safe to call concurrently.
class TrajectoryShape {
 public:
  virtual ~TrajectoryShape() = default;

  virtual TrajectoryKind kind() const = 0;
  virtual double eval(double t) const = 0;
  /// Derivatives for t away from a breakpoint, or the requested one-sided
  /// limit at one.
  virtual LengthDerivs derivs(double t, Side side) const = 0;

  virtual double t_start() const = 0;
  virtual double t_end() const = 0;
  virtual double initial_length() const = 0;
  virtual double final_length() const = 0;
  /// Bounds on L(t) over all t; used to bracket characteristic roots.
  virtual double min_length() const = 0;
  virtual double max_length() const = 0;
  /// Times where some derivative of order <= 3 may jump.
  virtual std::vector<double> breakpoints() const = 0;
  /// Continuity class at t (kSmooth away from breakpoints).
  virtual int continuity_at(double t) const = 0;
  virtual std::string describe() const = 0;
};

/// Immutable value handle around a shape.
class Trajectory {
 public:
  explicit Trajectory(std::shared_ptr<const TrajectoryShape> shape);

  static Trajectory constant(double length);
  /// L0 (1 - eps * delta((t - t0) / tau)) with the quintic smoothstep delta.
  static Trajectory smoothstep(double L0, double eps, double tau, double t0 = 0.0);
  /// Quintic interpolation between two arbitrary lengths.
  static Trajectory smoothstep_between(double L_from, double L_to, double tau, double t0 = 0.0);
  /// Idealized instantaneous jump at t0. Non-physical; only the STA closed
  /// form consumes it.
  static Trajectory step(double L0, double L1, double t0 = 0.0);
  static Trajectory linear_segment(double L0, double L1, double t_start, double t_end);
  /// Natural cubic spline through (t, L), constant outside the table.
  static Trajectory sampled(std::vector<double> t, std::vector<double> L);
  /// Chain of trajectories, each in absolute time. Piece i governs
  /// [t_start(i), t_start(i+1)); consecutive end/start lengths must agree.
  static Trajectory composite(std::vector<Trajectory> pieces);

  TrajectoryKind kind() const { return shape_->kind(); }
  double eval(double t) const { return shape_->eval(t); }
  /// (L, L', L'', L'''). Throws DiscontinuityError at the jump of a step.
  LengthDerivs eval_derivs(double t) const;
  LengthDerivs eval_derivs(double t, Side side) const;

  double t_start() const { return shape_->t_start(); }
  double t_end() const { return shape_->t_end(); }
  double initial_length() const { return shape_->initial_length(); }
  double final_length() const { return shape_->final_length(); }
  double min_length() const { return shape_->min_length(); }
  double max_length() const { return shape_->max_length(); }
  std::vector<double> breakpoints() const { return shape_->breakpoints(); }
  int continuity_at(double t) const { return shape_->continuity_at(t); }
  std::string describe() const { return shape_->describe(); }

  const TrajectoryShape& shape() const { return *shape_; }

 private:
  std::shared_ptr<const TrajectoryShape> shape_;
};

struct ValidationReport {
  double min_length = 0.0;
  double max_speed = 0.0;
  /// Lowest continuity class found at the breakpoints (kSmooth if none).
  int continuity = kSmooth;
  bool physical = false;
  std::vector<std::string> notes;
};

/// Grid scan plus local refinement of max |L'|. The verdict is data: a
/// non-physical trajectory is reported, not rejected.
ValidationReport validate(const Trajectory& traj);

/// The quintic 10u^3 - 15u^4 + 6u^5 and its u-derivatives, u clamped to [0, 1].
struct Quintic {
  static double value(double u);
  static double d1(double u);
  static double d2(double u);
  static double d3(double u);
};

/// Parses the JSON trajectory description:
///   {"kind":"smoothstep","L0":1.0,"eps":0.3,"tau":1.0}
///   {"kind":"step","L0":1.0,"L1":0.7}
///   {"kind":"samples","t":[...],"L":[...]}
/// plus "static", "linear" and "composite". Throws ConfigError.
Trajectory trajectory_from_json(const std::string& text);
std::string trajectory_to_json(const Trajectory& traj);

}  // namespace dcesta
