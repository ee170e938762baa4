// SPDX-License-Identifier: Apache-2.0
#pragma once

// Moore function R of a cavity with a moving right wall:
//   R(t + L(t)) - R(t - L(t)) = 2,   R(z) = z / L0 in the static IN region.
// Two sources are offered: the characteristic recursion for an arbitrary
// trajectory, and the adiabatic phase of a reference trajectory, which is
// the exact Moore function of that reference's effective trajectory.

#include <complex>
#include <memory>
#include <vector>

#include "dcesta/sta.hpp"
#include "dcesta/trajectory.hpp"

namespace dcesta {

struct MooreOptions {
  double eps_moore = 1e-10;      // Moore-equation residual budget
  double root_tol = 1e-15;       // relative bracket width for bounce roots
  int max_bounces = 1'000'000;
  std::size_t cache_limit = 1u << 20;
};

/// R and its first three derivatives at one null coordinate.
struct MooreDerivs {
  double R = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// One reflection off the moving wall: the incoming ray t - L(t) = z_minus
/// hits the wall at t_bounce and leaves along t + L(t) = z_plus.
struct RayBounce {
  double t_bounce = 0.0;
  double z_plus = 0.0;
};

struct RayOrigin {
  double t_bounce = 0.0;
  double z_minus = 0.0;
};

RayBounce ray_advance(const Trajectory& traj, double z_minus, const MooreOptions& opt = {});
RayOrigin ray_retreat(const Trajectory& traj, double z_plus, const MooreOptions& opt = {});

class MooreFunction {
 public:
  enum class Source { analytic_wkb, recursion };

  /// Characteristic recursion with memoized bounce records. Rejects the
  /// idealized step (the bounce map is not monotone across the jump).
  static MooreFunction recursion(Trajectory traj, MooreOptions opt = {});
  /// phi of the reference; its wall is effective_trajectory(reference).
  static MooreFunction analytic_wkb(const Trajectory& reference, MooreOptions opt = {});

  Source source() const;
  double value(double z) const;
  /// Derivatives up to `order` (1..3). Orders above the requested one are
  /// still filled when cheap. Throws DiscontinuityError when a bounce lands
  /// on a point where the wall is not smooth enough for that order.
  MooreDerivs derivatives(double z, int order = 3) const;

  /// The worldline along which this R satisfies the Moore equation.
  const Trajectory& boundary() const;
  double in_length() const;
  double out_length() const;
  /// R(t + L(t)) - R(t - L(t)) - 2.
  double moore_residual(double t) const;
  /// Null coordinates in (a, b) where R''' may jump; used as quadrature
  /// breakpoints.
  std::vector<double> kinks(double a, double b) const;
  const MooreOptions& options() const;

  class Impl;

 private:
  explicit MooreFunction(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// R_IN(z) by recursion (solve_in).
double solve_in(const Trajectory& traj, double z, const MooreOptions& opt = {});

struct Residual {
  double period = 0.0;
  std::vector<double> t;
  std::vector<double> r;    // d(t) - mean(d), d = R_IN(t) - t / L1
  double mean = 0.0;
  double sup_deviation = 0.0;
  double l2_deviation = 0.0;  // RMS over the grid
  double periodicity_error = 0.0;
};

/// Samples the OUT-region residual over one period [t_end + L1, t_end + 3 L1].
/// sup_deviation near zero certifies that no particles were created.
Residual extract_residual(const Trajectory& traj, const MooreOptions& opt = {}, int samples = 512);

/// f_n(x, t) = (exp(-i n pi R(t+x)) - exp(-i n pi R(t-x))) / sqrt(4 pi n).
/// Throws DomainError outside 0 <= x <= L(t).
std::complex<double> mode_function(const MooreFunction& R, int n, double x, double t);

}  // namespace dcesta
