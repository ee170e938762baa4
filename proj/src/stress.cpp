// SPDX-License-Identifier: Apache-2.0
#include "dcesta/stress.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dcesta/errors.hpp"
#include "numerics.hpp"

namespace dcesta {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCasimir = kPi / 24.0;
}  // namespace

double thermal_F(double T, double L0) {
  if (T < 0.0 || !std::isfinite(T)) throw DomainError("temperature must be non-negative");
  if (!(L0 > 0.0)) throw DomainError("thermalization length must be positive");
  if (T == 0.0) return 0.0;
  const double beta_step = kPi / (L0 * T);  // n pi / (L0 T) per mode
  // Neumaier-compensated sum; terms decay geometrically past the peak.
  double sum = 0.0, comp = 0.0;
  const double q = std::exp(-beta_step);
  for (long n = 1;; ++n) {
    const double term = n * kPi / std::expm1(n * beta_step);
    const double s = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - s) + term : (term - s) + sum;
    sum = s;
    const double ratio = q * (n + 1.0) / n;
    if (n * beta_step > 1.0 && ratio < 1.0) {
      const double tail = term * ratio / (1.0 - ratio);
      if (tail < 1e-17 * (sum + comp)) break;
    }
    if (n > 100'000'000) throw ConvergenceError("thermal sum did not converge");
  }
  return sum + comp;
}

ThermalState ThermalState::at(double T, double L_therm) { return {T, L_therm, thermal_F(T, L_therm)}; }

double g_function(const MooreDerivs& d, const ThermalState& th) {
  if (!(d.d1 > 0.0)) throw SingularityError("R' must be positive");
  const double a = d.d3 / d.d1;
  const double b = d.d2 / d.d1;
  return -(a - 1.5 * b * b) / (24.0 * kPi) + 0.5 * d.d1 * d.d1 * (th.F - kCasimir);
}

double g_function(const MooreFunction& R, double z, const ThermalState& th) {
  return g_function(R.derivatives(z, 3), th);
}

StressSample stress_tensor(const MooreFunction& R, const ThermalState& th, double x, double t) {
  const double L = R.boundary().eval(t);
  if (x < 0.0 || x > L * (1.0 + 1e-12)) throw DomainError("stress tensor evaluated outside the cavity");
  const double gm = g_function(R, t - x, th);
  const double gp = g_function(R, t + x, th);
  return {t, x, gm + gp, gp - gm};
}

double total_energy(const MooreFunction& R, const Trajectory& traj, const ThermalState& th, double t,
                    const StressOptions& opt) {
  const double L = traj.eval(t);
  const double a = t - L;
  const double b = t + L;
  const auto breaks = R.kinks(a, b);
  auto g = [&](double u) { return g_function(R, u, th); };
  return detail::integrate(g, a, b, breaks, {opt.quad_abs_tol, opt.quad_rel_tol, opt.quad_max_depth}).value;
}

double adiabatic_energy(double L, const ThermalState& th) {
  if (!(L > 0.0)) throw DomainError("length must be positive");
  return (th.F - kCasimir) / L;
}

namespace {
bool ill_conditioned(double e_ad, double L, const StressOptions& opt) {
  return std::abs(e_ad) * L < opt.singular_band * kCasimir;
}
}  // namespace

double adiabaticity_parameter(const MooreFunction& R, const Trajectory& traj, const ThermalState& th,
                              double t, const StressOptions& opt) {
  const double L = traj.eval(t);
  const double e_ad = adiabatic_energy(L, th);
  if (ill_conditioned(e_ad, L, opt))
    throw SingularityError("adiabatic energy crosses zero; Q* is ill-conditioned at t = " + std::to_string(t));
  return total_energy(R, traj, th, t, opt) / e_ad;
}

std::vector<EnergySample> sample_energy(const MooreFunction& R, const Trajectory& traj, const ThermalState& th,
                                        const std::vector<double>& t_grid, const StressOptions& opt) {
  std::vector<EnergySample> out(t_grid.size());
  detail::parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    const double L = traj.eval(t);
    auto& s = out[i];
    s.t = t;
    s.E = total_energy(R, traj, th, t, opt);
    s.E_ad = adiabatic_energy(L, th);
    if (!ill_conditioned(s.E_ad, L, opt)) s.Qstar = s.E / s.E_ad;
  });
  return out;
}

std::vector<StressSample> sample_density(const MooreFunction& R, const ThermalState& th,
                                         const std::vector<double>& t_grid, const std::vector<double>& x_grid) {
  const std::size_t nx = x_grid.size();
  std::vector<StressSample> out(t_grid.size() * nx);
  detail::parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    const double L = R.boundary().eval(t);
    for (std::size_t j = 0; j < nx; ++j) {
      const double x = x_grid[j];
      auto& s = out[i * nx + j];
      if (x < 0.0 || x > L * (1.0 + 1e-12)) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        s = {t, x, nan, nan};
      } else {
        s = stress_tensor(R, th, x, t);
      }
    }
  });
  return out;
}

}  // namespace dcesta
