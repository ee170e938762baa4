// SPDX-License-Identifier: Apache-2.0
#include "dcesta/otto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "dcesta/errors.hpp"
#include "dcesta/sta.hpp"
#include "numerics.hpp"

namespace dcesta {

const char* to_string(StrokeKind kind) { return kind == StrokeKind::sta ? "sta" : "reference"; }

double OttoCycleSpec::hot_temperature() const { return std::max(T0, T1); }
double OttoCycleSpec::cold_temperature() const { return std::min(T0, T1); }

double adiabatic_stroke_work(double L_from, double L_to, const ThermalState& th) {
  if (!(L_from > 0.0) || !(L_to > 0.0)) throw DomainError("stroke lengths must be positive");
  return adiabatic_energy(L_to, th) - adiabatic_energy(L_from, th);
}

void check_cycle(const OttoCycleSpec& spec) {
  if (!(spec.L0 > 0.0) || !(spec.L1 > 0.0)) throw InvalidCycle("cycle lengths must be positive");
  if (spec.L1 > spec.L0) throw InvalidCycle("cycle needs L1 <= L0");
  if (spec.T0 < 0.0 || spec.T1 < 0.0) throw InvalidCycle("bath temperatures must be non-negative");
  const double th = spec.hot_temperature();
  const double carnot = th > 0.0 ? 1.0 - spec.cold_temperature() / th : 0.0;
  const double otto = 1.0 - spec.L1 / spec.L0;
  if (otto > carnot)
    throw InvalidCycle("Otto efficiency " + std::to_string(otto) + " exceeds the Carnot bound " +
                       std::to_string(carnot));
}

namespace {

struct Baths {
  ThermalState cold;  // thermalized at L0
  ThermalState hot;   // thermalized at L1
};

Baths baths(const OttoCycleSpec& spec) {
  return {ThermalState::at(spec.cold_temperature(), spec.L0), ThermalState::at(spec.hot_temperature(), spec.L1)};
}

void fill_adiabatic(const OttoCycleSpec& spec, const Baths& b, OttoCycleResult& r) {
  r.w_ad_AB = adiabatic_stroke_work(spec.L0, spec.L1, b.cold);
  r.w_ad_CD = adiabatic_stroke_work(spec.L1, spec.L0, b.hot);
  r.W_ad = -(r.w_ad_AB + r.w_ad_CD);
  r.Q_ad = adiabatic_energy(spec.L1, b.hot) - adiabatic_energy(spec.L1, b.cold);
  r.eta_ad = r.Q_ad != 0.0 ? r.W_ad / r.Q_ad : 0.0;
  r.cycle_time = cycle_time(spec);
}

}  // namespace

double cycle_time(const OttoCycleSpec& spec) { return 2.0 * (spec.L0 + spec.L1 + spec.tau); }

OttoCycleResult cycle_adiabatic(const OttoCycleSpec& spec) {
  check_cycle(spec);
  const auto b = baths(spec);
  OttoCycleResult r;
  fill_adiabatic(spec, b, r);
  r.W = r.W_ad;
  r.Q = r.Q_ad;
  r.w_AB = r.w_ad_AB;
  r.w_CD = r.w_ad_CD;
  r.eta = r.eta_ad;
  r.P = r.W / r.cycle_time;
  return r;
}

double stroke_final_energy(const Trajectory& wall, const ThermalState& th, const MooreOptions& mopt,
                           const StressOptions& sopt) {
  const auto R = MooreFunction::recursion(wall, mopt);
  return total_energy(R, wall, th, wall.t_end(), sopt);
}

OttoCycleResult cycle_finite_time(const OttoCycleSpec& spec) {
  check_cycle(spec);
  if (!(spec.tau > 0.0)) throw InvalidCycle("stroke duration tau must be positive");
  const auto b = baths(spec);
  OttoCycleResult r;
  fill_adiabatic(spec, b, r);

  auto wall = [&](double from, double to) {
    auto ref = Trajectory::smoothstep_between(from, to, spec.tau);
    return spec.stroke_kind == StrokeKind::sta ? effective_trajectory(ref) : ref;
  };
  const double e_cold_L0 = adiabatic_energy(spec.L0, b.cold);
  const double e_hot_L1 = adiabatic_energy(spec.L1, b.hot);

  const double e_compressed = stroke_final_energy(wall(spec.L0, spec.L1), b.cold, spec.moore, spec.stress);
  const double e_expanded = stroke_final_energy(wall(spec.L1, spec.L0), b.hot, spec.moore, spec.stress);

  r.w_AB = e_compressed - e_cold_L0;
  r.Q = e_hot_L1 - e_compressed;
  r.w_CD = e_expanded - e_hot_L1;
  r.W = -(r.w_AB + r.w_CD);
  r.w_fric_AB = r.w_AB - r.w_ad_AB;
  r.w_fric_CD = r.w_CD - r.w_ad_CD;
  r.eta = r.Q != 0.0 ? r.W / r.Q : 0.0;
  r.P = r.W / r.cycle_time;
  return r;
}

double power(const OttoCycleResult& result, const OttoCycleSpec& spec) {
  const double ct = cycle_time(spec);
  if (!(ct > 0.0)) throw DomainError("cycle time must be positive");
  return result.W / ct;
}

double max_sta_power(const OttoCycleSpec& spec) {
  OttoCycleSpec s = spec;
  s.tau = 0.0;
  return cycle_adiabatic(s).W_ad / (2.0 * (spec.L0 + spec.L1));
}

double efficiency_at_speed(double v) {
  if (!(v >= 0.0 && v < 1.0)) throw DomainError("mirror speed must satisfy 0 <= v < 1");
  return 1.0 - (1.0 - v) / (1.0 + v);
}

double speed_for_lengths(double L0, double L1) {
  if (!(L0 > 0.0) || !(L1 > 0.0)) throw DomainError("lengths must be positive");
  return (L0 - L1) / (L0 + L1);
}

double final_length_for_speed(double L0, double v) {
  if (!(v >= 0.0 && v < 1.0)) throw DomainError("mirror speed must satisfy 0 <= v < 1");
  return L0 * (1.0 - v) / (1.0 + v);
}

std::vector<SweepRow> otto_sweep(const OttoCycleSpec& base, const std::vector<double>& taus,
                                 const std::vector<StrokeKind>& kinds) {
  check_cycle(base);
  std::vector<SweepRow> rows;
  for (double tau : taus)
    for (auto k : kinds) rows.push_back({tau, k, true, {}});
  detail::parallel_for(rows.size(), [&](std::size_t i) {
    OttoCycleSpec s = base;
    s.tau = rows[i].tau;
    s.stroke_kind = rows[i].kind;
    try {
      rows[i].result = cycle_finite_time(s);
    } catch (const DomainError&) {
      rows[i].available = false;
      rows[i].result = cycle_adiabatic(s);
      auto& r = rows[i].result;
      r.W = r.Q = r.eta = r.P = r.w_AB = r.w_CD = r.w_fric_AB = r.w_fric_CD =
          std::numeric_limits<double>::quiet_NaN();
    }
  });
  return rows;
}

FitReport power_decay_fit(const std::vector<SweepRow>& rows, double noise_floor) {
  std::vector<double> xs, ys;
  for (const auto& row : rows) {
    if (!row.available) continue;
    const double fric = row.result.W_ad - row.result.W;
    if (fric > noise_floor * std::abs(row.result.W_ad) && fric > 0.0) {
      xs.push_back(std::log(row.tau));
      ys.push_back(std::log(fric));
    }
  }
  FitReport rep;
  rep.points_used = xs.size();
  if (xs.empty()) {
    rep.note = "friction indistinguishable from zero; fit not applicable";
    return rep;
  }
  if (xs.size() < 4) throw FitError("fewer than four usable points for the decay fit");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("decay fit needs at least two distinct tau values");
  rep.applicable = true;
  rep.exponent = sxy / sxx;
  const double intercept = my - rep.exponent * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (intercept + rep.exponent * xs[i]);
    ssr += e * e;
  }
  rep.stderr_exponent = std::sqrt(ssr / (n - 2.0) / sxx);
  const boost::math::students_t dist(n - 2.0);
  const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
  rep.ci_low = rep.exponent - q * rep.stderr_exponent;
  rep.ci_high = rep.exponent + q * rep.stderr_exponent;
  rep.note = "slope of log friction work against log tau";
  return rep;
}

FitReport power_decay_fit(const OttoCycleSpec& base, const std::vector<double>& taus) {
  return power_decay_fit(otto_sweep(base, taus, {base.stroke_kind}));
}

}  // namespace dcesta
