// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dcesta/errors.hpp"
#include "dcesta/moore.hpp"
#include "dcesta/sta.hpp"
#include "dcesta/stress.hpp"
#include "golden.hpp"

using namespace dcesta;
using std::numbers::pi;

TEST_CASE("thermal factor") {
  for (const auto& row : golden::kThermalF)
    CHECK(thermal_F(row[0], row[1]) == doctest::Approx(row[2]).epsilon(1e-12));
  CHECK(thermal_F(0.0, 1.0) == 0.0);
  CHECK(thermal_F(5.0, 1.0) == doctest::Approx(thermal_F(10.0, 0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(thermal_F(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(thermal_F(1.0, 0.0), DomainError);
}

TEST_CASE("static cavity stress") {
  const auto R = MooreFunction::recursion(Trajectory::constant(1.0));
  const auto th5 = ThermalState::at(5.0, 1.0);
  CHECK(g_function(R, 0.3, th5) == doctest::Approx(0.5 * (golden::kThermalF[0][2] - pi / 24)).epsilon(1e-12));

  const auto R7 = MooreFunction::recursion(Trajectory::constant(0.7));
  const auto vac = ThermalState::vacuum();
  const auto s = stress_tensor(R7, vac, 0.2, 1.0);
  CHECK(s.Ttt == doctest::Approx(-pi / (24 * 0.49)).epsilon(1e-12));
  CHECK(std::abs(s.Ttx) < 1e-15);
  CHECK(total_energy(R7, Trajectory::constant(0.7), vac, 2.0) == doctest::Approx(-pi / 16.8).epsilon(1e-10));
}

TEST_CASE("adiabatic energy") {
  const auto vac = ThermalState::vacuum();
  CHECK(adiabatic_energy(0.7, vac) == doctest::Approx(-pi / 16.8).epsilon(1e-14));
  CHECK(adiabatic_energy(0.5, ThermalState::at(5.0, 1.0)) ==
        doctest::Approx((golden::kThermalF[0][2] - pi / 24) / 0.5).epsilon(1e-12));
  CHECK_THROWS_AS(adiabatic_energy(0.0, vac), DomainError);
}

TEST_CASE("G from the WKB source matches a finite-difference Schwarzian") {
  const auto R = MooreFunction::analytic_wkb(Trajectory::smoothstep(1.0, 0.3, 1.0));
  const auto th = ThermalState::at(1.0, 1.0);
  const double h = 1e-3;
  for (double z : {0.3, 0.5, 0.8}) {
    // five-point stencils on R'
    auto d1 = [&](double x) { return R.derivatives(x, 1).d1; };
    const double r1 = d1(z);
    const double r2 = (-d1(z + 2 * h) + 8 * d1(z + h) - 8 * d1(z - h) + d1(z - 2 * h)) / (12 * h);
    const double r3 = (-d1(z + 2 * h) + 16 * d1(z + h) - 30 * r1 + 16 * d1(z - h) - d1(z - 2 * h)) / (12 * h * h);
    const double g = -(r3 / r1 - 1.5 * (r2 / r1) * (r2 / r1)) / (24 * pi) + r1 * r1 * (th.F - pi / 24) / 2;
    CHECK(std::abs(g_function(R, z, th) - g) < 1e-6 * std::max(1.0, std::abs(g)));
  }
}

TEST_CASE("energy returns to the adiabatic value after the shortcut") {
  const auto ref = Trajectory::smoothstep(1.0, 0.3, 1.0);
  const auto R = MooreFunction::analytic_wkb(ref);
  const auto& wall = R.boundary();
  for (double T : {0.0, 1.0, 5.0}) {
    const auto th = ThermalState::at(T, 1.0);
    const double E = total_energy(R, wall, th, 1.0 + 0.7 + 0.1, {});
    CHECK(std::abs(E - (th.F - pi / 24) / 0.7) < 1e-8);
  }
}

TEST_CASE("adiabaticity parameter") {
  const auto ref = Trajectory::smoothstep(1.0, 0.3, 1.0);
  const auto Rs = MooreFunction::analytic_wkb(ref);
  const auto Rr = MooreFunction::recursion(ref);
  const auto vac = ThermalState::vacuum();
  CHECK(adiabaticity_parameter(Rs, Rs.boundary(), vac, -1.0) == doctest::Approx(1.0).epsilon(1e-10));
  const double q_sta = adiabaticity_parameter(Rs, Rs.boundary(), vac, 1.7);
  const double q_raw = adiabaticity_parameter(Rr, ref, vac, 1.7);
  CHECK(std::abs(q_sta - 1.0) < 1e-6);
  CHECK(std::abs(q_raw - 1.0) > 10 * std::abs(q_sta - 1.0));
  // The raw deviation persists: it oscillates with period 2 L1 after the motion.
  CHECK(std::abs(adiabaticity_parameter(Rr, ref, vac, 1.7 + 1.4) - q_raw) < 1e-8);

  const auto static_R = MooreFunction::recursion(Trajectory::constant(1.0));
  CHECK(adiabaticity_parameter(static_R, Trajectory::constant(1.0), vac, 3.0) == doctest::Approx(1.0));

  // Temperature at which F(T L) = pi / 24: the adiabatic energy vanishes.
  double lo = 0.5, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (thermal_F(mid, 1.0) < pi / 24 ? lo : hi) = mid;
  }
  const auto th0 = ThermalState::at(0.5 * (lo + hi), 1.0);
  CHECK_THROWS_AS(adiabaticity_parameter(static_R, Trajectory::constant(1.0), th0, 3.0), SingularityError);
  const auto rows = sample_energy(static_R, Trajectory::constant(1.0), th0, {1.0, 2.0});
  CHECK_FALSE(rows[0].Qstar.has_value());
}

TEST_CASE("density maps") {
  const auto ref = Trajectory::smoothstep(1.0, 0.3, 1.0);
  const auto R = MooreFunction::analytic_wkb(ref);
  const auto vac = ThermalState::vacuum();
  const auto rows = sample_density(R, vac, {-1.0, 1.7}, {0.0, 0.35, 0.69, 0.9});
  REQUIRE(rows.size() == 8);
  for (int j = 0; j < 4; ++j) CHECK(rows[j].Ttt == doctest::Approx(-pi / 24).epsilon(1e-8));
  for (int j = 4; j < 7; ++j) CHECK(rows[j].Ttt == doctest::Approx(-pi / (24 * 0.49)).epsilon(1e-8));
  CHECK(std::isnan(rows[7].Ttt));
}
