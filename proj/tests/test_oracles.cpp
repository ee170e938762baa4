// SPDX-License-Identifier: Apache-2.0
// Recomputes the frozen values in golden.hpp from the reference
// implementations, so a drift in either side shows up here.
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "golden.hpp"
#include "oracle.hpp"

TEST_CASE("frozen phase and effective lengths") {
  const oracle::Smooth w{1.0, 0.3, 1.0};
  const double phi = oracle::simpson([&](double t) { return 1.0 / w.L(t); }, 0.0, 1.0, 1000000);
  CHECK(phi == doctest::Approx(golden::kPhaseAtTau).epsilon(1e-14));
  const oracle::SimpsonPhase P{w};
  for (auto [t, l] : golden::kEffectiveLength) CHECK(oracle::effective_length(P, t) == doctest::Approx(l).epsilon(1e-13));
}

TEST_CASE("frozen ray and Moore values") {
  const oracle::Smooth w{1.0, 0.3, 1.0};
  const auto [ts, zp] = oracle::ray_to_wall(w, 0.2);
  CHECK(ts == doctest::Approx(golden::kRayBounce).epsilon(1e-13));
  CHECK(zp == doctest::Approx(golden::kRayZPlus).epsilon(1e-13));
  CHECK(oracle::moore_chain(w, 3.0, 0.7, 1.0) == doctest::Approx(golden::kMooreAt3).epsilon(1e-13));
  CHECK(oracle::moore_chain(w, 1.5, 0.7, 1.0) == doctest::Approx(golden::kMooreAt1p5).epsilon(1e-13));
}

TEST_CASE("frozen raw residual") {
  const oracle::Smooth w{1.0, 0.3, 0.6};
  const double te = 0.6, L1 = 0.7;
  const int n = 512;
  std::vector<double> d;
  for (int i = 0; i < n; ++i) {
    const double z = te + L1 + 2 * L1 * i / n;
    d.push_back(oracle::moore_chain(w, z, 0.7, 1.0) - z / L1);
  }
  double mean = 0.0;
  for (double x : d) mean += x;
  mean /= n;
  double sup = 0.0;
  for (double x : d) sup = std::max(sup, std::abs(x - mean));
  CHECK(sup == doctest::Approx(golden::kRawResidualFast).epsilon(1e-12));
}

TEST_CASE("frozen thermal factor") {
  for (const auto& [T, L, F] : golden::kThermalF)
    CHECK(static_cast<double>(oracle::thermal_F(T, L)) == doctest::Approx(F).epsilon(1e-15));
}
