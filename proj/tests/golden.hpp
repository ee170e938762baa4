// SPDX-License-Identifier: Apache-2.0
#pragma once

// Values computed once with the reference implementations in oracle.hpp and
// frozen here. test_oracles.cpp recomputes them.

#include <array>
#include <utility>

namespace golden {

// smoothstep(L0 = 1, eps = 0.3, tau = 1) unless noted.

// int_0^1 dt / L(t), composite Simpson with 10^6 panels.
inline constexpr double kPhaseAtTau = 1.1977799102597737;

// L_eff(t), bisection on the Simpson phase.
inline constexpr std::array<std::pair<double, double>, 5> kEffectiveLength{{
    {0.5, 0.83032591930481892},
    {-0.5, 0.98809028380081121},
    {0.0, 0.9185361255331832},
    {1.0, 0.74307624677499406},
    {1.5, 0.70066376558955867},
}};

// Ray leaving x = 0 at z_minus = 0.2: wall hit time and return coordinate.
inline constexpr double kRayBounce = 0.90239696516225987;
inline constexpr double kRayZPlus = 1.6047939303245198;

// Moore function by following characteristics back to the IN region.
inline constexpr double kMooreAt3 = 4.1944493139338723;
inline constexpr double kMooreAt1p5 = 2.053635511756736;

// smoothstep(1, 0.3, tau = 0.6): sup |d - mean d| over one OUT period
// (512 samples), d(z) = R(z) - z / L1.
inline constexpr double kRawResidualFast = 0.25616050686495839;

// sum_n n pi / (exp(n pi / (L T)) - 1), long double brute force.
inline constexpr std::array<std::array<double, 3>, 4> kThermalF{{
    {5.0, 1.0, 10.720869083857046548},
    {1.0, 1.0, 0.15445464580288429811},
    {3.5, 1.0, 4.7949846949787359005},
    {0.3, 2.0, 0.016987003349584448812},
}};

}  // namespace golden
