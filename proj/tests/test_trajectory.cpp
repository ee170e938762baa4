// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include "doctest.h"
#include "dcesta/errors.hpp"
#include "dcesta/trajectory.hpp"
#include "oracle.hpp"

using namespace dcesta;

TEST_CASE("quintic smoothstep values") {
  const auto w = Trajectory::smoothstep(1.0, 0.3, 1.0);
  CHECK(w.eval(0.5) == doctest::Approx(0.85).epsilon(1e-15));
  CHECK(w.eval(-3.0) == 1.0);
  CHECK(w.eval(0.0) == 1.0);
  CHECK(w.eval(1.0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(w.eval(4.0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(Quintic::value(0.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("smoothstep derivatives agree with the oracle and finite differences") {
  const auto w = Trajectory::smoothstep(1.0, 0.3, 1.0);
  const auto d = w.eval_derivs(0.5);
  CHECK(d.dL == doctest::Approx(-0.5625).epsilon(1e-14));
  const double h = 1e-6;
  CHECK(std::abs((w.eval(0.5 + h) - w.eval(0.5 - h)) / (2 * h) - d.dL) < 1e-8);

  const oracle::Smooth o{1.0, 0.3, 1.0};
  for (double t : {0.05, 0.2, 0.37, 0.5, 0.81, 0.99}) {
    const auto e = w.eval_derivs(t);
    CHECK(e.L == doctest::Approx(o.L(t)).epsilon(1e-14));
    CHECK(e.dL == doctest::Approx(o.dL(t)).epsilon(1e-12));
    CHECK(e.d2L == doctest::Approx(o.d2L(t)).epsilon(1e-12));
    CHECK(e.d3L == doctest::Approx(o.d3L(t)).epsilon(1e-12));
  }
}

TEST_CASE("smoothstep_between and shifted start") {
  const auto w = Trajectory::smoothstep_between(0.7, 1.0, 2.0, 3.0);
  CHECK(w.t_start() == 3.0);
  CHECK(w.t_end() == 5.0);
  CHECK(w.initial_length() == 0.7);
  CHECK(w.final_length() == doctest::Approx(1.0));
  CHECK(w.eval(4.0) == doctest::Approx(0.85));
  CHECK(w.eval_derivs(4.0).dL > 0.0);
}

TEST_CASE("validation of smoothstep walls") {
  const auto ok = validate(Trajectory::smoothstep(1.0, 0.3, 1.0));
  CHECK(ok.physical);
  CHECK(ok.max_speed == doctest::Approx(0.5625).epsilon(1e-9));
  CHECK(ok.min_length == doctest::Approx(0.7));
  CHECK(ok.continuity == 2);

  const auto bad = validate(Trajectory::smoothstep(1.0, 0.3, 0.1));
  CHECK_FALSE(bad.physical);
  CHECK(bad.max_speed == doctest::Approx(5.625).epsilon(1e-9));
}

TEST_CASE("step trajectory") {
  const auto s = Trajectory::step(1.0, 0.7);
  CHECK(s.eval(-0.1) == 1.0);
  CHECK(s.eval(0.1) == 0.7);
  CHECK(s.continuity_at(0.0) == kJump);
  CHECK_THROWS_AS(s.eval_derivs(0.0), DiscontinuityError);
  CHECK(s.eval_derivs(0.5).dL == 0.0);
  CHECK_FALSE(validate(s).physical);
}

TEST_CASE("static, linear, sampled and composite shapes") {
  const auto c = Trajectory::constant(2.0);
  CHECK(c.eval(123.0) == 2.0);
  CHECK(validate(c).physical);

  const auto lin = Trajectory::linear_segment(1.0, 0.5, 0.0, 2.0);
  CHECK(lin.eval(1.0) == doctest::Approx(0.75));
  CHECK(lin.eval_derivs(1.0).dL == doctest::Approx(-0.25));
  CHECK(lin.continuity_at(0.0) == 0);

  const auto smp = Trajectory::sampled({0.0, 1.0, 2.0, 3.0}, {1.0, 0.9, 0.8, 0.8});
  CHECK(smp.eval(1.0) == doctest::Approx(0.9));
  CHECK(smp.eval(-1.0) == 1.0);
  CHECK(smp.eval(5.0) == doctest::Approx(0.8));

  const auto comp = Trajectory::composite(
      {Trajectory::smoothstep_between(1.0, 0.7, 1.0, 0.0), Trajectory::smoothstep_between(0.7, 1.0, 1.0, 2.0)});
  CHECK(comp.eval(0.5) == doctest::Approx(0.85));
  CHECK(comp.eval(1.5) == doctest::Approx(0.7));
  CHECK(comp.eval(2.5) == doctest::Approx(0.85));
  CHECK(comp.final_length() == doctest::Approx(1.0));
}

TEST_CASE("invalid shapes raise domain errors") {
  CHECK_THROWS_AS(Trajectory::constant(0.0), DomainError);
  CHECK_THROWS_AS(Trajectory::smoothstep(1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Trajectory::smoothstep(1.0, 0.3, 0.0), DomainError);
  CHECK_THROWS_AS(Trajectory::linear_segment(1.0, 0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Trajectory::sampled({0.0, 0.0}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(Trajectory::composite({Trajectory::smoothstep_between(1.0, 0.7, 1.0),
                                         Trajectory::smoothstep_between(0.8, 1.0, 1.0, 2.0)}),
                  DomainError);
}

TEST_CASE("JSON round trip") {
  const auto w = trajectory_from_json(R"({"kind":"smoothstep","L0":1,"eps":0.3,"tau":1})");
  CHECK(w.kind() == TrajectoryKind::smoothstep);
  const auto again = trajectory_from_json(trajectory_to_json(w));
  for (double t : {-1.0, 0.25, 0.5, 0.9, 3.0}) CHECK(again.eval(t) == w.eval(t));

  const auto eff = trajectory_from_json(R"({"kind":"effective","reference":{"kind":"step","L0":1,"L1":0.7}})");
  CHECK(eff.kind() == TrajectoryKind::effective);
  CHECK(eff.eval(0.0) == doctest::Approx(1.4 / 1.7).epsilon(1e-12));

  CHECK_THROWS_AS(trajectory_from_json("{"), ConfigError);
  CHECK_THROWS_AS(trajectory_from_json(R"({"kind":"smoothstep","L0":1})"), ConfigError);
  CHECK_THROWS_AS(trajectory_from_json(R"({"kind":"static","L0":-1})"), ConfigError);
}
