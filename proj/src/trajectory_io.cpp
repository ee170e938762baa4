// SPDX-License-Identifier: Apache-2.0
#include <string>
#include <vector>

#include "json.hpp"

#include "dcesta/errors.hpp"
#include "dcesta/sta.hpp"
#include "dcesta/trajectory.hpp"

namespace dcesta {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("trajectory: missing field \"") + key + "\"");
  if (!j.at(key).is_number()) throw ConfigError(std::string("trajectory: field \"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::vector<double> numbers(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ConfigError(std::string("trajectory: field \"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ConfigError(std::string("trajectory: \"") + key + "\" holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

Trajectory parse(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError("trajectory: expected an object with a string \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "static") return Trajectory::constant(number(j, "L0"));
    if (kind == "smoothstep") {
      const double L0 = number(j, "L0");
      const double tau = number(j, "tau");
      const double t0 = number_or(j, "t0", 0.0);
      if (j.contains("L1")) return Trajectory::smoothstep_between(L0, number(j, "L1"), tau, t0);
      return Trajectory::smoothstep(L0, number(j, "eps"), tau, t0);
    }
    if (kind == "step") return Trajectory::step(number(j, "L0"), number(j, "L1"), number_or(j, "t0", 0.0));
    if (kind == "linear")
      return Trajectory::linear_segment(number(j, "L0"), number(j, "L1"), number(j, "t_start"), number(j, "t_end"));
    if (kind == "samples" || kind == "sampled") return Trajectory::sampled(numbers(j, "t"), numbers(j, "L"));
    if (kind == "composite") {
      if (!j.contains("pieces") || !j.at("pieces").is_array())
        throw ConfigError("trajectory: composite needs a \"pieces\" array");
      std::vector<Trajectory> pieces;
      for (const auto& p : j.at("pieces")) pieces.push_back(parse(p));
      return Trajectory::composite(std::move(pieces));
    }
    if (kind == "effective") {
      if (!j.contains("reference")) throw ConfigError("trajectory: effective needs a \"reference\"");
      return effective_trajectory(parse(j.at("reference")));
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("trajectory: ") + e.what());
  }
  throw ConfigError("trajectory: unknown kind \"" + kind + "\"");
}

}  // namespace

Trajectory trajectory_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trajectory: invalid JSON: ") + e.what());
  }
  return parse(j);
}

std::string trajectory_to_json(const Trajectory& traj) { return traj.describe(); }

}  // namespace dcesta
