#include "trajrl/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "trajrl/rng.hpp"

namespace trajrl {

namespace {

constexpr double kDt = 0.5;
constexpr std::size_t kHistoryLen = 4;
constexpr std::size_t kFutureSteps = 6;

// Straight-line maneuver with constant along-x acceleration.
VehicleState longitudinal_state(double t, double v0, double a) {
  VehicleState s;
  s.t = t;
  s.position = {v0 * t + 0.5 * a * t * t, 0.0};
  s.velocity = {v0 + a * t, 0.0};
  s.acceleration = {a, 0.0};
  return s;
}

// Constant-rate turn at speed v0 with signed yaw rate omega, passing the
// origin with heading 0 at t = 0.
VehicleState turn_state(double t, double v0, double omega, double steering) {
  VehicleState s;
  s.t = t;
  const double c = std::cos(omega * t);
  const double sn = std::sin(omega * t);
  s.position = {(v0 / omega) * sn, (v0 / omega) * (1.0 - c)};
  s.velocity = {v0 * c, v0 * sn};
  s.acceleration = {-v0 * omega * sn, v0 * omega * c};
  s.heading = omega * t;
  s.steering = steering;
  return s;
}

}  // namespace

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::straight: return "straight";
    case ScenarioKind::constant_turn: return "constant_turn";
    case ScenarioKind::accel: return "accel";
    case ScenarioKind::brake: return "brake";
  }
  return "unknown";
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  if (name == "straight") return ScenarioKind::straight;
  if (name == "constant_turn") return ScenarioKind::constant_turn;
  if (name == "accel") return ScenarioKind::accel;
  if (name == "brake") return ScenarioKind::brake;
  throw std::invalid_argument("unknown scenario kind: " + name);
}

Scenario synth_scenario(std::uint64_t seed, ScenarioKind kind, const VehicleSpec& spec) {
  spec.validate();
  Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(kind) + 1);

  Scenario scenario;
  scenario.id = std::string(to_string(kind)) + "-" + std::to_string(seed);
  scenario.spec = spec;

  double v0 = 0.0;
  double a = 0.0;
  double omega = 0.0;
  double steering = 0.0;

  switch (kind) {
    case ScenarioKind::straight: {
      v0 = rng.uniform(3.0, 15.0);
      break;
    }
    case ScenarioKind::constant_turn: {
      v0 = rng.uniform(4.0, 12.0);
      const double dir = rng.uniform() < 0.5 ? -1.0 : 1.0;
      const double yaw_rate = rng.uniform(0.10, 0.14);
      // Radius floor keeps the turn inside both the steering-geometry bound
      // and a 0.6*mu*g lateral-acceleration margin.
      const double r_min = spec.wheelbase_l / std::sin(spec.delta_max);
      const double r_comfort = v0 * v0 / (0.6 * spec.mu * spec.g);
      const double radius = std::max({v0 / yaw_rate, 1.2 * r_min, 1.2 * r_comfort});
      omega = dir * v0 / radius;
      steering = dir * std::atan(spec.wheelbase_l / radius);
      break;
    }
    case ScenarioKind::accel: {
      a = rng.uniform(0.3, 1.2);
      v0 = rng.uniform(1.0 + 1.5 * a, 12.0);
      break;
    }
    case ScenarioKind::brake: {
      a = -rng.uniform(0.3, 1.0);
      // Speed must stay positive through t = +3 s.
      v0 = rng.uniform(0.8 - 3.0 * a, 14.0);
      break;
    }
  }

  const auto state_at = [&](double t) {
    return kind == ScenarioKind::constant_turn ? turn_state(t, v0, omega, steering)
                                               : longitudinal_state(t, v0, a);
  };

  scenario.history.states.reserve(kHistoryLen);
  for (std::size_t i = 0; i < kHistoryLen; ++i) {
    const double t = (static_cast<double>(i) - static_cast<double>(kHistoryLen - 1)) * kDt;
    scenario.history.states.push_back(state_at(t));
  }

  scenario.ground_truth.dt = kDt;
  scenario.ground_truth.waypoints.reserve(kFutureSteps);
  for (std::size_t k = 1; k <= kFutureSteps; ++k) {
    scenario.ground_truth.waypoints.push_back(state_at(static_cast<double>(k) * kDt).position);
  }
  return scenario;
}

}  // namespace trajrl
