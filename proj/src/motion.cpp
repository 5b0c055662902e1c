#include "trajrl/motion.hpp"

#include <cmath>
#include <numbers>

namespace trajrl {

namespace {

constexpr double kStationaryStep = 1e-9;  // meters

// Maps an angle difference into (-pi, pi].
double wrap_to_pi(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

}  // namespace

MotionProfile derive_motion(const Trajectory& traj, const VehicleState& anchor) {
  if (traj.waypoints.empty()) {
    throw std::invalid_argument("derive_motion: trajectory is empty");
  }
  if (!(traj.dt > 0.0)) {
    throw std::invalid_argument("derive_motion: dt must be positive");
  }

  const std::size_t n = traj.waypoints.size();
  MotionProfile profile;
  profile.headings.reserve(n + 1);
  profile.speeds.reserve(n + 1);
  profile.accels.reserve(n);

  profile.headings.push_back(anchor.heading);
  profile.speeds.push_back(anchor.speed());

  Vec2 prev = anchor.position;
  for (std::size_t j = 1; j <= n; ++j) {
    const Vec2 step = traj.waypoints[j - 1] - prev;
    const double len = step.norm();

    double theta;
    if (len < kStationaryStep) {
      theta = profile.headings[j - 1];  // stationary rule
    } else {
      const double raw = std::atan2(step.y, step.x);
      theta = profile.headings[j - 1] + wrap_to_pi(raw - profile.headings[j - 1]);
    }
    profile.headings.push_back(theta);
    profile.speeds.push_back(len / traj.dt);
    profile.accels.push_back((profile.speeds[j] - profile.speeds[j - 1]) / traj.dt);

    prev = traj.waypoints[j - 1];
  }
  return profile;
}

Vec2 avg_acceleration(const History& history) {
  if (history.states.empty()) {
    throw std::invalid_argument("empty history");
  }
  Vec2 sum;
  for (const auto& s : history.states) {
    sum += s.acceleration;
  }
  return sum * (1.0 / static_cast<double>(history.states.size()));
}

Trajectory rollout_constant_accel(const History& history, std::size_t steps, double dt) {
  if (steps < 1) {
    throw std::invalid_argument("rollout_constant_accel: steps must be >= 1");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("rollout_constant_accel: dt must be positive");
  }
  const Vec2 a = avg_acceleration(history);
  const VehicleState& start = history.states.back();

  Trajectory traj;
  traj.dt = dt;
  traj.waypoints.reserve(steps);

  Vec2 p = start.position;
  Vec2 v = start.velocity;
  for (std::size_t k = 0; k < steps; ++k) {
    const Vec2 v_prev = v;
    v += a * dt;
    p += v_prev * dt + a * (0.5 * dt * dt);
    traj.waypoints.push_back(p);
  }
  return traj;
}

double lateral_offset(double speed, double steering) {
  if (!(std::abs(steering) < std::numbers::pi / 2.0)) {
    throw std::domain_error("steering out of range");
  }
  return speed * std::tan(steering);
}

}  // namespace trajrl
