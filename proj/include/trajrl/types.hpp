#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "trajrl/vec2.hpp"

namespace trajrl {

/// Thrown when an input file or record violates the documented schema.
/// Carries the offending line (1-based, 0 when not line-scoped) and field.
class DataError : public std::runtime_error {
 public:
  DataError(std::string message, std::size_t line = 0, std::string field = "")
      : std::runtime_error(std::move(message)), line_(line), field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// One observed state of the ego vehicle.
struct VehicleState {
  double t = 0.0;           // seconds, 0 at the frame anchor
  Vec2 position;            // meters
  Vec2 velocity;            // m/s
  Vec2 acceleration;        // m/s^2
  double heading = 0.0;     // radians
  double steering = 0.0;    // radians, front-wheel angle

  double speed() const { return velocity.norm(); }
};

/// Ordered past states at uniform spacing. The last state anchors the
/// ego frame: its pose defines t = 0.
struct History {
  std::vector<VehicleState> states;

  const VehicleState& last() const { return states.back(); }
  std::size_t size() const { return states.size(); }

  /// Time spacing between consecutive states.
  double spacing() const {
    if (states.size() < 2) {
      throw std::invalid_argument("history needs at least 2 states to define a spacing");
    }
    return states[1].t - states[0].t;
  }

  /// Checks length, strict ordering and uniform spacing (within 1e-9 s).
  void validate() const;
};

/// Planned future positions at fixed dt, excluding the t = 0 anchor.
struct Trajectory {
  std::vector<Vec2> waypoints;
  double dt = 0.5;  // seconds

  std::size_t size() const { return waypoints.size(); }
  bool finite() const {
    for (const auto& w : waypoints) {
      if (!w.finite()) return false;
    }
    return true;
  }
};

/// Finite-difference motion quantities of a trajectory.
/// headings[0] and speeds[0] come from the anchor state; entry j >= 1
/// describes the chord into waypoint j. accels[k] = (speeds[k+1]-speeds[k])/dt.
struct MotionProfile {
  std::vector<double> headings;  // radians, unwrapped, size N+1
  std::vector<double> speeds;    // m/s, size N+1
  std::vector<double> accels;    // m/s^2 along path, size N

  std::size_t steps() const { return headings.empty() ? 0 : headings.size() - 1; }
};

/// Static vehicle parameters for feasibility checks.
struct VehicleSpec {
  double wheelbase_l = 2.7;   // meters
  double delta_max = 0.6;     // radians, max front-wheel steering angle
  double mu = 0.8;            // tire-road friction coefficient
  double g = 9.81;            // m/s^2
  double jerk_limit = 2.5;    // m/s^3, comfort bound

  void validate() const;
};

/// One training/evaluation unit: observed history, the future to match,
/// and the vehicle the plan must be feasible for.
struct Scenario {
  std::string id;
  History history;
  Trajectory ground_truth;
  VehicleSpec spec;
};

}  // namespace trajrl
