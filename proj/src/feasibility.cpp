#include "trajrl/feasibility.hpp"

#include <cmath>
#include <stdexcept>

#include "trajrl/motion.hpp"

namespace trajrl {

namespace {

constexpr double kCollinearTol = 1e-9;  // m^2, twice the triangle area

std::vector<Vec2> with_anchor(const Trajectory& traj, const VehicleState& anchor) {
  std::vector<Vec2> points;
  points.reserve(traj.waypoints.size() + 1);
  points.push_back(anchor.position);
  points.insert(points.end(), traj.waypoints.begin(), traj.waypoints.end());
  return points;
}

// Circumradius of a point triple; nullopt for collinear or degenerate triples.
std::optional<double> circumradius(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  const double cross = ab.cross(ac);
  if (std::abs(cross) < kCollinearTol) return std::nullopt;
  const double la = (b - c).norm();
  const double lb = ac.norm();
  const double lc = ab.norm();
  return la * lb * lc / (2.0 * std::abs(cross));
}

}  // namespace

double min_turn_radius(const VehicleSpec& spec) {
  if (!(spec.delta_max > 0.0 && spec.delta_max < M_PI / 2.0)) {
    throw std::domain_error("min_turn_radius: delta_max must be in (0, pi/2)");
  }
  return spec.wheelbase_l / std::sin(spec.delta_max);
}

std::vector<std::optional<double>> path_radii(const Trajectory& traj,
                                              const VehicleState& anchor) {
  const std::vector<Vec2> points = with_anchor(traj, anchor);
  if (points.size() < 3) {
    throw std::invalid_argument("path_radii: need at least 3 points including the anchor");
  }
  std::vector<std::optional<double>> radii;
  radii.reserve(points.size() - 2);
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    radii.push_back(circumradius(points[i - 1], points[i], points[i + 1]));
  }
  return radii;
}

LateralAccelResult lateral_accel_check(const Trajectory& traj, const VehicleState& anchor,
                                       const VehicleSpec& spec) {
  const auto radii = path_radii(traj, anchor);
  const MotionProfile profile = derive_motion(traj, anchor);

  LateralAccelResult result;
  result.bound = spec.mu * spec.g;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!radii[i]) continue;  // straight, a_c = 0
    const double v = profile.speeds[i + 1];  // speed arriving at interior point i
    const double a_c = v * v / *radii[i];
    if (a_c > result.max_accel) {
      result.max_accel = a_c;
      result.worst_index = i;
    }
  }
  result.ok = result.max_accel <= result.bound;
  return result;
}

std::vector<double> jerk_profile(const Trajectory& traj, const VehicleState& anchor) {
  if (traj.waypoints.size() < 2) {
    throw std::invalid_argument("jerk_profile: need at least 3 points including the anchor");
  }
  const MotionProfile profile = derive_motion(traj, anchor);
  const double dt = traj.dt;

  // Chord speeds sample the motion at interval midpoints; the anchor entry
  // has to sit on the same lattice or a constant-acceleration path would show
  // a spurious first-step jerk. Back the anchor speed up by half a step along
  // its own acceleration.
  std::vector<double> speeds = profile.speeds;
  const double v0 = anchor.speed();
  if (v0 > 0.0) {
    const double along = (anchor.acceleration.x * anchor.velocity.x +
                          anchor.acceleration.y * anchor.velocity.y) / v0;
    speeds[0] = std::max(0.0, v0 - 0.5 * dt * along);
  }

  std::vector<double> accels;
  accels.reserve(speeds.size() - 1);
  for (std::size_t k = 0; k + 1 < speeds.size(); ++k) {
    accels.push_back((speeds[k + 1] - speeds[k]) / dt);
  }
  std::vector<double> jerks;
  jerks.reserve(accels.size() - 1);
  for (std::size_t k = 0; k + 1 < accels.size(); ++k) {
    jerks.push_back((accels[k + 1] - accels[k]) / dt);
  }
  return jerks;
}

FeasibilityReport check_feasible(const Trajectory& traj, const VehicleState& anchor,
                                 const VehicleSpec& spec) {
  if (traj.waypoints.size() < 3) {
    throw std::invalid_argument("check_feasible: need at least 3 waypoints");
  }
  FeasibilityReport report;

  report.min_radius_bound = min_turn_radius(spec);
  const auto radii = path_radii(traj, anchor);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!radii[i]) continue;
    if (!report.worst_radius || *radii[i] < *report.worst_radius) {
      report.worst_radius = *radii[i];
      report.worst_radius_index = i;
    }
  }
  report.min_radius_ok = !report.worst_radius || *report.worst_radius >= report.min_radius_bound;

  const LateralAccelResult lat = lateral_accel_check(traj, anchor, spec);
  report.lateral_accel_ok = lat.ok;
  report.max_lateral_accel = lat.max_accel;
  report.lateral_accel_bound = lat.bound;
  report.lateral_worst_index = lat.worst_index;

  report.jerk_bound = spec.jerk_limit;
  const auto jerks = jerk_profile(traj, anchor);
  for (std::size_t k = 0; k < jerks.size(); ++k) {
    if (std::abs(jerks[k]) > report.max_abs_jerk) {
      report.max_abs_jerk = std::abs(jerks[k]);
      report.jerk_worst_index = k;
    }
  }
  report.jerk_ok = report.max_abs_jerk <= report.jerk_bound;

  report.overall = report.min_radius_ok && report.lateral_accel_ok && report.jerk_ok;
  return report;
}

}  // namespace trajrl
