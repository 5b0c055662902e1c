#pragma once

#include <optional>
#include <vector>

#include "trajrl/types.hpp"

namespace trajrl {

/// Minimum achievable turning radius, L / sin(delta_max).
double min_turn_radius(const VehicleSpec& spec);

/// Circumscribed-circle radius at each interior point of the polyline
/// (anchor position followed by the waypoints). nullopt marks a locally
/// straight (or degenerate) triple, where the radius is unbounded. Entry i
/// describes the triple centered on waypoint i.
std::vector<std::optional<double>> path_radii(const Trajectory& traj,
                                              const VehicleState& anchor);

struct LateralAccelResult {
  double max_accel = 0.0;  // m/s^2, worst v^2/R over interior points
  double bound = 0.0;      // mu * g
  bool ok = true;
  std::optional<std::size_t> worst_index;  // interior-point index attaining max
};

/// Cornering check a_c = v^2/R <= mu*g, with v from derive_motion speeds
/// and R from path_radii. Straight triples contribute zero.
LateralAccelResult lateral_accel_check(const Trajectory& traj, const VehicleState& anchor,
                                       const VehicleSpec& spec);

/// Along-path jerk by second differences of the derive_motion speeds:
/// a_k = (v_{k+1}-v_k)/dt, j_k = (a_{k+1}-a_k)/dt. The anchor speed is
/// shifted back half a step along its own acceleration so it sits on the
/// chord midpoint lattice; a constant-acceleration path then reports zero
/// jerk exactly. Needs at least three points including the anchor.
std::vector<double> jerk_profile(const Trajectory& traj, const VehicleState& anchor);

struct FeasibilityReport {
  bool min_radius_ok = true;
  std::optional<double> worst_radius;              // tightest finite radius seen
  std::optional<std::size_t> worst_radius_index;
  double min_radius_bound = 0.0;

  bool lateral_accel_ok = true;
  double max_lateral_accel = 0.0;
  double lateral_accel_bound = 0.0;
  std::optional<std::size_t> lateral_worst_index;

  bool jerk_ok = true;
  double max_abs_jerk = 0.0;
  double jerk_bound = 0.0;
  std::optional<std::size_t> jerk_worst_index;

  bool overall = true;  // conjunction of the three checks
};

/// Composite feasibility: turning-radius, lateral-acceleration and jerk
/// checks against the spec. Diagnostic only; not part of any reward.
FeasibilityReport check_feasible(const Trajectory& traj, const VehicleState& anchor,
                                 const VehicleSpec& spec);

}  // namespace trajrl
