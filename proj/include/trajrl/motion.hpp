#pragma once

#include "trajrl/types.hpp"

namespace trajrl {

/// Derives per-step headings, speeds and along-path accelerations from a
/// trajectory by finite differences. The anchor supplies heading/speed at
/// index 0. Headings are unwrapped so |theta_j - theta_{j-1}| <= pi; a
/// step shorter than 1e-9 m inherits the previous heading (stationary rule).
MotionProfile derive_motion(const Trajectory& traj, const VehicleState& anchor);

/// Component-wise mean of the recorded accelerations.
Vec2 avg_acceleration(const History& history);

/// Constant-acceleration rollout from the last history state: per step,
/// v <- v + a_avg*dt and p <- p + v_prev*dt + 0.5*a_avg*dt^2, which
/// telescopes to p(t) = p0 + v0*t + 0.5*a_avg*t^2.
Trajectory rollout_constant_accel(const History& history, std::size_t steps, double dt);

/// Lateral offset delta_y = v * tan(theta). |theta| must be < pi/2.
double lateral_offset(double speed, double steering);

}  // namespace trajrl
