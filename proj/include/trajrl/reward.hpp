#pragma once

#include <string_view>

#include "trajrl/types.hpp"

namespace trajrl {

/// Mixing coefficients for the accuracy-reward components. All experiments
/// in the source material fix them to 1; ablations zero individual entries.
struct RewardWeights {
  double pos = 1.0;
  double ste = 1.0;
  double vel = 1.0;
  double tem = 1.0;
};

/// Accuracy error charged when the response is unparseable or its waypoint
/// count differs from the ground truth. Finite so group statistics stay
/// finite, large enough to dominate any plausible on-road error.
inline constexpr double kDefaultPenaltyCap = 100.0;

struct RewardBreakdown {
  double r_pos = 0.0;  // m^2
  double r_ste = 0.0;  // rad^2
  double r_vel = 0.0;  // (m/s)^2
  double r_tem = 0.0;  // rad^2 + (m/s)^2, mixed units as defined
  double r_acc = 0.0;  // weighted sum of the four
  int r_format = 0;    // 0 or 1
  double total = 0.0;  // r_format - r_acc, the scalar fed to the optimizer
  bool parsed = false;
  bool length_ok = false;
};

/// Mean squared Euclidean distance between same-index waypoints.
double reward_pos(const Trajectory& pred, const Trajectory& gt);

/// Mean squared heading deviation over steps 1..N.
double reward_ste(const MotionProfile& pred, const MotionProfile& gt);

/// Mean squared speed deviation over steps 1..N.
double reward_vel(const MotionProfile& pred, const MotionProfile& gt);

/// Temporal smoothness of one profile: mean squared step-to-step change of
/// heading plus mean squared step-to-step change of speed, anchored at
/// index 0.
double reward_tem(const MotionProfile& pred);

/// Weighted accuracy error. Motion profiles for both trajectories are
/// derived internally against the same anchor. Fills every component field
/// plus r_acc; format/total are left for total_reward.
RewardBreakdown accuracy_reward(const Trajectory& pred, const Trajectory& gt,
                                const VehicleState& anchor, const RewardWeights& weights);

/// Full response score: parses the text, applies the format reward, the
/// accuracy reward and the length rule, and composes
/// total = r_format - accuracy error. Total function; malformed input or a
/// waypoint-count mismatch is charged penalty_cap instead of raising.
RewardBreakdown total_reward(std::string_view response_text, const Scenario& scenario,
                             const RewardWeights& weights,
                             double penalty_cap = kDefaultPenaltyCap);

}  // namespace trajrl
