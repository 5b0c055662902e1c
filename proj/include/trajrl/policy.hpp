#pragma once

#include <string>
#include <vector>

#include "trajrl/rng.hpp"
#include "trajrl/types.hpp"

namespace trajrl {

inline constexpr double kLogStdMin = -10.0;
inline constexpr double kLogStdMax = 2.0;
inline constexpr double kDefaultInitLogStd = -2.4;

/// Diagonal-Gaussian trajectory policy. The mean is the constant-acceleration
/// rollout of the scenario history plus a linear head on the last-state
/// features; each of the 2N waypoint coordinates gets an independent
/// learnable log standard deviation.
struct PolicyParams {
  std::size_t feature_dim = 0;
  std::size_t num_waypoints = 0;
  std::vector<double> weight;   // feature_dim x (2*num_waypoints), row-major
  std::vector<double> bias;     // 2*num_waypoints
  std::vector<double> log_std;  // 2*num_waypoints, clamped to [kLogStdMin, kLogStdMax]

  static PolicyParams init(std::size_t feature_dim, std::size_t num_waypoints,
                           double init_log_std = kDefaultInitLogStd);

  std::size_t out_dim() const { return 2 * num_waypoints; }
  void clamp_log_std();
};

/// Flattened last-state features (position, velocity, acceleration, heading),
/// scaled to comparable magnitudes.
std::vector<double> scenario_features(const Scenario& scenario);

/// Distribution mean: baseline rollout waypoints plus the linear head.
Trajectory policy_mean(const PolicyParams& params, const Scenario& scenario);

struct PolicySample {
  Trajectory trajectory;
  double log_prob = 0.0;  // exact Gaussian log-density of the draw
};

PolicySample policy_sample(const PolicyParams& params, const Scenario& scenario, Rng& rng);

/// Gaussian log-density of an arbitrary trajectory under the policy.
double policy_log_prob(const PolicyParams& params, const Scenario& scenario,
                       const Trajectory& traj);

void save_policy(const std::string& path, const PolicyParams& params);
PolicyParams load_policy(const std::string& path);

}  // namespace trajrl
