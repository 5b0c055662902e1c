#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trajrl/eval.hpp"
#include "trajrl/grpo.hpp"
#include "trajrl/types.hpp"

namespace trajrl {

/// Shifts every ground-truth waypoint leftward by rate * t, leaving the
/// history untouched. Gives the corpus a systematic target offset the
/// physics baseline cannot see, which training has to discover.
Scenario with_lateral_drift(Scenario scenario, double drift_rate);

/// Adds an alternating lateral offset (+a, -a, +a, ...) to the ground-truth
/// waypoints. The target stays position-reachable but is temporally rough:
/// tracking it exactly costs heading smoothness, so smoothness-aware and
/// smoothness-blind training land on different optima.
Scenario with_lateral_zigzag(Scenario scenario, double amplitude);

/// The reward-component toggle sets: full weights plus one set per zeroed
/// component.
std::vector<std::pair<std::string, RewardWeights>> component_toggles();

struct AblationRow {
  std::string label;
  RewardWeights weights;
  EvalRow eval;                // corpus L2 of the trained policy mean
  double r_tem_mean = 0;       // smoothness of the same mean outputs l2 scores
  double r_tem_sampled = 0;    // smoothness of sampled outputs, fixed eval streams
  double mean_reward = 0;      // final-phase mean group reward
};

struct AblationResult {
  std::vector<AblationRow> rows;
};

/// Trains one policy per toggle set with identical seeds and scenarios, then
/// evaluates each side by side.
AblationResult run_ablation(const std::vector<Scenario>& scenarios, const GrpoConfig& config,
                            const std::vector<std::pair<std::string, RewardWeights>>& toggles);

struct SweepRow {
  std::size_t group_size = 0;
  std::vector<double> l2_by_seed;
  double median_l2 = 0.0;
};

/// Group-size sweep: trains with each G for every seed and reports the
/// per-G median corpus l2_avg.
std::vector<SweepRow> sweep_group_size(const std::vector<Scenario>& scenarios,
                                       const GrpoConfig& config,
                                       std::span<const std::size_t> sizes,
                                       std::span<const std::uint64_t> seeds);

/// Mean temporal-smoothness error of one sampled response per scenario,
/// drawn from per-scenario streams tied to eval_seed (paired across runs).
double mean_sampled_r_tem(const PolicyParams& params, const std::vector<Scenario>& scenarios,
                          std::uint64_t eval_seed);

}  // namespace trajrl
