#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trajrl/policy.hpp"
#include "trajrl/reward.hpp"
#include "trajrl/types.hpp"

namespace trajrl {

struct GrpoConfig {
  std::size_t group_size = 6;        // G, responses sampled per input
  double beta = 0.01;                // KL coefficient (see README on this default)
  double learning_rate = 1e-3;
  std::size_t iterations = 0;
  double eps_std = 1e-8;             // degenerate-group threshold
  std::uint64_t seed = 0;
  double clip_range = 0.0;           // PPO-style ratio clip; 0 disables (the default)
  int serialize_decimals = 6;        // wire precision of sampled responses
  double init_log_std = kDefaultInitLogStd;
  RewardWeights weights;
  double penalty_cap = kDefaultPenaltyCap;
};

/// One sampled group: the serialized responses, the trajectories they parse
/// back to, their log-probabilities under the sampling policy, rewards and
/// standardized advantages. All vectors have length G.
struct GroupSample {
  std::vector<std::string> responses;
  std::vector<Trajectory> trajectories;
  std::vector<double> log_probs_old;
  std::vector<double> rewards;
  std::vector<double> advantages;
  std::vector<RewardBreakdown> breakdowns;
};

/// Group-standardized advantages A_i = (r_i - mean) / popstd. Groups whose
/// reward spread is below eps_std get all-zero advantages. G must be >= 2.
std::vector<double> advantages(std::span<const double> rewards, double eps_std);

/// Closed-form KL divergence between the two diagonal-Gaussian response
/// distributions conditioned on the scenario, summed over all coordinates.
double kl_divergence(const PolicyParams& policy, const PolicyParams& reference,
                     const Scenario& scenario);

/// KL-regularized surrogate objective on a stored group:
/// J = (1/G) * sum_i ratio_i * A_i - beta * KL(policy || reference), with
/// ratio_i = exp(logpi(o_i) - log_probs_old_i). clip_range > 0 applies the
/// PPO-style pessimistic clip to the ratio term.
double surrogate(const PolicyParams& policy, const PolicyParams& reference,
                 const GroupSample& group, const Scenario& scenario, double beta,
                 double clip_range = 0.0);

struct PolicyGrad {
  std::vector<double> weight;
  std::vector<double> bias;
  std::vector<double> log_std;

  double norm() const;
};

/// Exact analytic gradient of the surrogate w.r.t. the policy parameters.
PolicyGrad grad_surrogate(const PolicyParams& policy, const PolicyParams& reference,
                          const GroupSample& group, const Scenario& scenario, double beta,
                          double clip_range = 0.0);

struct StepDiagnostics {
  std::size_t iteration = 0;
  std::string scenario_id;
  double mean_reward = 0.0;
  double mean_r_pos = 0.0;
  double mean_r_ste = 0.0;
  double mean_r_vel = 0.0;
  double mean_r_tem = 0.0;
  double kl = 0.0;        // KL(updated policy || reference)
  double grad_norm = 0.0;
};

struct TrainStepResult {
  PolicyParams params;
  GroupSample group;
  StepDiagnostics diagnostics;
};

/// One GRPO update on a single scenario: sample G responses through the wire
/// format, score them, standardize, and take one ascent step on the
/// surrogate. Member i draws from the stream (config.seed, iteration, i), so
/// the result is a pure function of (params, scenario, config, iteration).
TrainStepResult train_step(const PolicyParams& params, const PolicyParams& reference,
                           const Scenario& scenario, const GrpoConfig& config,
                           std::size_t iteration);

struct TrainResult {
  PolicyParams params;
  std::vector<StepDiagnostics> history;
};

/// Round-robin training over the scenario list with the reference policy
/// frozen at initialization.
TrainResult train_loop(const std::vector<Scenario>& scenarios, const GrpoConfig& config);

}  // namespace trajrl
