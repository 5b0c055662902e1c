#include "trajrl/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trajrl/response.hpp"

namespace trajrl {

namespace {

constexpr const char* kToyThink = "toy policy rollout";

double population_std(std::span<const double> values, double mean) {
  double sum = 0.0;
  for (double v : values) {
    const double d = v - mean;
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(values.size()));
}

std::vector<double> flatten(const Trajectory& traj) {
  std::vector<double> coords;
  coords.reserve(2 * traj.waypoints.size());
  for (const auto& w : traj.waypoints) {
    coords.push_back(w.x);
    coords.push_back(w.y);
  }
  return coords;
}

// Mean coordinates of the policy distribution for a scenario.
std::vector<double> policy_mean_coords(const PolicyParams& params, const Scenario& scenario) {
  return flatten(policy_mean(params, scenario));
}

void check_shapes(const PolicyParams& a, const PolicyParams& b, const char* what) {
  if (a.feature_dim != b.feature_dim || a.num_waypoints != b.num_waypoints) {
    throw std::invalid_argument(std::string(what) + ": policy shape mismatch");
  }
}

}  // namespace

std::vector<double> advantages(std::span<const double> rewards, double eps_std) {
  const std::size_t g = rewards.size();
  if (g < 2) {
    throw std::invalid_argument("advantages: group size must be >= 2");
  }
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= static_cast<double>(g);

  const double std = population_std(rewards, mean);
  std::vector<double> result(g, 0.0);
  if (std < eps_std) {
    return result;  // degenerate group
  }
  for (std::size_t i = 0; i < g; ++i) {
    result[i] = (rewards[i] - mean) / std;
  }
  return result;
}

double kl_divergence(const PolicyParams& policy, const PolicyParams& reference,
                     const Scenario& scenario) {
  check_shapes(policy, reference, "kl_divergence");
  const std::vector<double> mu_p = policy_mean_coords(policy, scenario);
  const std::vector<double> mu_r = policy_mean_coords(reference, scenario);

  double kl = 0.0;
  for (std::size_t c = 0; c < policy.out_dim(); ++c) {
    const double sp = std::exp(policy.log_std[c]);
    const double sr = std::exp(reference.log_std[c]);
    const double dmu = mu_p[c] - mu_r[c];
    kl += reference.log_std[c] - policy.log_std[c] +
          (sp * sp + dmu * dmu) / (2.0 * sr * sr) - 0.5;
  }
  return kl;
}

double surrogate(const PolicyParams& policy, const PolicyParams& reference,
                 const GroupSample& group, const Scenario& scenario, double beta,
                 double clip_range) {
  const std::size_t g = group.trajectories.size();
  if (g == 0 || group.advantages.size() != g || group.log_probs_old.size() != g) {
    throw std::invalid_argument("surrogate: inconsistent group");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    const double ratio =
        std::exp(policy_log_prob(policy, scenario, group.trajectories[i]) -
                 group.log_probs_old[i]);
    double term = ratio * group.advantages[i];
    if (clip_range > 0.0) {
      const double clipped =
          std::clamp(ratio, 1.0 - clip_range, 1.0 + clip_range) * group.advantages[i];
      term = std::min(term, clipped);
    }
    sum += term;
  }
  return sum / static_cast<double>(g) - beta * kl_divergence(policy, reference, scenario);
}

double PolicyGrad::norm() const {
  double sum = 0.0;
  for (double v : weight) sum += v * v;
  for (double v : bias) sum += v * v;
  for (double v : log_std) sum += v * v;
  return std::sqrt(sum);
}

PolicyGrad grad_surrogate(const PolicyParams& policy, const PolicyParams& reference,
                          const GroupSample& group, const Scenario& scenario, double beta,
                          double clip_range) {
  const std::size_t g = group.trajectories.size();
  if (g == 0 || group.advantages.size() != g || group.log_probs_old.size() != g) {
    throw std::invalid_argument("grad_surrogate: inconsistent group");
  }
  check_shapes(policy, reference, "grad_surrogate");

  const std::size_t out = policy.out_dim();
  const std::vector<double> f = scenario_features(scenario);
  const std::vector<double> mu = policy_mean_coords(policy, scenario);
  const std::vector<double> mu_r = policy_mean_coords(reference, scenario);

  PolicyGrad grad;
  grad.weight.assign(policy.weight.size(), 0.0);
  grad.bias.assign(out, 0.0);
  grad.log_std.assign(out, 0.0);

  // Policy-gradient term: d/dtheta (1/G) sum_i ratio_i * A_i, where the
  // ratio differentiates through logpi_theta(o_i).
  const double inv_g = 1.0 / static_cast<double>(g);
  for (std::size_t i = 0; i < g; ++i) {
    const double log_prob = policy_log_prob(policy, scenario, group.trajectories[i]);
    const double ratio = std::exp(log_prob - group.log_probs_old[i]);
    const double a = group.advantages[i];

    double scale = ratio * a;
    if (clip_range > 0.0) {
      const double clipped = std::clamp(ratio, 1.0 - clip_range, 1.0 + clip_range) * a;
      if (ratio * a > clipped) {
        // Pessimistic branch selected; it is flat in theta where the clip binds.
        const bool inside = ratio > 1.0 - clip_range && ratio < 1.0 + clip_range;
        scale = inside ? clipped : 0.0;
      }
    }
    if (scale == 0.0) continue;

    const std::vector<double> coords = flatten(group.trajectories[i]);
    for (std::size_t c = 0; c < out; ++c) {
      const double sigma = std::exp(policy.log_std[c]);
      const double z = (coords[c] - mu[c]) / sigma;
      const double dmu = inv_g * scale * z / sigma;      // dlogpi/dmu_c
      grad.bias[c] += dmu;
      for (std::size_t k = 0; k < policy.feature_dim; ++k) {
        grad.weight[k * out + c] += dmu * f[k];
      }
      grad.log_std[c] += inv_g * scale * (z * z - 1.0);  // dlogpi/dlogstd_c
    }
  }

  // KL term: d/dtheta -beta * KL(policy || reference).
  for (std::size_t c = 0; c < out; ++c) {
    const double sp = std::exp(policy.log_std[c]);
    const double sr = std::exp(reference.log_std[c]);
    const double dmu_kl = (mu[c] - mu_r[c]) / (sr * sr);
    grad.bias[c] -= beta * dmu_kl;
    for (std::size_t k = 0; k < policy.feature_dim; ++k) {
      grad.weight[k * out + c] -= beta * dmu_kl * f[k];
    }
    grad.log_std[c] -= beta * (-1.0 + sp * sp / (sr * sr));
  }
  return grad;
}

TrainStepResult train_step(const PolicyParams& params, const PolicyParams& reference,
                           const Scenario& scenario, const GrpoConfig& config,
                           std::size_t iteration) {
  if (config.group_size < 2) {
    throw std::invalid_argument("train_step: group_size must be >= 2");
  }

  GroupSample group;
  group.responses.reserve(config.group_size);
  for (std::size_t i = 0; i < config.group_size; ++i) {
    Rng rng = Rng::stream(config.seed, iteration, i);
    const PolicySample sample = policy_sample(params, scenario, rng);

    const std::string text =
        serialize_response({kToyThink, sample.trajectory}, config.serialize_decimals);
    const ParseResult parsed = parse_response(text);
    Trajectory traj = parsed.response->answer;  // the wire round-trip is what gets scored
    traj.dt = scenario.ground_truth.dt;

    group.responses.push_back(text);
    group.log_probs_old.push_back(policy_log_prob(params, scenario, traj));
    group.breakdowns.push_back(
        total_reward(text, scenario, config.weights, config.penalty_cap));
    group.rewards.push_back(group.breakdowns.back().total);
    group.trajectories.push_back(std::move(traj));
  }
  group.advantages = advantages(group.rewards, config.eps_std);

  const PolicyGrad grad =
      grad_surrogate(params, reference, group, scenario, config.beta, config.clip_range);

  TrainStepResult result;
  result.params = params;
  for (std::size_t i = 0; i < grad.weight.size(); ++i) {
    result.params.weight[i] += config.learning_rate * grad.weight[i];
  }
  for (std::size_t c = 0; c < grad.bias.size(); ++c) {
    result.params.bias[c] += config.learning_rate * grad.bias[c];
    result.params.log_std[c] += config.learning_rate * grad.log_std[c];
  }
  result.params.clamp_log_std();

  StepDiagnostics& diag = result.diagnostics;
  diag.iteration = iteration;
  diag.scenario_id = scenario.id;
  const double inv_g = 1.0 / static_cast<double>(config.group_size);
  for (const auto& b : group.breakdowns) {
    diag.mean_reward += b.total * inv_g;
    diag.mean_r_pos += b.r_pos * inv_g;
    diag.mean_r_ste += b.r_ste * inv_g;
    diag.mean_r_vel += b.r_vel * inv_g;
    diag.mean_r_tem += b.r_tem * inv_g;
  }
  diag.kl = kl_divergence(result.params, reference, scenario);
  diag.grad_norm = grad.norm();

  result.group = std::move(group);
  return result;
}

TrainResult train_loop(const std::vector<Scenario>& scenarios, const GrpoConfig& config) {
  if (scenarios.empty()) {
    throw std::invalid_argument("train_loop: scenario list is empty");
  }
  TrainResult result;
  result.params = PolicyParams::init(scenario_features(scenarios.front()).size(),
                                     scenarios.front().ground_truth.waypoints.size(),
                                     config.init_log_std);
  const PolicyParams reference = result.params;

  result.history.reserve(config.iterations);
  for (std::size_t it = 0; it < config.iterations; ++it) {
    const Scenario& scenario = scenarios[it % scenarios.size()];
    TrainStepResult step = train_step(result.params, reference, scenario, config, it);
    result.params = std::move(step.params);
    result.history.push_back(std::move(step.diagnostics));
  }
  return result;
}

}  // namespace trajrl
