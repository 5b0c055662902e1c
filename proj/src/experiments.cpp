#include "trajrl/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "trajrl/motion.hpp"

namespace trajrl {

namespace {

// Stream tag separating evaluation draws from training iterations.
constexpr std::uint64_t kEvalStreamTag = 0x6576616C2D73616DULL;

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

Scenario with_lateral_drift(Scenario scenario, double drift_rate) {
  const double dt = scenario.ground_truth.dt;
  for (std::size_t k = 0; k < scenario.ground_truth.waypoints.size(); ++k) {
    scenario.ground_truth.waypoints[k].y += drift_rate * static_cast<double>(k + 1) * dt;
  }
  scenario.id += "+drift";
  return scenario;
}

Scenario with_lateral_zigzag(Scenario scenario, double amplitude) {
  for (std::size_t k = 0; k < scenario.ground_truth.waypoints.size(); ++k) {
    scenario.ground_truth.waypoints[k].y += (k % 2 == 0 ? amplitude : -amplitude);
  }
  scenario.id += "+zig";
  return scenario;
}

std::vector<std::pair<std::string, RewardWeights>> component_toggles() {
  return {{"full", {1, 1, 1, 1}},
          {"wo_pos", {0, 1, 1, 1}},
          {"wo_ste", {1, 0, 1, 1}},
          {"wo_vel", {1, 1, 0, 1}},
          {"wo_tem", {1, 1, 1, 0}}};
}

double mean_sampled_r_tem(const PolicyParams& params, const std::vector<Scenario>& scenarios,
                          std::uint64_t eval_seed) {
  if (scenarios.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    Rng rng = Rng::stream(eval_seed, kEvalStreamTag, i);
    const PolicySample sample = policy_sample(params, scenarios[i], rng);
    const MotionProfile profile =
        derive_motion(sample.trajectory, scenarios[i].history.last());
    sum += reward_tem(profile);
  }
  return sum / static_cast<double>(scenarios.size());
}

AblationResult run_ablation(const std::vector<Scenario>& scenarios, const GrpoConfig& config,
                            const std::vector<std::pair<std::string, RewardWeights>>& toggles) {
  AblationResult result;
  for (const auto& [label, weights] : toggles) {
    GrpoConfig run_config = config;
    run_config.weights = weights;
    const TrainResult trained = train_loop(scenarios, run_config);

    AblationRow row;
    row.label = label;
    row.weights = weights;
    const CorpusEval eval = evaluate_corpus(
        scenarios, [&](const Scenario& s) { return policy_mean(trained.params, s); });
    row.eval = eval.aggregate;
    for (const auto& sc : scenarios) {
      const Trajectory mu = policy_mean(trained.params, sc);
      row.r_tem_mean +=
          reward_tem(derive_motion(mu, sc.history.last())) / double(scenarios.size());
    }
    row.r_tem_sampled = mean_sampled_r_tem(trained.params, scenarios, config.seed);

    const std::size_t tail = std::min<std::size_t>(50, trained.history.size());
    for (std::size_t i = trained.history.size() - tail; i < trained.history.size(); ++i) {
      row.mean_reward += trained.history[i].mean_reward / static_cast<double>(tail);
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::vector<SweepRow> sweep_group_size(const std::vector<Scenario>& scenarios,
                                       const GrpoConfig& config,
                                       std::span<const std::size_t> sizes,
                                       std::span<const std::uint64_t> seeds) {
  std::vector<SweepRow> rows;
  for (std::size_t g : sizes) {
    SweepRow row;
    row.group_size = g;
    for (std::uint64_t seed : seeds) {
      GrpoConfig run_config = config;
      run_config.group_size = g;
      run_config.seed = seed;
      const TrainResult trained = train_loop(scenarios, run_config);
      const CorpusEval eval = evaluate_corpus(
          scenarios, [&](const Scenario& s) { return policy_mean(trained.params, s); });
      row.l2_by_seed.push_back(eval.aggregate.l2_avg);
    }
    row.median_l2 = median(row.l2_by_seed);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace trajrl
