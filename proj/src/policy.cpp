#include "trajrl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "json.hpp"
#include "trajrl/motion.hpp"

namespace trajrl {

namespace {

constexpr double kHalfLog2Pi = 0.5 * 1.8378770664093455;  // 0.5*log(2*pi)

std::vector<double> mean_coords(const PolicyParams& params, const Scenario& scenario) {
  const std::vector<double> f = scenario_features(scenario);
  if (f.size() != params.feature_dim) {
    throw std::invalid_argument("policy: feature dimension mismatch");
  }
  const std::size_t n = scenario.ground_truth.waypoints.size();
  if (n != params.num_waypoints) {
    throw std::invalid_argument("policy: waypoint count mismatch");
  }

  const Trajectory base = rollout_constant_accel(scenario.history, n, scenario.ground_truth.dt);
  std::vector<double> mean(params.out_dim());
  for (std::size_t j = 0; j < n; ++j) {
    mean[2 * j] = base.waypoints[j].x;
    mean[2 * j + 1] = base.waypoints[j].y;
  }
  for (std::size_t c = 0; c < params.out_dim(); ++c) {
    double offset = params.bias[c];
    for (std::size_t k = 0; k < params.feature_dim; ++k) {
      offset += params.weight[k * params.out_dim() + c] * f[k];
    }
    mean[c] += offset;
  }
  return mean;
}

}  // namespace

PolicyParams PolicyParams::init(std::size_t feature_dim, std::size_t num_waypoints,
                                double init_log_std) {
  PolicyParams p;
  p.feature_dim = feature_dim;
  p.num_waypoints = num_waypoints;
  p.weight.assign(feature_dim * 2 * num_waypoints, 0.0);
  p.bias.assign(2 * num_waypoints, 0.0);
  p.log_std.assign(2 * num_waypoints, init_log_std);
  p.clamp_log_std();
  return p;
}

void PolicyParams::clamp_log_std() {
  for (double& s : log_std) {
    s = std::clamp(s, kLogStdMin, kLogStdMax);
  }
}

std::vector<double> scenario_features(const Scenario& scenario) {
  const VehicleState& last = scenario.history.last();
  // Scaled to comparable magnitudes so one shared learning rate conditions
  // the whole linear head.
  return {last.position.x / 10.0,     last.position.y / 10.0,
          last.velocity.x / 10.0,     last.velocity.y / 10.0,
          last.acceleration.x / 2.0,  last.acceleration.y / 2.0,
          last.heading};
}

Trajectory policy_mean(const PolicyParams& params, const Scenario& scenario) {
  const std::vector<double> mean = mean_coords(params, scenario);
  Trajectory traj;
  traj.dt = scenario.ground_truth.dt;
  traj.waypoints.resize(params.num_waypoints);
  for (std::size_t j = 0; j < params.num_waypoints; ++j) {
    traj.waypoints[j] = {mean[2 * j], mean[2 * j + 1]};
  }
  return traj;
}

PolicySample policy_sample(const PolicyParams& params, const Scenario& scenario, Rng& rng) {
  const std::vector<double> mean = mean_coords(params, scenario);

  PolicySample sample;
  sample.trajectory.dt = scenario.ground_truth.dt;
  sample.trajectory.waypoints.resize(params.num_waypoints);
  for (std::size_t c = 0; c < params.out_dim(); ++c) {
    const double z = rng.normal();
    const double value = mean[c] + std::exp(params.log_std[c]) * z;
    auto& wp = sample.trajectory.waypoints[c / 2];
    (c % 2 == 0 ? wp.x : wp.y) = value;
    sample.log_prob += -params.log_std[c] - kHalfLog2Pi - 0.5 * z * z;
  }
  return sample;
}

double policy_log_prob(const PolicyParams& params, const Scenario& scenario,
                       const Trajectory& traj) {
  if (traj.waypoints.size() != params.num_waypoints) {
    throw std::invalid_argument("policy_log_prob: waypoint count mismatch");
  }
  const std::vector<double> mean = mean_coords(params, scenario);
  double log_prob = 0.0;
  for (std::size_t c = 0; c < params.out_dim(); ++c) {
    const auto& wp = traj.waypoints[c / 2];
    const double value = c % 2 == 0 ? wp.x : wp.y;
    const double z = (value - mean[c]) / std::exp(params.log_std[c]);
    log_prob += -params.log_std[c] - kHalfLog2Pi - 0.5 * z * z;
  }
  return log_prob;
}

void save_policy(const std::string& path, const PolicyParams& params) {
  nlohmann::json j{{"feature_dim", params.feature_dim},
                   {"num_waypoints", params.num_waypoints},
                   {"weight", params.weight},
                   {"bias", params.bias},
                   {"log_std", params.log_std}};
  std::ofstream out(path);
  if (!out) throw DataError("cannot open policy file for writing: " + path);
  out << j.dump(2) << "\n";
}

PolicyParams load_policy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open policy file: " + path);
  nlohmann::json j;
  try {
    in >> j;
    PolicyParams p;
    p.feature_dim = j.at("feature_dim").get<std::size_t>();
    p.num_waypoints = j.at("num_waypoints").get<std::size_t>();
    p.weight = j.at("weight").get<std::vector<double>>();
    p.bias = j.at("bias").get<std::vector<double>>();
    p.log_std = j.at("log_std").get<std::vector<double>>();
    if (p.weight.size() != p.feature_dim * p.out_dim() || p.bias.size() != p.out_dim() ||
        p.log_std.size() != p.out_dim()) {
      throw DataError("policy file has inconsistent dimensions: " + path);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed policy file " + path + ": " + e.what());
  }
}

}  // namespace trajrl
