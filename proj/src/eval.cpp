#include "trajrl/eval.hpp"

#include <cmath>
#include <stdexcept>

#include "trajrl/motion.hpp"

namespace trajrl {

namespace {
constexpr std::size_t kHorizonLen = 6;
constexpr double kHorizonDt = 0.5;
}  // namespace

EvalRow l2_at_horizons(const Trajectory& pred, const Trajectory& gt) {
  if (pred.waypoints.size() != kHorizonLen || gt.waypoints.size() != kHorizonLen) {
    throw std::invalid_argument("l2_at_horizons: trajectories must have 6 waypoints");
  }
  if (std::abs(pred.dt - kHorizonDt) > 1e-9 || std::abs(gt.dt - kHorizonDt) > 1e-9) {
    throw std::invalid_argument("l2_at_horizons: trajectories must use dt = 0.5 s");
  }
  // Waypoint k sits at t = k*dt, so 1 s / 2 s / 3 s are indices 2, 4, 6.
  const auto at = [&](std::size_t k) {
    return (pred.waypoints[k - 1] - gt.waypoints[k - 1]).norm();
  };
  EvalRow row;
  row.l2_1s = at(2);
  row.l2_2s = at(4);
  row.l2_3s = at(6);
  row.l2_avg = (row.l2_1s + row.l2_2s + row.l2_3s) / 3.0;
  return row;
}

CorpusEval evaluate_corpus(const std::vector<Scenario>& scenarios, const Predictor& predictor) {
  CorpusEval result;
  for (const Scenario& scenario : scenarios) {
    try {
      const Trajectory pred = predictor(scenario);
      result.per_scenario.push_back({scenario.id, l2_at_horizons(pred, scenario.ground_truth)});
    } catch (const std::exception& e) {
      result.skipped.push_back({scenario.id, e.what()});
    }
  }
  if (!result.per_scenario.empty()) {
    const double inv = 1.0 / static_cast<double>(result.per_scenario.size());
    for (const auto& entry : result.per_scenario) {
      result.aggregate.l2_1s += entry.row.l2_1s * inv;
      result.aggregate.l2_2s += entry.row.l2_2s * inv;
      result.aggregate.l2_3s += entry.row.l2_3s * inv;
    }
    result.aggregate.l2_avg =
        (result.aggregate.l2_1s + result.aggregate.l2_2s + result.aggregate.l2_3s) / 3.0;
  }
  return result;
}

Trajectory baseline_predictor(const Scenario& scenario) {
  return rollout_constant_accel(scenario.history, scenario.ground_truth.waypoints.size(),
                                scenario.ground_truth.dt);
}

}  // namespace trajrl
