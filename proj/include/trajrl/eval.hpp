#pragma once

#include <functional>
#include <string>
#include <vector>

#include "trajrl/types.hpp"

namespace trajrl {

/// L2 error (meters) at the 1 s / 2 s / 3 s horizons plus their mean.
struct EvalRow {
  double l2_1s = 0.0;
  double l2_2s = 0.0;
  double l2_3s = 0.0;
  double l2_avg = 0.0;
};

/// Endpoint L2 distance at each horizon. Requires both trajectories to be
/// the standard 6 waypoints at dt = 0.5 s, so the horizons land on waypoint
/// indices 2, 4 and 6.
EvalRow l2_at_horizons(const Trajectory& pred, const Trajectory& gt);

using Predictor = std::function<Trajectory(const Scenario&)>;

struct ScenarioEval {
  std::string id;
  EvalRow row;
};

struct SkippedScenario {
  std::string id;
  std::string reason;
};

struct CorpusEval {
  EvalRow aggregate;  // unweighted mean over evaluated scenarios
  std::vector<ScenarioEval> per_scenario;
  std::vector<SkippedScenario> skipped;
};

/// Runs the predictor over every scenario and averages the rows. A predictor
/// that throws on a scenario produces a skipped entry instead of aborting.
CorpusEval evaluate_corpus(const std::vector<Scenario>& scenarios, const Predictor& predictor);

/// The physics baseline: constant-acceleration rollout of the history.
Trajectory baseline_predictor(const Scenario& scenario);

}  // namespace trajrl
