#include "trajrl/reward.hpp"

#include <cmath>
#include <stdexcept>

#include "trajrl/motion.hpp"
#include "trajrl/response.hpp"

namespace trajrl {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": length mismatch");
  }
}

}  // namespace

double reward_pos(const Trajectory& pred, const Trajectory& gt) {
  require_same_length(pred.waypoints.size(), gt.waypoints.size(), "reward_pos");
  if (pred.waypoints.empty()) {
    throw std::invalid_argument("reward_pos: empty trajectories");
  }
  if (std::abs(pred.dt - gt.dt) > 1e-12) {
    throw std::invalid_argument("reward_pos: dt mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.waypoints.size(); ++i) {
    sum += (pred.waypoints[i] - gt.waypoints[i]).norm_sq();
  }
  return sum / static_cast<double>(pred.waypoints.size());
}

double reward_ste(const MotionProfile& pred, const MotionProfile& gt) {
  require_same_length(pred.headings.size(), gt.headings.size(), "reward_ste");
  const std::size_t n = pred.steps();
  if (n == 0) throw std::invalid_argument("reward_ste: empty profiles");
  double sum = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double d = pred.headings[j] - gt.headings[j];
    sum += d * d;
  }
  return sum / static_cast<double>(n);
}

double reward_vel(const MotionProfile& pred, const MotionProfile& gt) {
  require_same_length(pred.speeds.size(), gt.speeds.size(), "reward_vel");
  const std::size_t n = pred.steps();
  if (n == 0) throw std::invalid_argument("reward_vel: empty profiles");
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double d = pred.speeds[k] - gt.speeds[k];
    sum += d * d;
  }
  return sum / static_cast<double>(n);
}

double reward_tem(const MotionProfile& pred) {
  const std::size_t n = pred.steps();
  if (n == 0) throw std::invalid_argument("reward_tem: empty profile");
  double heading_sum = 0.0;
  double speed_sum = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double dh = pred.headings[j] - pred.headings[j - 1];
    const double dv = pred.speeds[j] - pred.speeds[j - 1];
    heading_sum += dh * dh;
    speed_sum += dv * dv;
  }
  return (heading_sum + speed_sum) / static_cast<double>(n);
}

RewardBreakdown accuracy_reward(const Trajectory& pred, const Trajectory& gt,
                                const VehicleState& anchor, const RewardWeights& weights) {
  const MotionProfile pred_profile = derive_motion(pred, anchor);
  const MotionProfile gt_profile = derive_motion(gt, anchor);

  RewardBreakdown b;
  b.r_pos = reward_pos(pred, gt);
  b.r_ste = reward_ste(pred_profile, gt_profile);
  b.r_vel = reward_vel(pred_profile, gt_profile);
  b.r_tem = reward_tem(pred_profile);
  b.r_acc = weights.pos * b.r_pos + weights.ste * b.r_ste + weights.vel * b.r_vel +
            weights.tem * b.r_tem;
  return b;
}

RewardBreakdown total_reward(std::string_view response_text, const Scenario& scenario,
                             const RewardWeights& weights, double penalty_cap) {
  const ParseResult parsed = parse_response(response_text);

  RewardBreakdown b;
  b.parsed = parsed.ok();
  b.r_format = parsed.ok() ? 1 : 0;
  if (!parsed.ok()) {
    b.r_acc = penalty_cap;
    b.total = static_cast<double>(b.r_format) - penalty_cap;
    return b;
  }

  Trajectory pred = parsed.response->answer;
  pred.dt = scenario.ground_truth.dt;  // the wire format carries no dt
  b.length_ok = pred.waypoints.size() == scenario.ground_truth.waypoints.size();
  if (!b.length_ok) {
    b.r_acc = penalty_cap;
    b.total = static_cast<double>(b.r_format) - penalty_cap;
    return b;
  }

  const RewardBreakdown acc =
      accuracy_reward(pred, scenario.ground_truth, scenario.history.last(), weights);
  b.r_pos = acc.r_pos;
  b.r_ste = acc.r_ste;
  b.r_vel = acc.r_vel;
  b.r_tem = acc.r_tem;
  b.r_acc = acc.r_acc;
  b.total = static_cast<double>(b.r_format) - b.r_acc;
  return b;
}

}  // namespace trajrl
