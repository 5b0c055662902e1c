#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trajrl/cot.hpp"
#include "trajrl/eval.hpp"
#include "trajrl/experiments.hpp"
#include "trajrl/feasibility.hpp"
#include "trajrl/grpo.hpp"
#include "trajrl/motion.hpp"
#include "trajrl/report.hpp"
#include "trajrl/response.hpp"
#include "trajrl/reward.hpp"
#include "trajrl/scenario_io.hpp"
#include "trajrl/suspension.hpp"
#include "trajrl/synth.hpp"

namespace py = pybind11;
using namespace trajrl;

PYBIND11_MODULE(_core, m) {
  m.doc() = "physics-grounded GRPO trajectory planning engine";

  py::register_exception<DataError>(m, "DataError");

  // domain types
  py::class_<Vec2>(m, "Vec2")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def("norm", &Vec2::norm)
      .def("__repr__", [](const Vec2& v) {
        return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
      });

  py::class_<VehicleState>(m, "VehicleState")
      .def(py::init<>())
      .def_readwrite("t", &VehicleState::t)
      .def_readwrite("position", &VehicleState::position)
      .def_readwrite("velocity", &VehicleState::velocity)
      .def_readwrite("acceleration", &VehicleState::acceleration)
      .def_readwrite("heading", &VehicleState::heading)
      .def_readwrite("steering", &VehicleState::steering)
      .def("speed", &VehicleState::speed);

  py::class_<History>(m, "History")
      .def(py::init<>())
      .def_readwrite("states", &History::states)
      .def("spacing", &History::spacing)
      .def("validate", &History::validate);

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init<>())
      .def_readwrite("waypoints", &Trajectory::waypoints)
      .def_readwrite("dt", &Trajectory::dt)
      .def("__len__", &Trajectory::size);

  py::class_<MotionProfile>(m, "MotionProfile")
      .def_readonly("headings", &MotionProfile::headings)
      .def_readonly("speeds", &MotionProfile::speeds)
      .def_readonly("accels", &MotionProfile::accels);

  py::class_<VehicleSpec>(m, "VehicleSpec")
      .def(py::init<>())
      .def_readwrite("wheelbase_l", &VehicleSpec::wheelbase_l)
      .def_readwrite("delta_max", &VehicleSpec::delta_max)
      .def_readwrite("mu", &VehicleSpec::mu)
      .def_readwrite("g", &VehicleSpec::g)
      .def_readwrite("jerk_limit", &VehicleSpec::jerk_limit);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("id", &Scenario::id)
      .def_readwrite("history", &Scenario::history)
      .def_readwrite("ground_truth", &Scenario::ground_truth)
      .def_readwrite("spec", &Scenario::spec);

  // motion + synthesis
  m.def("derive_motion", &derive_motion, py::arg("traj"), py::arg("anchor"));
  m.def("avg_acceleration", &avg_acceleration, py::arg("history"));
  m.def("rollout_constant_accel", &rollout_constant_accel, py::arg("history"),
        py::arg("steps"), py::arg("dt"));
  m.def("lateral_offset", &lateral_offset, py::arg("speed"), py::arg("steering"));
  m.def(
      "synth_scenario",
      [](std::uint64_t seed, const std::string& kind, const VehicleSpec& spec) {
        return synth_scenario(seed, scenario_kind_from_string(kind), spec);
      },
      py::arg("seed"), py::arg("kind"), py::arg("spec") = VehicleSpec{});

  // response codec
  py::enum_<ParseErrorCode>(m, "ParseErrorCode")
      .value("none", ParseErrorCode::none)
      .value("missing_think", ParseErrorCode::missing_think)
      .value("missing_answer", ParseErrorCode::missing_answer)
      .value("bad_tuple", ParseErrorCode::bad_tuple)
      .value("trailing_content", ParseErrorCode::trailing_content);

  py::class_<ParseError>(m, "ParseError")
      .def_readonly("code", &ParseError::code)
      .def_readonly("tuple_index", &ParseError::tuple_index)
      .def_readonly("offset", &ParseError::offset)
      .def_readonly("message", &ParseError::message);

  py::class_<ModelResponse>(m, "ModelResponse")
      .def(py::init<>())
      .def_readwrite("think", &ModelResponse::think)
      .def_readwrite("answer", &ModelResponse::answer);

  py::class_<ParseResult>(m, "ParseResult")
      .def_readonly("response", &ParseResult::response)
      .def_readonly("error", &ParseResult::error)
      .def("ok", &ParseResult::ok);

  m.def("parse_response", [](const std::string& text) { return parse_response(text); },
        py::arg("text"));
  m.def("format_reward", [](const std::string& text) { return format_reward(text); },
        py::arg("text"));
  m.def("serialize_response", &serialize_response, py::arg("response"), py::arg("decimals"));

  py::class_<CotStageReport>(m, "CotStageReport")
      .def_readonly("visual_analysis", &CotStageReport::visual_analysis)
      .def_readonly("motion_modeling", &CotStageReport::motion_modeling)
      .def_readonly("logical_deductions", &CotStageReport::logical_deductions)
      .def_readonly("self_reflection", &CotStageReport::self_reflection)
      .def_readonly("ordered", &CotStageReport::ordered)
      .def("all_present", &CotStageReport::all_present);

  m.def("validate_cot", [](const std::string& text) { return validate_cot(text); },
        py::arg("text"));

  // rewards
  py::class_<RewardWeights>(m, "RewardWeights")
      .def(py::init<>())
      .def(py::init<double, double, double, double>(), py::arg("pos"), py::arg("ste"),
           py::arg("vel"), py::arg("tem"))
      .def_readwrite("pos", &RewardWeights::pos)
      .def_readwrite("ste", &RewardWeights::ste)
      .def_readwrite("vel", &RewardWeights::vel)
      .def_readwrite("tem", &RewardWeights::tem);

  py::class_<RewardBreakdown>(m, "RewardBreakdown")
      .def_readonly("r_pos", &RewardBreakdown::r_pos)
      .def_readonly("r_ste", &RewardBreakdown::r_ste)
      .def_readonly("r_vel", &RewardBreakdown::r_vel)
      .def_readonly("r_tem", &RewardBreakdown::r_tem)
      .def_readonly("r_acc", &RewardBreakdown::r_acc)
      .def_readonly("r_format", &RewardBreakdown::r_format)
      .def_readonly("total", &RewardBreakdown::total)
      .def_readonly("parsed", &RewardBreakdown::parsed)
      .def_readonly("length_ok", &RewardBreakdown::length_ok);

  m.def("reward_pos", &reward_pos, py::arg("pred"), py::arg("gt"));
  m.def("reward_ste", &reward_ste, py::arg("pred_profile"), py::arg("gt_profile"));
  m.def("reward_vel", &reward_vel, py::arg("pred_profile"), py::arg("gt_profile"));
  m.def("reward_tem", &reward_tem, py::arg("pred_profile"));
  m.def("accuracy_reward", &accuracy_reward, py::arg("pred"), py::arg("gt"), py::arg("anchor"),
        py::arg("weights") = RewardWeights{});
  m.def(
      "total_reward",
      [](const std::string& text, const Scenario& scenario, const RewardWeights& weights,
         double penalty_cap) { return total_reward(text, scenario, weights, penalty_cap); },
      py::arg("response_text"), py::arg("scenario"), py::arg("weights") = RewardWeights{},
      py::arg("penalty_cap") = kDefaultPenaltyCap);

  // kinematics
  py::class_<LateralAccelResult>(m, "LateralAccelResult")
      .def_readonly("max_accel", &LateralAccelResult::max_accel)
      .def_readonly("bound", &LateralAccelResult::bound)
      .def_readonly("ok", &LateralAccelResult::ok)
      .def_readonly("worst_index", &LateralAccelResult::worst_index);

  py::class_<FeasibilityReport>(m, "FeasibilityReport")
      .def_readonly("min_radius_ok", &FeasibilityReport::min_radius_ok)
      .def_readonly("worst_radius", &FeasibilityReport::worst_radius)
      .def_readonly("min_radius_bound", &FeasibilityReport::min_radius_bound)
      .def_readonly("lateral_accel_ok", &FeasibilityReport::lateral_accel_ok)
      .def_readonly("max_lateral_accel", &FeasibilityReport::max_lateral_accel)
      .def_readonly("lateral_accel_bound", &FeasibilityReport::lateral_accel_bound)
      .def_readonly("jerk_ok", &FeasibilityReport::jerk_ok)
      .def_readonly("max_abs_jerk", &FeasibilityReport::max_abs_jerk)
      .def_readonly("jerk_bound", &FeasibilityReport::jerk_bound)
      .def_readonly("overall", &FeasibilityReport::overall);

  m.def("min_turn_radius", &min_turn_radius, py::arg("spec"));
  m.def("path_radii", &path_radii, py::arg("traj"), py::arg("anchor"));
  m.def("lateral_accel_check", &lateral_accel_check, py::arg("traj"), py::arg("anchor"),
        py::arg("spec"));
  m.def("jerk_profile", &jerk_profile, py::arg("traj"), py::arg("anchor"));
  m.def("check_feasible", &check_feasible, py::arg("traj"), py::arg("anchor"), py::arg("spec"));

  py::class_<SuspensionParams>(m, "SuspensionParams")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("mass"), py::arg("damping"),
           py::arg("stiffness"))
      .def_readwrite("mass", &SuspensionParams::mass)
      .def_readwrite("damping", &SuspensionParams::damping)
      .def_readwrite("stiffness", &SuspensionParams::stiffness)
      .def("natural_freq", &SuspensionParams::natural_freq);

  m.def(
      "suspension_response",
      [](const SuspensionParams& params, const std::vector<double>& forcing, double dt,
         double x0, double v0) { return suspension_response(params, forcing, dt, x0, v0); },
      py::arg("params"), py::arg("forcing"), py::arg("dt"), py::arg("x0") = 0.0,
      py::arg("v0") = 0.0);

  // GRPO
  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("stream", &Rng::stream, py::arg("seed"), py::arg("stream_id"),
                  py::arg("substream") = 0)
      .def("uniform", py::overload_cast<>(&Rng::uniform))
      .def("normal", &Rng::normal);

  py::class_<PolicyParams>(m, "PolicyParams")
      .def_static("init", &PolicyParams::init, py::arg("feature_dim"),
                  py::arg("num_waypoints"), py::arg("init_log_std") = kDefaultInitLogStd)
      .def_readwrite("feature_dim", &PolicyParams::feature_dim)
      .def_readwrite("num_waypoints", &PolicyParams::num_waypoints)
      .def_readwrite("weight", &PolicyParams::weight)
      .def_readwrite("bias", &PolicyParams::bias)
      .def_readwrite("log_std", &PolicyParams::log_std);

  py::class_<PolicySample>(m, "PolicySample")
      .def_readonly("trajectory", &PolicySample::trajectory)
      .def_readonly("log_prob", &PolicySample::log_prob);

  m.def("scenario_features", &scenario_features, py::arg("scenario"));
  m.def("policy_mean", &policy_mean, py::arg("params"), py::arg("scenario"));
  m.def("policy_sample", &policy_sample, py::arg("params"), py::arg("scenario"), py::arg("rng"));
  m.def("policy_log_prob", &policy_log_prob, py::arg("params"), py::arg("scenario"),
        py::arg("traj"));
  m.def("save_policy", &save_policy, py::arg("path"), py::arg("params"));
  m.def("load_policy", &load_policy, py::arg("path"));

  py::class_<GrpoConfig>(m, "GrpoConfig")
      .def(py::init<>())
      .def_readwrite("group_size", &GrpoConfig::group_size)
      .def_readwrite("beta", &GrpoConfig::beta)
      .def_readwrite("learning_rate", &GrpoConfig::learning_rate)
      .def_readwrite("iterations", &GrpoConfig::iterations)
      .def_readwrite("eps_std", &GrpoConfig::eps_std)
      .def_readwrite("seed", &GrpoConfig::seed)
      .def_readwrite("clip_range", &GrpoConfig::clip_range)
      .def_readwrite("serialize_decimals", &GrpoConfig::serialize_decimals)
      .def_readwrite("init_log_std", &GrpoConfig::init_log_std)
      .def_readwrite("weights", &GrpoConfig::weights)
      .def_readwrite("penalty_cap", &GrpoConfig::penalty_cap);

  py::class_<GroupSample>(m, "GroupSample")
      .def_readonly("responses", &GroupSample::responses)
      .def_readonly("trajectories", &GroupSample::trajectories)
      .def_readonly("log_probs_old", &GroupSample::log_probs_old)
      .def_readonly("rewards", &GroupSample::rewards)
      .def_readonly("advantages", &GroupSample::advantages);

  m.def(
      "advantages",
      [](const std::vector<double>& rewards, double eps_std) {
        return advantages(rewards, eps_std);
      },
      py::arg("rewards"), py::arg("eps_std") = 1e-8);
  m.def("kl_divergence", &kl_divergence, py::arg("policy"), py::arg("reference"),
        py::arg("scenario"));
  m.def("surrogate", &surrogate, py::arg("policy"), py::arg("reference"), py::arg("group"),
        py::arg("scenario"), py::arg("beta"), py::arg("clip_range") = 0.0);

  py::class_<StepDiagnostics>(m, "StepDiagnostics")
      .def_readonly("iteration", &StepDiagnostics::iteration)
      .def_readonly("scenario_id", &StepDiagnostics::scenario_id)
      .def_readonly("mean_reward", &StepDiagnostics::mean_reward)
      .def_readonly("mean_r_pos", &StepDiagnostics::mean_r_pos)
      .def_readonly("mean_r_ste", &StepDiagnostics::mean_r_ste)
      .def_readonly("mean_r_vel", &StepDiagnostics::mean_r_vel)
      .def_readonly("mean_r_tem", &StepDiagnostics::mean_r_tem)
      .def_readonly("kl", &StepDiagnostics::kl)
      .def_readonly("grad_norm", &StepDiagnostics::grad_norm);

  py::class_<TrainStepResult>(m, "TrainStepResult")
      .def_readonly("params", &TrainStepResult::params)
      .def_readonly("group", &TrainStepResult::group)
      .def_readonly("diagnostics", &TrainStepResult::diagnostics);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("params", &TrainResult::params)
      .def_readonly("history", &TrainResult::history);

  m.def("train_step", &train_step, py::arg("params"), py::arg("reference"),
        py::arg("scenario"), py::arg("config"), py::arg("iteration"));
  m.def("train_loop", &train_loop, py::arg("scenarios"), py::arg("config"));

  // evaluation + experiments
  py::class_<EvalRow>(m, "EvalRow")
      .def_readonly("l2_1s", &EvalRow::l2_1s)
      .def_readonly("l2_2s", &EvalRow::l2_2s)
      .def_readonly("l2_3s", &EvalRow::l2_3s)
      .def_readonly("l2_avg", &EvalRow::l2_avg);

  py::class_<ScenarioEval>(m, "ScenarioEval")
      .def_readonly("id", &ScenarioEval::id)
      .def_readonly("row", &ScenarioEval::row);

  py::class_<SkippedScenario>(m, "SkippedScenario")
      .def_readonly("id", &SkippedScenario::id)
      .def_readonly("reason", &SkippedScenario::reason);

  py::class_<CorpusEval>(m, "CorpusEval")
      .def_readonly("aggregate", &CorpusEval::aggregate)
      .def_readonly("per_scenario", &CorpusEval::per_scenario)
      .def_readonly("skipped", &CorpusEval::skipped);

  m.def("l2_at_horizons", &l2_at_horizons, py::arg("pred"), py::arg("gt"));
  m.def("evaluate_corpus", &evaluate_corpus, py::arg("scenarios"), py::arg("predictor"));
  m.def("baseline_predictor", &baseline_predictor, py::arg("scenario"));

  m.def("save_scenarios", &save_scenarios, py::arg("path"), py::arg("scenarios"));
  m.def("load_scenarios", &load_scenarios, py::arg("path"));

  m.def("with_lateral_drift", &with_lateral_drift, py::arg("scenario"), py::arg("drift_rate"));
  m.def("with_lateral_zigzag", &with_lateral_zigzag, py::arg("scenario"), py::arg("amplitude"));

  py::class_<AblationRow>(m, "AblationRow")
      .def_readonly("label", &AblationRow::label)
      .def_readonly("eval", &AblationRow::eval)
      .def_readonly("r_tem_mean", &AblationRow::r_tem_mean)
      .def_readonly("r_tem_sampled", &AblationRow::r_tem_sampled)
      .def_readonly("mean_reward", &AblationRow::mean_reward);

  py::class_<AblationResult>(m, "AblationResult")
      .def_readonly("rows", &AblationResult::rows);

  m.def("component_toggles", &component_toggles);
  m.def("run_ablation", &run_ablation, py::arg("scenarios"), py::arg("config"),
        py::arg("toggles"));

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("group_size", &SweepRow::group_size)
      .def_readonly("l2_by_seed", &SweepRow::l2_by_seed)
      .def_readonly("median_l2", &SweepRow::median_l2);

  m.def(
      "sweep_group_size",
      [](const std::vector<Scenario>& scenarios, const GrpoConfig& config,
         const std::vector<std::size_t>& sizes, const std::vector<std::uint64_t>& seeds) {
        return sweep_group_size(scenarios, config, sizes, seeds);
      },
      py::arg("scenarios"), py::arg("config"), py::arg("sizes"), py::arg("seeds"));
}
