#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trajrl/cot.hpp"
#include "trajrl/eval.hpp"
#include "trajrl/experiments.hpp"
#include "trajrl/grpo.hpp"
#include "trajrl/report.hpp"
#include "trajrl/response.hpp"
#include "trajrl/scenario_io.hpp"
#include "trajrl/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAssert = 3;

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw trajrl::DataError("cannot open output file: " + out_path);
  out << content;
}

std::string read_response_text(const std::string& file, const std::string& inline_text) {
  if (!inline_text.empty()) return inline_text;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw trajrl::DataError("cannot open response file: " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ostringstream buf;
  buf << std::cin.rdbuf();
  return buf.str();
}

struct CommonTrainOpts {
  std::string scenarios_path;
  trajrl::GrpoConfig config;
  std::vector<double> weights{1.0, 1.0, 1.0, 1.0};

  void attach(CLI::App* cmd, bool with_iterations_default = true) {
    cmd->add_option("--scenarios", scenarios_path, "scenario corpus (JSON lines)")->required();
    cmd->add_option("--seed", config.seed, "run seed");
    cmd->add_option("--group-size", config.group_size, "responses per input (G)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    cmd->add_option("--beta", config.beta, "KL coefficient")->check(CLI::NonNegativeNumber);
    cmd->add_option("--lr", config.learning_rate, "learning rate")
        ->check(CLI::PositiveNumber);
    auto* iters = cmd->add_option("--iterations", config.iterations, "training iterations");
    if (with_iterations_default) iters->default_val(std::size_t{500});
    cmd->add_option("--weights", weights,
                    "reward weights pos,ste,vel,tem (comma separated)")
        ->delimiter(',')
        ->expected(4);
    cmd->add_option("--penalty-cap", config.penalty_cap,
                    "accuracy penalty for malformed or wrong-length answers")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--init-log-std", config.init_log_std,
                    "initial per-coordinate log standard deviation");
  }

  trajrl::GrpoConfig resolved() const {
    trajrl::GrpoConfig c = config;
    c.weights = {weights[0], weights[1], weights[2], weights[3]};
    return c;
  }
};

int run_gen(const std::string& kind_name, std::size_t count, std::uint64_t seed,
            double drift, double zig, const std::string& out_path) {
  std::vector<trajrl::Scenario> corpus;
  corpus.reserve(count);
  const std::vector<trajrl::ScenarioKind> all = {
      trajrl::ScenarioKind::straight, trajrl::ScenarioKind::constant_turn,
      trajrl::ScenarioKind::accel, trajrl::ScenarioKind::brake};
  for (std::size_t i = 0; i < count; ++i) {
    const trajrl::ScenarioKind kind = kind_name == "mixed"
                                          ? all[i % all.size()]
                                          : trajrl::scenario_kind_from_string(kind_name);
    trajrl::Scenario s = trajrl::synth_scenario(seed + i, kind, {});
    if (drift != 0.0) s = trajrl::with_lateral_drift(std::move(s), drift);
    if (zig != 0.0) s = trajrl::with_lateral_zigzag(std::move(s), zig);
    corpus.push_back(std::move(s));
  }
  trajrl::save_scenarios(out_path, corpus);
  std::cout << "wrote " << corpus.size() << " scenarios to " << out_path << "\n";
  return kExitOk;
}

int run_eval(const std::string& scenarios_path, const std::string& predictor_name,
             const std::string& policy_path, const std::string& format_name,
             const std::string& out_path, std::optional<double> assert_below) {
  const auto scenarios = trajrl::load_scenarios(scenarios_path);
  trajrl::Predictor predictor;
  trajrl::PolicyParams params;
  if (predictor_name == "baseline") {
    predictor = trajrl::baseline_predictor;
  } else if (predictor_name == "gt-echo") {
    predictor = [](const trajrl::Scenario& s) { return s.ground_truth; };
  } else if (predictor_name == "policy") {
    if (policy_path.empty()) {
      throw CLI::ValidationError("--policy is required with --predictor policy");
    }
    params = trajrl::load_policy(policy_path);
    predictor = [&params](const trajrl::Scenario& s) { return trajrl::policy_mean(params, s); };
  } else {
    throw CLI::ValidationError("unknown predictor: " + predictor_name);
  }

  const auto eval = trajrl::evaluate_corpus(scenarios, predictor);
  write_output(out_path, trajrl::render_corpus_eval(
                             eval, trajrl::report_format_from_string(format_name)));

  if (assert_below && eval.aggregate.l2_avg > *assert_below) {
    std::cerr << "assertion failed: aggregate l2_avg " << eval.aggregate.l2_avg
              << " exceeds " << *assert_below << "\n";
    return kExitAssert;
  }
  return kExitOk;
}

int run_reward(const std::string& scenarios_path, std::size_t index,
               const std::string& response_file, const std::string& response_text,
               const std::vector<double>& weights, double penalty_cap,
               const std::string& out_path) {
  const auto scenarios = trajrl::load_scenarios(scenarios_path);
  if (index >= scenarios.size()) {
    throw trajrl::DataError("scenario index " + std::to_string(index) + " out of range (corpus has " +
                            std::to_string(scenarios.size()) + ")");
  }
  const std::string text = read_response_text(response_file, response_text);
  const trajrl::RewardWeights w{weights[0], weights[1], weights[2], weights[3]};
  const auto breakdown = trajrl::total_reward(text, scenarios[index], w, penalty_cap);
  write_output(out_path, trajrl::render_breakdown_json(breakdown));
  return kExitOk;
}

int run_validate(const std::string& response_file, const std::string& response_text,
                 const std::string& out_path) {
  const std::string text = read_response_text(response_file, response_text);
  const auto parsed = trajrl::parse_response(text);
  const auto cot = trajrl::validate_cot(text);

  std::ostringstream out;
  out << "{\n  \"format_ok\": " << (parsed.ok() ? "true" : "false");
  if (!parsed.ok()) {
    out << ",\n  \"error\": \"" << trajrl::to_string(parsed.error.code) << "\""
        << ",\n  \"offset\": " << parsed.error.offset;
    if (parsed.error.tuple_index >= 0) {
      out << ",\n  \"tuple_index\": " << parsed.error.tuple_index;
    }
  } else {
    out << ",\n  \"waypoints\": " << parsed.response->answer.waypoints.size();
  }
  out << ",\n  \"cot\": {\"visual_analysis\": " << (cot.visual_analysis ? "true" : "false")
      << ", \"motion_modeling\": " << (cot.motion_modeling ? "true" : "false")
      << ", \"logical_deductions\": " << (cot.logical_deductions ? "true" : "false")
      << ", \"self_reflection\": " << (cot.self_reflection ? "true" : "false")
      << ", \"ordered\": " << (cot.ordered ? "true" : "false") << "}\n}\n";
  write_output(out_path, out.str());
  return parsed.ok() ? kExitOk : kExitData;
}

int run_train(const CommonTrainOpts& opts, const std::string& out_path,
              const std::string& policy_out) {
  const auto scenarios = trajrl::load_scenarios(opts.scenarios_path);
  const auto result = trajrl::train_loop(scenarios, opts.resolved());
  write_output(out_path, trajrl::render_diagnostics_csv(result.history));
  if (!policy_out.empty()) {
    trajrl::save_policy(policy_out, result.params);
  }
  if (!out_path.empty() && !result.history.empty()) {
    std::cout << "trained " << result.history.size() << " iterations; mean reward "
              << result.history.front().mean_reward << " -> "
              << result.history.back().mean_reward << "\n";
  }
  return kExitOk;
}

int run_ablate(const CommonTrainOpts& opts, const std::string& format_name,
               const std::string& out_path) {
  const auto scenarios = trajrl::load_scenarios(opts.scenarios_path);
  const auto result =
      trajrl::run_ablation(scenarios, opts.resolved(), trajrl::component_toggles());
  write_output(out_path, trajrl::render_ablation(
                             result, trajrl::report_format_from_string(format_name)));
  return kExitOk;
}

int run_sweep(const CommonTrainOpts& opts, std::vector<std::size_t> sizes,
              std::vector<std::uint64_t> seeds, const std::string& format_name,
              const std::string& out_path) {
  const auto scenarios = trajrl::load_scenarios(opts.scenarios_path);
  const auto rows = trajrl::sweep_group_size(scenarios, opts.resolved(), sizes, seeds);
  write_output(out_path,
               trajrl::render_sweep(rows, trajrl::report_format_from_string(format_name)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"physics-grounded GRPO trajectory planning harness"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic scenario corpus");
  std::string gen_kind = "mixed";
  std::size_t gen_count = 100;
  std::uint64_t gen_seed = 0;
  double gen_drift = 0.0;
  double gen_zig = 0.0;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "straight|constant_turn|accel|brake|mixed");
  gen->add_option("--count", gen_count, "number of scenarios")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "base seed (scenario i uses seed+i)");
  gen->add_option("--drift", gen_drift, "lateral drift rate (m/s) applied to ground truths");
  gen->add_option("--zig", gen_zig, "alternating lateral offset (m) applied to ground truths");
  gen->add_option("--out", gen_out, "output path")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a predictor on a corpus");
  std::string eval_scenarios, eval_predictor = "baseline", eval_policy, eval_format = "table",
              eval_out;
  std::optional<double> eval_assert;
  eval->add_option("--scenarios", eval_scenarios, "scenario corpus")->required();
  eval->add_option("--predictor", eval_predictor, "baseline|gt-echo|policy");
  eval->add_option("--policy", eval_policy, "policy params file (for --predictor policy)");
  eval->add_option("--format", eval_format, "table|csv|json");
  eval->add_option("--out", eval_out, "output path (default stdout)");
  eval->add_option("--assert-below", eval_assert,
                   "exit 3 unless aggregate l2_avg is at most this many meters");

  // reward
  auto* reward = app.add_subcommand("reward", "score one response against a scenario");
  std::string reward_scenarios, reward_file, reward_text, reward_out;
  std::size_t reward_index = 0;
  std::vector<double> reward_weights{1.0, 1.0, 1.0, 1.0};
  double reward_penalty = trajrl::kDefaultPenaltyCap;
  reward->add_option("--scenarios", reward_scenarios, "scenario corpus")->required();
  reward->add_option("--index", reward_index, "scenario index in the corpus");
  reward->add_option("--response-file", reward_file, "file holding the response text");
  reward->add_option("--response", reward_text, "inline response text");
  reward->add_option("--weights", reward_weights, "pos,ste,vel,tem")->delimiter(',')->expected(4);
  reward->add_option("--penalty-cap", reward_penalty, "length/format penalty")
      ->check(CLI::PositiveNumber);
  reward->add_option("--out", reward_out, "output path (default stdout)");

  // validate
  auto* validate = app.add_subcommand("validate", "check response format and CoT stages");
  std::string validate_file, validate_text, validate_out;
  validate->add_option("--response-file", validate_file, "file holding the response text");
  validate->add_option("--response", validate_text, "inline response text (default: stdin)");
  validate->add_option("--out", validate_out, "output path (default stdout)");

  // train
  auto* train = app.add_subcommand("train", "GRPO training on a corpus");
  CommonTrainOpts train_opts;
  train_opts.attach(train);
  std::string train_out, train_policy_out;
  train->add_option("--out", train_out, "diagnostics CSV path (default stdout)");
  train->add_option("--policy-out", train_policy_out, "write final policy params here");

  // ablate
  auto* ablate = app.add_subcommand("ablate", "reward-component toggle comparison");
  CommonTrainOpts ablate_opts;
  ablate_opts.attach(ablate);
  std::string ablate_format = "table", ablate_out;
  ablate->add_option("--format", ablate_format, "table|csv|json");
  ablate->add_option("--out", ablate_out, "output path (default stdout)");

  // sweep-g
  auto* sweep = app.add_subcommand("sweep-g", "group-size sweep with per-G seed medians");
  CommonTrainOpts sweep_opts;
  sweep_opts.attach(sweep);
  std::vector<std::size_t> sweep_sizes{2, 4, 6, 8};
  std::vector<std::uint64_t> sweep_seeds{0, 1, 2};
  std::string sweep_format = "table", sweep_out;
  sweep->add_option("--sizes", sweep_sizes, "group sizes to sweep")->delimiter(',');
  sweep->add_option("--seeds", sweep_seeds, "seeds for the per-G median")->delimiter(',');
  sweep->add_option("--format", sweep_format, "table|csv|json");
  sweep->add_option("--out", sweep_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(gen_kind, gen_count, gen_seed, gen_drift, gen_zig, gen_out);
    if (eval->parsed()) {
      return run_eval(eval_scenarios, eval_predictor, eval_policy, eval_format, eval_out,
                      eval_assert);
    }
    if (reward->parsed()) {
      return run_reward(reward_scenarios, reward_index, reward_file, reward_text,
                        reward_weights, reward_penalty, reward_out);
    }
    if (validate->parsed()) return run_validate(validate_file, validate_text, validate_out);
    if (train->parsed()) return run_train(train_opts, train_out, train_policy_out);
    if (ablate->parsed()) return run_ablate(ablate_opts, ablate_format, ablate_out);
    if (sweep->parsed()) {
      return run_sweep(sweep_opts, sweep_sizes, sweep_seeds, sweep_format, sweep_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const trajrl::DataError& e) {
    std::cerr << "data error";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << ": " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
