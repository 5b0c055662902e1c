#include <cmath>

#include "doctest.h"
#include "trajrl/grpo.hpp"
#include "trajrl/synth.hpp"

using namespace trajrl;

namespace {

constexpr double kHalfLog2Pi = 0.5 * 1.8378770664093455;

Scenario test_scenario(std::uint64_t seed = 3) {
  return synth_scenario(seed, ScenarioKind::constant_turn, {});
}

PolicyParams random_params(Rng& rng, const Scenario& scenario) {
  PolicyParams p = PolicyParams::init(scenario_features(scenario).size(),
                                      scenario.ground_truth.waypoints.size(), -0.5);
  for (double& w : p.weight) w = 0.05 * rng.normal();
  for (double& b : p.bias) b = 0.2 * rng.normal();
  for (double& s : p.log_std) s = rng.uniform(-1.5, -0.3);
  return p;
}

GroupSample sampled_group(const PolicyParams& params, const Scenario& scenario,
                          const GrpoConfig& config, std::size_t iteration = 0) {
  GrpoConfig frozen = config;
  frozen.learning_rate = 0.0;
  return train_step(params, params, scenario, frozen, iteration).group;
}

}  // namespace

TEST_CASE("advantages hand values and degenerate rule") {
  const double rewards[] = {1.0, 2.0, 3.0};
  const auto a = advantages(rewards, 1e-8);
  CHECK(a[0] == doctest::Approx(-1.22474).epsilon(1e-5));
  CHECK(a[1] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(a[2] == doctest::Approx(1.22474).epsilon(1e-5));

  const double flat[] = {4.0, 4.0, 4.0, 4.0};
  for (double v : advantages(flat, 1e-8)) CHECK(v == 0.0);

  const double lone[] = {1.0};
  CHECK_THROWS_AS(advantages(lone, 1e-8), std::invalid_argument);
}

TEST_CASE("advantages are invariant under positive affine reward maps") {
  Rng rng(21);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> rewards;
    const std::size_t g = 2 + std::size_t(rng.uniform() * 7.0);
    for (std::size_t i = 0; i < g; ++i) rewards.push_back(rng.uniform(-5, 5));
    const double scale = rng.uniform(0.1, 10.0);
    const double shift = rng.uniform(-100, 100);
    std::vector<double> mapped;
    for (double r : rewards) mapped.push_back(scale * r + shift);

    const auto a = advantages(rewards, 1e-8);
    const auto b = advantages(mapped, 1e-8);
    for (std::size_t i = 0; i < g; ++i) {
      CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("advantages standardization invariants") {
  Rng rng(22);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> rewards;
    const std::size_t g = 2 + std::size_t(rng.uniform() * 7.0);
    for (std::size_t i = 0; i < g; ++i) rewards.push_back(rng.uniform(-10, 10));
    const auto a = advantages(rewards, 1e-8);

    double sum = 0.0, sq = 0.0;
    std::size_t argmax_a = 0, argmax_r = 0;
    for (std::size_t i = 0; i < g; ++i) {
      sum += a[i];
      sq += a[i] * a[i];
      if (a[i] > a[argmax_a]) argmax_a = i;
      if (rewards[i] > rewards[argmax_r]) argmax_r = i;
    }
    CHECK(std::abs(sum) <= 1e-9 * double(g));
    CHECK(std::abs(std::sqrt(sq / double(g)) - 1.0) <= 1e-9);
    CHECK(argmax_a == argmax_r);
  }
}

TEST_CASE("kl_divergence closed-form cases") {
  const auto scenario = test_scenario();
  Rng rng(23);
  const PolicyParams p = random_params(rng, scenario);

  SUBCASE("identical policies have zero KL") {
    CHECK(kl_divergence(p, p, scenario) == 0.0);
  }
  SUBCASE("reference std twice the policy std on one coordinate") {
    PolicyParams ref = p;
    ref.log_std[4] = p.log_std[4] + std::log(2.0);
    CHECK(kl_divergence(p, ref, scenario) ==
          doctest::Approx(std::log(2.0) + 0.125 - 0.5).epsilon(1e-5));
  }
  SUBCASE("mean shift at equal std") {
    PolicyParams shifted = p;
    const double delta = 0.7;
    shifted.bias[2] += delta;
    const double sigma = std::exp(p.log_std[2]);
    CHECK(kl_divergence(shifted, p, scenario) ==
          doctest::Approx(delta * delta / (2.0 * sigma * sigma)).epsilon(1e-9));
  }
  SUBCASE("KL is nonnegative for random pairs") {
    for (int rep = 0; rep < 30; ++rep) {
      const PolicyParams a = random_params(rng, scenario);
      const PolicyParams b = random_params(rng, scenario);
      CHECK(kl_divergence(a, b, scenario) >= 0.0);
    }
  }
}

TEST_CASE("policy sampling") {
  const auto scenario = test_scenario();

  SUBCASE("near-deterministic at log_std = -10") {
    const PolicyParams p = PolicyParams::init(7, 6, -10.0);
    Rng rng(1);
    const auto sample = policy_sample(p, scenario, rng);
    const auto mean = policy_mean(p, scenario);
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(std::abs(sample.trajectory.waypoints[k].x - mean.waypoints[k].x) <= 1e-3);
      CHECK(std::abs(sample.trajectory.waypoints[k].y - mean.waypoints[k].y) <= 1e-3);
    }
  }
  SUBCASE("log-density at the mean") {
    Rng rng(2);
    const PolicyParams p = random_params(rng, scenario);
    double expected = 0.0;
    for (double s : p.log_std) expected += -s - kHalfLog2Pi;
    CHECK(policy_log_prob(p, scenario, policy_mean(p, scenario)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("same stream, same draw") {
    Rng rng(3);
    const PolicyParams p = random_params(rng, scenario);
    Rng a = Rng::stream(42, 7, 1);
    Rng b = Rng::stream(42, 7, 1);
    const auto s1 = policy_sample(p, scenario, a);
    const auto s2 = policy_sample(p, scenario, b);
    CHECK(s1.log_prob == s2.log_prob);
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(s1.trajectory.waypoints[k] == s2.trajectory.waypoints[k]);
    }
  }
}

TEST_CASE("surrogate identities") {
  const auto scenario = test_scenario();
  Rng rng(31);
  const PolicyParams params = random_params(rng, scenario);
  GrpoConfig config;
  config.seed = 11;
  const GroupSample group = sampled_group(params, scenario, config);

  SUBCASE("at theta = theta_old with beta = 0, J is the advantage mean") {
    CHECK(surrogate(params, params, group, scenario, 0.0) ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("theta = old = ref gives exactly zero for any beta") {
    CHECK(surrogate(params, params, group, scenario, 0.7) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("J is linear in beta with slope -KL") {
    const PolicyParams ref = random_params(rng, scenario);
    const double j1 = surrogate(params, ref, group, scenario, 0.5);
    const double j2 = surrogate(params, ref, group, scenario, 1.0);
    const double kl = kl_divergence(params, ref, scenario);
    CHECK(kl > 0.0);
    CHECK(j2 - j1 == doctest::Approx(-0.5 * kl).epsilon(1e-9));
  }
}

TEST_CASE("grad_surrogate matches central finite differences") {
  const auto scenario = test_scenario();
  Rng rng(41);
  GrpoConfig config;
  config.seed = 17;

  const double h = 1e-5;
  for (int point = 0; point < 5; ++point) {
    const PolicyParams old_params = random_params(rng, scenario);
    const PolicyParams ref = random_params(rng, scenario);
    PolicyParams params = random_params(rng, scenario);
    const double beta = rng.uniform(0.0, 0.1);
    const GroupSample group = sampled_group(old_params, scenario, config, std::size_t(point));

    const PolicyGrad grad = grad_surrogate(params, ref, group, scenario, beta);

    const auto fd = [&](double* slot) {
      const double saved = *slot;
      *slot = saved + h;
      const double hi = surrogate(params, ref, group, scenario, beta);
      *slot = saved - h;
      const double lo = surrogate(params, ref, group, scenario, beta);
      *slot = saved;
      return (hi - lo) / (2.0 * h);
    };

    double worst = 0.0;
    const auto check_slot = [&](double* slot, double analytic) {
      const double numeric = fd(slot);
      const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
      worst = std::max(worst, std::abs(analytic - numeric) / scale);
    };
    for (std::size_t i = 0; i < params.weight.size(); ++i) {
      check_slot(&params.weight[i], grad.weight[i]);
    }
    for (std::size_t c = 0; c < params.bias.size(); ++c) {
      check_slot(&params.bias[c], grad.bias[c]);
      check_slot(&params.log_std[c], grad.log_std[c]);
    }
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("grad_surrogate trivial cases") {
  const auto scenario = test_scenario();
  Rng rng(43);
  const PolicyParams params = random_params(rng, scenario);
  GrpoConfig config;

  SUBCASE("zero advantages and zero beta give a zero gradient") {
    GroupSample group = sampled_group(params, scenario, config);
    for (double& a : group.advantages) a = 0.0;
    const PolicyGrad grad = grad_surrogate(params, params, group, scenario, 0.0);
    CHECK(grad.norm() == 0.0);
  }
  SUBCASE("with zero advantages only the KL gradient remains") {
    GroupSample group = sampled_group(params, scenario, config);
    for (double& a : group.advantages) a = 0.0;
    const PolicyParams ref = random_params(rng, scenario);
    const double beta = 0.3;
    const PolicyGrad grad = grad_surrogate(params, ref, group, scenario, beta);

    // Closed-form KL gradient on log_std: -beta * (sigma_p^2/sigma_r^2 - 1).
    for (std::size_t c = 0; c < params.log_std.size(); ++c) {
      const double sp = std::exp(params.log_std[c]);
      const double sr = std::exp(ref.log_std[c]);
      CHECK(grad.log_std[c] ==
            doctest::Approx(-beta * (sp * sp / (sr * sr) - 1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("log_std stays inside its clamp range") {
  const auto wide = PolicyParams::init(7, 6, 5.0);
  for (double s : wide.log_std) CHECK(s == kLogStdMax);
  const auto narrow = PolicyParams::init(7, 6, -15.0);
  for (double s : narrow.log_std) CHECK(s == kLogStdMin);

  PolicyParams p = PolicyParams::init(7, 6, -1.0);
  for (double& s : p.log_std) s = -12.0;
  p.clamp_log_std();
  for (double s : p.log_std) CHECK(s >= kLogStdMin);
}

TEST_CASE("train_step") {
  const auto scenario = test_scenario();
  GrpoConfig config;
  config.seed = 5;

  const PolicyParams init = PolicyParams::init(7, 6, config.init_log_std);

  SUBCASE("zero learning rate leaves parameters unchanged") {
    GrpoConfig frozen = config;
    frozen.learning_rate = 0.0;
    const auto result = train_step(init, init, scenario, frozen, 0);
    CHECK(result.params.weight == init.weight);
    CHECK(result.params.bias == init.bias);
    CHECK(result.params.log_std == init.log_std);
  }
  SUBCASE("deterministic in (params, scenario, config, iteration)") {
    const auto a = train_step(init, init, scenario, config, 9);
    const auto b = train_step(init, init, scenario, config, 9);
    CHECK(a.params.weight == b.params.weight);
    CHECK(a.params.bias == b.params.bias);
    CHECK(a.params.log_std == b.params.log_std);
    CHECK(a.group.responses == b.group.responses);
    CHECK(a.diagnostics.mean_reward == b.diagnostics.mean_reward);
  }
  SUBCASE("group bookkeeping") {
    const auto result = train_step(init, init, scenario, config, 0);
    CHECK(result.group.responses.size() == config.group_size);
    CHECK(result.group.advantages.size() == config.group_size);
    for (const auto& b : result.group.breakdowns) {
      CHECK(b.parsed);
      CHECK(b.length_ok);
      CHECK(b.r_format == 1);
    }
    CHECK(result.diagnostics.grad_norm > 0.0);
  }
}

TEST_CASE("train_loop") {
  std::vector<Scenario> scenarios;
  for (std::uint64_t i = 0; i < 4; ++i) {
    scenarios.push_back(synth_scenario(i, ScenarioKind::straight, {}));
  }

  SUBCASE("zero iterations returns the initial policy") {
    GrpoConfig config;
    const auto result = train_loop(scenarios, config);
    const auto init = PolicyParams::init(7, 6, config.init_log_std);
    CHECK(result.params.weight == init.weight);
    CHECK(result.params.bias == init.bias);
    CHECK(result.history.empty());
  }
  SUBCASE("one diagnostics record per iteration, round-robin over scenarios") {
    GrpoConfig config;
    config.iterations = 9;
    const auto result = train_loop(scenarios, config);
    REQUIRE(result.history.size() == 9);
    for (std::size_t it = 0; it < 9; ++it) {
      CHECK(result.history[it].iteration == it);
      CHECK(result.history[it].scenario_id == scenarios[it % 4].id);
    }
  }
  SUBCASE("whole-loop determinism") {
    GrpoConfig config;
    config.iterations = 6;
    config.seed = 77;
    const auto a = train_loop(scenarios, config);
    const auto b = train_loop(scenarios, config);
    CHECK(a.params.weight == b.params.weight);
    CHECK(a.params.bias == b.params.bias);
    CHECK(a.params.log_std == b.params.log_std);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
      CHECK(a.history[i].mean_reward == b.history[i].mean_reward);
      CHECK(a.history[i].kl == b.history[i].kl);
    }
  }
  SUBCASE("empty scenario list is rejected") {
    CHECK_THROWS_AS(train_loop({}, GrpoConfig{}), std::invalid_argument);
  }
}
