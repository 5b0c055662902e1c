#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "trajrl/eval.hpp"
#include "trajrl/experiments.hpp"
#include "trajrl/report.hpp"
#include "trajrl/scenario_io.hpp"
#include "trajrl/synth.hpp"

using namespace trajrl;

namespace {

Trajectory offset_by(const Trajectory& gt, Vec2 delta) {
  Trajectory t = gt;
  for (auto& w : t.waypoints) w += delta;
  return t;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const char* name) {
    path = std::filesystem::temp_directory_path() / name;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("l2_at_horizons") {
  const auto s = synth_scenario(2, ScenarioKind::straight, {});

  SUBCASE("identical trajectories score zero") {
    const auto row = l2_at_horizons(s.ground_truth, s.ground_truth);
    CHECK(row.l2_1s == 0.0);
    CHECK(row.l2_2s == 0.0);
    CHECK(row.l2_3s == 0.0);
    CHECK(row.l2_avg == 0.0);
  }
  SUBCASE("constant offset (0.3, 0.4) is 0.5 at every horizon") {
    const auto row = l2_at_horizons(offset_by(s.ground_truth, {0.3, 0.4}), s.ground_truth);
    CHECK(row.l2_1s == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(row.l2_2s == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(row.l2_3s == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(row.l2_avg == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("the average is the mean of the three horizons") {
    CHECK((0.13 + 0.19 + 0.25) / 3.0 == doctest::Approx(0.19).epsilon(1e-12));

    Trajectory pred = s.ground_truth;
    pred.waypoints[1] += {0.13, 0.0};
    pred.waypoints[3] += {0.19, 0.0};
    pred.waypoints[5] += {0.25, 0.0};
    const auto row = l2_at_horizons(pred, s.ground_truth);
    CHECK(row.l2_avg == doctest::Approx((row.l2_1s + row.l2_2s + row.l2_3s) / 3.0).epsilon(1e-12));
    CHECK(row.l2_avg == doctest::Approx(0.19).epsilon(1e-9));
  }
  SUBCASE("wrong shapes are rejected") {
    Trajectory short_traj = s.ground_truth;
    short_traj.waypoints.pop_back();
    CHECK_THROWS_AS(l2_at_horizons(short_traj, s.ground_truth), std::invalid_argument);
    Trajectory wrong_dt = s.ground_truth;
    wrong_dt.dt = 0.25;
    CHECK_THROWS_AS(l2_at_horizons(wrong_dt, s.ground_truth), std::invalid_argument);
  }
}

TEST_CASE("evaluate_corpus") {
  std::vector<Scenario> straights;
  for (std::uint64_t i = 0; i < 20; ++i) {
    straights.push_back(synth_scenario(i, ScenarioKind::straight, {}));
  }

  SUBCASE("ground-truth echo scores zero") {
    const auto eval =
        evaluate_corpus(straights, [](const Scenario& s) { return s.ground_truth; });
    CHECK(eval.aggregate.l2_avg == 0.0);
    CHECK(eval.per_scenario.size() == straights.size());
    CHECK(eval.skipped.empty());
  }
  SUBCASE("physics baseline is exact on constant-acceleration scenarios") {
    for (const auto kind : {ScenarioKind::straight, ScenarioKind::accel, ScenarioKind::brake}) {
      std::vector<Scenario> corpus;
      for (std::uint64_t i = 0; i < 10; ++i) corpus.push_back(synth_scenario(i, kind, {}));
      const auto eval = evaluate_corpus(corpus, baseline_predictor);
      CHECK(eval.aggregate.l2_avg == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
  SUBCASE("physics baseline misses constant turns, growing with horizon") {
    std::vector<Scenario> turns;
    for (std::uint64_t i = 0; i < 10; ++i) {
      turns.push_back(synth_scenario(i, ScenarioKind::constant_turn, {}));
    }
    const auto eval = evaluate_corpus(turns, baseline_predictor);
    CHECK(eval.aggregate.l2_1s > 0.0);
    CHECK(eval.aggregate.l2_2s > eval.aggregate.l2_1s);
    CHECK(eval.aggregate.l2_3s > eval.aggregate.l2_2s);
  }
  SUBCASE("aggregate is permutation-invariant") {
    std::vector<Scenario> shuffled = straights;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto a = evaluate_corpus(straights, baseline_predictor);
    const auto b = evaluate_corpus(shuffled, baseline_predictor);
    CHECK(a.aggregate.l2_avg == doctest::Approx(b.aggregate.l2_avg).epsilon(1e-12));
    CHECK(a.aggregate.l2_3s == doctest::Approx(b.aggregate.l2_3s).epsilon(1e-12));
  }
  SUBCASE("predictor failures are recorded as skipped rows") {
    const auto eval = evaluate_corpus(straights, [](const Scenario& s) -> Trajectory {
      if (s.id == "straight-3") throw std::runtime_error("no prediction");
      return s.ground_truth;
    });
    REQUIRE(eval.skipped.size() == 1);
    CHECK(eval.skipped[0].id == "straight-3");
    CHECK(eval.skipped[0].reason == "no prediction");
    CHECK(eval.per_scenario.size() == straights.size() - 1);
  }
}

TEST_CASE("scenario file round trip") {
  TempFile file("trajrl_test_scenarios.jsonl");

  std::vector<Scenario> corpus;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto kind = static_cast<ScenarioKind>(i % 4);
    corpus.push_back(synth_scenario(i, kind, {}));
  }
  save_scenarios(file.path.string(), corpus);
  const auto loaded = load_scenarios(file.path.string());

  REQUIRE(loaded.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(loaded[i].id == corpus[i].id);
    REQUIRE(loaded[i].history.states.size() == corpus[i].history.states.size());
    for (std::size_t k = 0; k < corpus[i].history.states.size(); ++k) {
      const auto& a = corpus[i].history.states[k];
      const auto& b = loaded[i].history.states[k];
      CHECK(std::abs(a.t - b.t) <= 1e-12);
      CHECK(std::abs(a.position.x - b.position.x) <= 1e-12);
      CHECK(std::abs(a.velocity.y - b.velocity.y) <= 1e-12);
      CHECK(std::abs(a.heading - b.heading) <= 1e-12);
      CHECK(std::abs(a.steering - b.steering) <= 1e-12);
    }
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(std::abs(loaded[i].ground_truth.waypoints[k].x -
                     corpus[i].ground_truth.waypoints[k].x) <= 1e-12);
      CHECK(std::abs(loaded[i].ground_truth.waypoints[k].y -
                     corpus[i].ground_truth.waypoints[k].y) <= 1e-12);
    }
    CHECK(loaded[i].spec.wheelbase_l == corpus[i].spec.wheelbase_l);
  }
}

TEST_CASE("scenario file error handling") {
  TempFile file("trajrl_test_bad.jsonl");

  SUBCASE("empty file loads as an empty corpus") {
    std::ofstream(file.path).close();
    CHECK(load_scenarios(file.path.string()).empty());
  }
  SUBCASE("missing ground_truth names the line and field") {
    std::ofstream rewrite(file.path);
    rewrite << R"({"schema":"trajrl.scenarios.v1","dt":0.5})" << "\n";
    rewrite << R"({"id":"x","spec":{"wheelbase_l":2.7,"delta_max":0.6,"mu":0.8,"g":9.81,"jerk_limit":2.5},)"
            << R"("history":[{"t":-0.5,"position":[0,0],"velocity":[1,0],"acceleration":[0,0],"heading":0,"steering":0},)"
            << R"({"t":0,"position":[0.5,0],"velocity":[1,0],"acceleration":[0,0],"heading":0,"steering":0}]})"
            << "\n";
    rewrite.close();
    try {
      load_scenarios(file.path.string());
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(e.line() == 2);
      CHECK(e.field() == "ground_truth");
    }
  }
  SUBCASE("wrong schema is rejected") {
    std::ofstream out(file.path);
    out << R"({"schema":"other.v9","dt":0.5})" << "\n";
    out.close();
    CHECK_THROWS_AS(load_scenarios(file.path.string()), DataError);
  }
  SUBCASE("missing file is an IO error") {
    CHECK_THROWS_AS(load_scenarios("/nonexistent/path.jsonl"), DataError);
  }
}

TEST_CASE("ground-truth perturbations leave the history untouched") {
  const auto base = synth_scenario(4, ScenarioKind::straight, {});

  const auto drifted = with_lateral_drift(base, 0.5);
  CHECK(drifted.history.states.back().position.y == base.history.states.back().position.y);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(drifted.ground_truth.waypoints[k].y - base.ground_truth.waypoints[k].y ==
          doctest::Approx(0.5 * 0.5 * double(k + 1)).epsilon(1e-12));
  }

  const auto zigged = with_lateral_zigzag(base, 0.2);
  CHECK(zigged.history.states.back().position.y == base.history.states.back().position.y);
  for (std::size_t k = 0; k < 6; ++k) {
    const double expected = k % 2 == 0 ? 0.2 : -0.2;
    CHECK(zigged.ground_truth.waypoints[k].y - base.ground_truth.waypoints[k].y ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("report rendering is deterministic and format-complete") {
  std::vector<Scenario> corpus;
  for (std::uint64_t i = 0; i < 5; ++i) {
    corpus.push_back(synth_scenario(i, ScenarioKind::constant_turn, {}));
  }
  const auto eval = evaluate_corpus(corpus, baseline_predictor);
  for (auto format : {ReportFormat::table, ReportFormat::csv, ReportFormat::json}) {
    const auto a = render_corpus_eval(eval, format);
    const auto b = render_corpus_eval(eval, format);
    CHECK(a == b);
    CHECK_FALSE(a.empty());
  }
  CHECK_THROWS_AS(report_format_from_string("yaml"), std::invalid_argument);
}
