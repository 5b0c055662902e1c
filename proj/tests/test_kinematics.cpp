#include <cmath>
#include <numbers>

#include "doctest.h"
#include "trajrl/feasibility.hpp"
#include "trajrl/motion.hpp"
#include "trajrl/suspension.hpp"
#include "trajrl/synth.hpp"

using namespace trajrl;

namespace {

VehicleState make_anchor(Vec2 pos = {0, 0}, Vec2 vel = {0, 0}, double heading = 0.0) {
  VehicleState s;
  s.position = pos;
  s.velocity = vel;
  s.heading = heading;
  return s;
}

// Arc samples at constant speed: angle step = v*dt/R.
Trajectory arc_traj(double radius, double speed, double dt, std::size_t n) {
  Trajectory t;
  t.dt = dt;
  const double step = speed * dt / radius;
  for (std::size_t k = 1; k <= n; ++k) {
    const double a = step * double(k);
    t.waypoints.push_back({radius * std::sin(a), radius * (1.0 - std::cos(a))});
  }
  return t;
}

}  // namespace

TEST_CASE("min_turn_radius") {
  CHECK(min_turn_radius({2.7, 0.6, 0.8, 9.81, 2.5}) == doctest::Approx(4.782).epsilon(1e-3));
  CHECK(min_turn_radius({3.0, 0.5, 0.8, 9.81, 2.5}) == doctest::Approx(6.258).epsilon(1e-3));
  // sin -> 1 near pi/2, radius approaches the wheelbase.
  CHECK(min_turn_radius({2.7, std::numbers::pi / 2.0 - 1e-6, 0.8, 9.81, 2.5}) ==
        doctest::Approx(2.7).epsilon(1e-6));
  CHECK_THROWS_AS(min_turn_radius({2.7, 0.0, 0.8, 9.81, 2.5}), std::domain_error);
  CHECK_THROWS_AS(min_turn_radius({2.7, 2.0, 0.8, 9.81, 2.5}), std::domain_error);
}

TEST_CASE("min_turn_radius monotonicity") {
  double prev = min_turn_radius({2.7, 0.1, 0.8, 9.81, 2.5});
  for (double d = 0.2; d < 1.5; d += 0.1) {
    const double r = min_turn_radius({2.7, d, 0.8, 9.81, 2.5});
    CHECK(r < prev);  // decreasing in delta_max
    prev = r;
  }
  CHECK(min_turn_radius({3.5, 0.6, 0.8, 9.81, 2.5}) >
        min_turn_radius({2.7, 0.6, 0.8, 9.81, 2.5}));  // increasing in wheelbase
}

TEST_CASE("path_radii") {
  SUBCASE("collinear points flag straight everywhere") {
    Trajectory t;
    for (int k = 1; k <= 5; ++k) t.waypoints.push_back({double(k), 2.0 * double(k)});
    const auto radii = path_radii(t, make_anchor());
    REQUIRE(radii.size() == 4);
    for (const auto& r : radii) CHECK_FALSE(r.has_value());
  }
  SUBCASE("circle samples recover the radius") {
    const auto radii = path_radii(arc_traj(10.0, 5.0, 0.5, 6), make_anchor());
    REQUIRE(radii.size() == 5);
    for (const auto& r : radii) {
      REQUIRE(r.has_value());
      CHECK(*r == doctest::Approx(10.0).epsilon(1e-6));
    }
  }
  SUBCASE("right-angle triple") {
    Trajectory t;
    t.waypoints = {{1, 0}, {1, 1}};
    const auto radii = path_radii(t, make_anchor());
    REQUIRE(radii.size() == 1);
    CHECK(*radii[0] == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-9));
  }
  SUBCASE("too few points") {
    Trajectory t;
    t.waypoints = {{1, 0}};
    CHECK_THROWS_AS(path_radii(t, make_anchor()), std::invalid_argument);
  }
}

TEST_CASE("lateral_accel_check") {
  const VehicleSpec spec;  // mu 0.8, g 9.81 -> bound 7.848

  SUBCASE("20 m/s on a 50 m circle exceeds the friction bound") {
    // Chord speeds undershoot v by O(dt^2), so a_c sits just below 8.0.
    const auto r = lateral_accel_check(arc_traj(50.0, 20.0, 0.5, 6), make_anchor({0, 0}, {20, 0}), spec);
    CHECK(r.bound == doctest::Approx(7.848).epsilon(1e-12));
    CHECK(r.max_accel == doctest::Approx(8.0).epsilon(5e-3));
    CHECK_FALSE(r.ok);
  }
  SUBCASE("10 m/s on the same circle is fine") {
    const auto r = lateral_accel_check(arc_traj(50.0, 10.0, 0.5, 6), make_anchor({0, 0}, {10, 0}), spec);
    CHECK(r.max_accel == doctest::Approx(2.0).epsilon(5e-3));
    CHECK(r.ok);
  }
  SUBCASE("straight path has zero lateral acceleration") {
    Trajectory t;
    for (int k = 1; k <= 6; ++k) t.waypoints.push_back({double(k) * 10.0, 0.0});
    const auto r = lateral_accel_check(t, make_anchor({0, 0}, {20, 0}), spec);
    CHECK(r.max_accel == 0.0);
    CHECK(r.ok);
  }
}

TEST_CASE("jerk_profile") {
  SUBCASE("hand second difference") {
    // Speeds {0, 0, 1} at dt = 0.5: accels {0, 2}, jerk {4}.
    Trajectory t;
    t.waypoints = {{0, 0}, {0.5, 0}};
    const auto jerks = jerk_profile(t, make_anchor({0, 0}, {0, 0}));
    REQUIRE(jerks.size() == 1);
    CHECK(jerks[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(jerks[0]) > VehicleSpec{}.jerk_limit);
  }
  SUBCASE("constant acceleration rollout has zero jerk") {
    History h;
    VehicleState s;
    s.velocity = {3, 0};
    s.acceleration = {1.0, 0};
    h.states.push_back(s);
    const auto traj = rollout_constant_accel(h, 6, 0.5);
    for (double j : jerk_profile(traj, s)) {
      CHECK(j == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
  SUBCASE("too few points") {
    Trajectory t;
    t.waypoints = {{1, 0}};
    CHECK_THROWS_AS(jerk_profile(t, make_anchor()), std::invalid_argument);
  }
}

TEST_CASE("jerk_profile converges to the analytic third derivative at O(dt^2)") {
  // Quintic speed profile v(t) and its position integral s(t).
  const auto v = [](double t) {
    return 4.0 + 0.8 * t + 0.3 * t * t + 0.08 * t * t * t + 0.01 * t * t * t * t +
           0.002 * t * t * t * t * t;
  };
  const auto s = [](double t) {
    return 4.0 * t + 0.4 * t * t + 0.1 * t * t * t + 0.02 * t * t * t * t +
           0.002 * t * t * t * t * t + (0.002 / 6.0) * t * t * t * t * t * t;
  };
  const auto vpp = [](double t) { return 0.6 + 0.48 * t + 0.12 * t * t + 0.04 * t * t * t; };

  const auto vp = [](double t) {
    return 0.8 + 0.6 * t + 0.24 * t * t + 0.04 * t * t * t + 0.01 * t * t * t * t;
  };

  const auto max_err = [&](double dt) {
    Trajectory t;
    t.dt = dt;
    const std::size_t n = 12;
    for (std::size_t k = 1; k <= n; ++k) t.waypoints.push_back({s(dt * double(k)), 0.0});
    VehicleState anchor = make_anchor({0, 0}, {v(0.0), 0});
    anchor.acceleration = {vp(0.0), 0.0};
    const auto jerks = jerk_profile(t, anchor);
    double worst = 0.0;
    // j_0 leans on the anchor's half-step speed estimate, which is exact for
    // linear speed but one-sided here; every later sample is pure chords.
    for (std::size_t k = 1; k < jerks.size(); ++k) {
      const double tk = dt * (double(k) + 0.5);  // jerk sample sits mid-interval
      worst = std::max(worst, std::abs(jerks[k] - vpp(tk)));
    }
    return worst;
  };

  const double coarse = max_err(0.5);
  const double fine = max_err(0.25);
  CHECK(coarse < 0.1);             // small at the working step
  CHECK(fine < coarse / 3.0);      // ~4x shrink per halving for O(dt^2)
}

TEST_CASE("check_feasible") {
  const VehicleSpec spec;  // L 2.7, delta_max 0.6 -> R_min 4.782

  SUBCASE("synth straight is feasible") {
    const auto s = synth_scenario(1, ScenarioKind::straight, spec);
    CHECK(check_feasible(s.ground_truth, s.history.last(), spec).overall);
  }
  SUBCASE("4 m circle violates the minimum turning radius") {
    const auto traj = arc_traj(4.0, 3.0, 0.5, 6);
    const auto report = check_feasible(traj, make_anchor({0, 0}, {3, 0}), spec);
    CHECK_FALSE(report.min_radius_ok);
    CHECK_FALSE(report.overall);
    REQUIRE(report.worst_radius.has_value());
    CHECK(*report.worst_radius == doctest::Approx(4.0).epsilon(1e-6));
  }
  SUBCASE("gentle 100 m turn at 8 m/s is fine on every check") {
    const auto traj = arc_traj(100.0, 8.0, 0.5, 6);
    const auto report = check_feasible(traj, make_anchor({0, 0}, {8, 0}), spec);
    CHECK(report.min_radius_ok);
    CHECK(report.lateral_accel_ok);
    CHECK(report.jerk_ok);
    CHECK(report.overall);
  }
  SUBCASE("loosening any bound never flips ok to not-ok") {
    const auto traj = arc_traj(8.0, 6.0, 0.5, 6);
    const auto base = check_feasible(traj, make_anchor({0, 0}, {6, 0}), spec);
    VehicleSpec loose = spec;
    loose.delta_max = 1.2;
    loose.mu = 1.2;
    loose.jerk_limit = 10.0;
    const auto relaxed = check_feasible(traj, make_anchor({0, 0}, {6, 0}), loose);
    if (base.overall) CHECK(relaxed.overall);
    CHECK(relaxed.min_radius_bound < base.min_radius_bound);
  }
}

TEST_CASE("suspension_response basics") {
  const SuspensionParams params{1.0, 10.0, 100.0};  // omega_n = 10

  SUBCASE("zero forcing from rest stays at rest") {
    const std::vector<double> forcing(100, 0.0);
    for (double x : suspension_response(params, forcing, 0.01, 0.0, 0.0)) {
      CHECK(x == 0.0);
    }
  }
  SUBCASE("step force settles at the static deflection F/k") {
    const std::vector<double> forcing(1001, 100.0);  // 10 s at dt = 0.01
    const auto x = suspension_response(params, forcing, 0.01, 0.0, 0.0);
    CHECK(x.size() == forcing.size());
    CHECK(x.back() == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("unstable dt is rejected with the bound in the message") {
    const std::vector<double> forcing(10, 0.0);
    CHECK_THROWS_WITH_AS(suspension_response(params, forcing, 0.25, 0.0, 0.0),
                         doctest::Contains("2/omega_n"), std::invalid_argument);
  }
}

TEST_CASE("suspension_response matches the damped-oscillator closed form") {
  const SuspensionParams params{1.0, 2.0, 100.0};  // zeta = 0.1, underdamped
  const double x0 = 0.1, v0 = 0.0, dt = 1e-3;
  const std::size_t steps = 2001;  // 2 s
  const std::vector<double> forcing(steps, 0.0);
  const auto x = suspension_response(params, forcing, dt, x0, v0);

  const double omega = params.natural_freq();
  const double zeta = params.damping / (2.0 * std::sqrt(params.stiffness * params.mass));
  const double omega_d = omega * std::sqrt(1.0 - zeta * zeta);
  double worst = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = dt * double(i);
    const double analytic = std::exp(-zeta * omega * t) *
                            (x0 * std::cos(omega_d * t) +
                             (v0 + zeta * omega * x0) / omega_d * std::sin(omega_d * t));
    worst = std::max(worst, std::abs(x[i] - analytic));
  }
  CHECK(worst <= 1e-4);
}

TEST_CASE("suspension free response dissipates energy monotonically") {
  const SuspensionParams params{2.0, 3.0, 50.0};
  const double dt = 1e-3;
  const std::vector<double> forcing(3000, 0.0);
  const auto x = suspension_response(params, forcing, dt, 0.2, -0.5);

  // Reconstruct velocity by central differences to estimate the energy.
  double prev_energy = 1e9;
  for (std::size_t i = 1; i + 1 < x.size(); i += 10) {
    const double v = (x[i + 1] - x[i - 1]) / (2.0 * dt);
    const double energy = 0.5 * params.mass * v * v + 0.5 * params.stiffness * x[i] * x[i];
    CHECK(energy <= prev_energy + 1e-9);
    prev_energy = energy;
  }
}
