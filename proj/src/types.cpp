#include "trajrl/types.hpp"

#include <cmath>

namespace trajrl {

namespace {
constexpr double kSpacingTol = 1e-9;
}

void History::validate() const {
  if (states.size() < 2) {
    throw std::invalid_argument("history needs at least 2 states");
  }
  const double dt = states[1].t - states[0].t;
  if (!(dt > 0.0)) {
    throw std::invalid_argument("history timestamps must be strictly increasing");
  }
  for (std::size_t i = 1; i < states.size(); ++i) {
    const double step = states[i].t - states[i - 1].t;
    if (std::abs(step - dt) > kSpacingTol) {
      throw std::invalid_argument("history spacing is not uniform");
    }
  }
  for (const auto& s : states) {
    if (std::abs(std::remainder(s.t, dt)) > kSpacingTol) {
      throw std::invalid_argument("history timestamps must sit on the dt grid");
    }
  }
  for (const auto& s : states) {
    if (!s.position.finite() || !s.velocity.finite() || !s.acceleration.finite() ||
        !std::isfinite(s.heading) || !std::isfinite(s.steering)) {
      throw std::invalid_argument("history state has non-finite components");
    }
  }
}

void VehicleSpec::validate() const {
  if (!(wheelbase_l > 0.0)) throw std::invalid_argument("wheelbase must be positive");
  if (!(delta_max > 0.0 && delta_max < M_PI / 2.0)) {
    throw std::invalid_argument("delta_max must be in (0, pi/2)");
  }
  if (!(mu > 0.0)) throw std::invalid_argument("friction coefficient must be positive");
  if (!(g > 0.0)) throw std::invalid_argument("g must be positive");
  if (!(jerk_limit > 0.0)) throw std::invalid_argument("jerk limit must be positive");
}

}  // namespace trajrl
