#pragma once

#include <span>
#include <vector>

namespace trajrl {

/// 1-DOF vertical quarter-car model m*x'' + c*x' + k*x = F(t).
struct SuspensionParams {
  double mass = 1.0;       // kg, sprung mass
  double damping = 1.0;    // N*s/m
  double stiffness = 1.0;  // N/m

  double natural_freq() const;  // omega_n = sqrt(k/m)
};

/// Integrates the suspension ODE with classic fixed-step RK4. forcing holds
/// F(t) sampled at dt (linearly interpolated at half steps); the output has
/// the same length, with x[0] = x0. Requires dt < 2/omega_n; anything larger
/// throws with the bound in the message.
std::vector<double> suspension_response(const SuspensionParams& params,
                                        std::span<const double> forcing, double dt,
                                        double x0, double v0);

}  // namespace trajrl
