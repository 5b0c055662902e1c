#include "trajrl/suspension.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace trajrl {

double SuspensionParams::natural_freq() const { return std::sqrt(stiffness / mass); }

std::vector<double> suspension_response(const SuspensionParams& params,
                                        std::span<const double> forcing, double dt,
                                        double x0, double v0) {
  if (!(params.mass > 0.0 && params.damping > 0.0 && params.stiffness > 0.0)) {
    throw std::invalid_argument("suspension_response: parameters must be positive");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("suspension_response: dt must be positive");
  }
  const double omega_n = params.natural_freq();
  const double dt_max = 2.0 / omega_n;
  if (dt >= dt_max) {
    throw std::invalid_argument("suspension_response: dt " + std::to_string(dt) +
                                " violates the stability bound dt < 2/omega_n = " +
                                std::to_string(dt_max));
  }
  if (forcing.empty()) return {};

  const double inv_m = 1.0 / params.mass;
  const auto accel = [&](double x, double v, double f) {
    return (f - params.damping * v - params.stiffness * x) * inv_m;
  };
  // F between samples, linear; held flat past the last sample.
  const auto force_at = [&](std::size_t i, double frac) {
    if (i + 1 >= forcing.size()) return forcing.back();
    return forcing[i] + frac * (forcing[i + 1] - forcing[i]);
  };

  std::vector<double> displacement;
  displacement.reserve(forcing.size());
  double x = x0;
  double v = v0;
  displacement.push_back(x);

  for (std::size_t i = 0; i + 1 < forcing.size(); ++i) {
    const double f0 = force_at(i, 0.0);
    const double fh = force_at(i, 0.5);
    const double f1 = force_at(i, 1.0);

    const double k1x = v;
    const double k1v = accel(x, v, f0);
    const double k2x = v + 0.5 * dt * k1v;
    const double k2v = accel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v, fh);
    const double k3x = v + 0.5 * dt * k2v;
    const double k3v = accel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v, fh);
    const double k4x = v + dt * k3v;
    const double k4v = accel(x + dt * k3x, v + dt * k3v, f1);

    x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    displacement.push_back(x);
  }
  return displacement;
}

}  // namespace trajrl
