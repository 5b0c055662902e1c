#pragma once

#include <cstdint>
#include <string>

#include "trajrl/types.hpp"

namespace trajrl {

enum class ScenarioKind { straight, constant_turn, accel, brake };

const char* to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

/// Deterministic synthetic scenario: 4 history states at 0.5 s spacing
/// ending at the ego-frame origin, plus a 6-waypoint ground truth produced
/// by the exact closed form of the named maneuver. Pure in (seed, kind, spec);
/// every ground truth is feasible under the given spec.
Scenario synth_scenario(std::uint64_t seed, ScenarioKind kind, const VehicleSpec& spec = {});

}  // namespace trajrl
