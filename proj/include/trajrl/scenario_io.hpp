#pragma once

#include <string>
#include <vector>

#include "trajrl/types.hpp"

namespace trajrl {

/// Scenario corpus file: UTF-8 JSON lines. Line 1 is the header
/// {"schema":"trajrl.scenarios.v1","dt":<seconds>}; every following line is
/// one self-describing scenario record. dt is uniform within a file. An
/// entirely empty file denotes an empty corpus.
inline constexpr const char* kScenarioSchema = "trajrl.scenarios.v1";

void save_scenarios(const std::string& path, const std::vector<Scenario>& scenarios);

/// Order-preserving load. Malformed lines raise DataError carrying the
/// 1-based line number and the offending field.
std::vector<Scenario> load_scenarios(const std::string& path);

}  // namespace trajrl
