#include "trajrl/scenario_io.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace trajrl {

namespace {

using nlohmann::json;

json vec_to_json(const Vec2& v) { return json::array({v.x, v.y}); }

Vec2 vec_from_json(const json& j, std::size_t line, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw DataError("expected [x, y] for field '" + field + "'", line, field);
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

double number_at(const json& j, const char* key, std::size_t line) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw DataError(std::string("missing or non-numeric field '") + key + "'", line, key);
  }
  return j[key].get<double>();
}

json state_to_json(const VehicleState& s) {
  return json{{"t", s.t},
              {"position", vec_to_json(s.position)},
              {"velocity", vec_to_json(s.velocity)},
              {"acceleration", vec_to_json(s.acceleration)},
              {"heading", s.heading},
              {"steering", s.steering}};
}

VehicleState state_from_json(const json& j, std::size_t line) {
  VehicleState s;
  s.t = number_at(j, "t", line);
  s.position = vec_from_json(j.value("position", json()), line, "position");
  s.velocity = vec_from_json(j.value("velocity", json()), line, "velocity");
  s.acceleration = vec_from_json(j.value("acceleration", json()), line, "acceleration");
  s.heading = number_at(j, "heading", line);
  s.steering = number_at(j, "steering", line);
  return s;
}

Scenario scenario_from_json(const json& j, double dt, std::size_t line) {
  Scenario s;
  if (!j.contains("id") || !j["id"].is_string()) {
    throw DataError("missing or non-string field 'id'", line, "id");
  }
  s.id = j["id"].get<std::string>();

  if (!j.contains("spec") || !j["spec"].is_object()) {
    throw DataError("missing field 'spec'", line, "spec");
  }
  const json& spec = j["spec"];
  s.spec.wheelbase_l = number_at(spec, "wheelbase_l", line);
  s.spec.delta_max = number_at(spec, "delta_max", line);
  s.spec.mu = number_at(spec, "mu", line);
  s.spec.g = number_at(spec, "g", line);
  s.spec.jerk_limit = number_at(spec, "jerk_limit", line);

  if (!j.contains("history") || !j["history"].is_array() || j["history"].size() < 2) {
    throw DataError("missing field 'history' (needs >= 2 states)", line, "history");
  }
  for (const json& state : j["history"]) {
    s.history.states.push_back(state_from_json(state, line));
  }
  try {
    s.history.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what(), line, "history");
  }
  if (std::abs(s.history.spacing() - dt) > 1e-9) {
    throw DataError("history spacing differs from the file dt", line, "history");
  }
  for (const auto& state : s.history.states) {
    if (std::abs(state.steering) > s.spec.delta_max) {
      throw DataError("steering exceeds the vehicle spec's delta_max", line, "steering");
    }
  }

  if (!j.contains("ground_truth") || !j["ground_truth"].is_array() ||
      j["ground_truth"].empty()) {
    throw DataError("missing field 'ground_truth'", line, "ground_truth");
  }
  s.ground_truth.dt = dt;
  for (const json& wp : j["ground_truth"]) {
    s.ground_truth.waypoints.push_back(vec_from_json(wp, line, "ground_truth"));
  }
  return s;
}

}  // namespace

void save_scenarios(const std::string& path, const std::vector<Scenario>& scenarios) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open scenario file for writing: " + path);

  const double dt = scenarios.empty() ? 0.5 : scenarios.front().ground_truth.dt;
  out << json{{"schema", kScenarioSchema}, {"dt", dt}}.dump() << "\n";
  for (const Scenario& s : scenarios) {
    json record{{"id", s.id},
                {"spec",
                 {{"wheelbase_l", s.spec.wheelbase_l},
                  {"delta_max", s.spec.delta_max},
                  {"mu", s.spec.mu},
                  {"g", s.spec.g},
                  {"jerk_limit", s.spec.jerk_limit}}},
                {"history", json::array()},
                {"ground_truth", json::array()}};
    for (const VehicleState& state : s.history.states) {
      record["history"].push_back(state_to_json(state));
    }
    for (const Vec2& wp : s.ground_truth.waypoints) {
      record["ground_truth"].push_back(vec_to_json(wp));
    }
    out << record.dump() << "\n";
  }
}

std::vector<Scenario> load_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open scenario file: " + path);

  std::string line;
  if (!std::getline(in, line)) {
    return {};  // empty file, empty corpus
  }

  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed header line: ") + e.what(), 1);
  }
  if (header.value("schema", "") != kScenarioSchema) {
    throw DataError("unsupported schema (expected " + std::string(kScenarioSchema) + ")", 1,
                    "schema");
  }
  const double dt = number_at(header, "dt", 1);
  if (!(dt > 0.0)) throw DataError("header dt must be positive", 1, "dt");

  std::vector<Scenario> scenarios;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(std::string("malformed record: ") + e.what(), line_no);
    }
    scenarios.push_back(scenario_from_json(record, dt, line_no));
  }
  return scenarios;
}

}  // namespace trajrl
