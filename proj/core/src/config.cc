// Copyright 2026 The leoho Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "leoho/config.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace leoho {
namespace {

using nlohmann::json;

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
  }
}

void RejectUnknown(const json& j, const json& reference,
                   const std::string& prefix) {
  if (!j.is_object()) {
    throw ConfigError(fmt::format("config '{}' must be an object",
                                  prefix.empty() ? "<root>" : prefix));
  }
  for (const auto& [key, value] : j.items()) {
    if (!reference.contains(key)) {
      throw ConfigError(fmt::format("unknown config key '{}{}'", prefix, key));
    }
    if (reference.at(key).is_object()) {
      RejectUnknown(value, reference.at(key), prefix + key + ".");
    }
  }
}

}  // namespace

std::string_view ToString(SolverKind kind) {
  switch (kind) {
    case SolverKind::kExact:
      return "exact";
    case SolverKind::kHeuristic:
      return "heuristic";
    case SolverKind::kBruteforce:
      return "bruteforce";
  }
  return "?";
}

SolverKind ParseSolverKind(std::string_view text) {
  if (text == "exact") return SolverKind::kExact;
  if (text == "heuristic") return SolverKind::kHeuristic;
  if (text == "bruteforce") return SolverKind::kBruteforce;
  throw ConfigError(fmt::format(
      "unknown solver '{}' (expected exact, heuristic or bruteforce)", text));
}

std::string_view ToString(Policy policy) {
  return policy == Policy::kOptimized ? "optimized" : "min_distance";
}

Policy ParsePolicy(std::string_view text) {
  if (text == "optimized") return Policy::kOptimized;
  if (text == "min_distance" || text == "min-distance") {
    return Policy::kMinDistance;
  }
  throw ConfigError(fmt::format(
      "unknown policy '{}' (expected optimized or min-distance)", text));
}

void ScenarioConfig::Validate() const {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw ConfigError(fmt::format("invalid config: {}", what));
  };
  require(n_users > 0, "n_users must be > 0");
  require(n_sats > 0, "n_sats must be > 0");
  require(n_beams > 0, "n_beams must be > 0");
  require(n_slots > 0, "n_slots must be > 0");
  require(std::fabs(center_lat_deg) <= 90.0, "|center_lat_deg| must be <= 90");
  require(std::isfinite(center_lon_deg), "center_lon_deg must be finite");
  require(radius_km >= 0.0, "radius_km must be >= 0");
  require(slot_seconds >= 0.0, "slot_seconds must be >= 0");
  require(carrier_ghz > 0.0, "carrier_ghz must be > 0");
  require(bandwidth_hz > 0.0, "bandwidth_hz must be > 0");
  require(n0_w_per_hz > 0.0, "n0_w_per_hz must be > 0");
  require(!std::isnan(k_factor_db), "k_factor_db must be a number");
  require(p_max_w > 0.0, "p_max_w must be > 0");
  require(elevation_threshold_deg >= -90.0 && elevation_threshold_deg <= 90.0,
          "elevation_threshold_deg must lie in [-90, 90]");
  require(a_zenith_db >= 0.0, "a_zenith_db must be >= 0");
  require(!rain_db || *rain_db >= 0.0, "rain_db must be >= 0");
  require(alpha >= 0.0, "alpha must be >= 0");
  require(rate_min_bps >= 0.0, "rate_min_bps must be >= 0");
  require(solver_timeout_s > 0.0, "solver_timeout_s must be > 0");
  if (tle_file.empty()) {
    require(walker.total_sats > 0 && walker.planes > 0,
            "walker sizes must be > 0");
    require(walker.total_sats % walker.planes == 0,
            "walker.total_sats must be divisible by walker.planes");
    require(walker.altitude_km > 0.0, "walker.altitude_km must be > 0");
  }
}

json ToJson(const ScenarioConfig& c) {
  json j;
  j["tle_file"] = c.tle_file;
  j["walker"] = {{"total_sats", c.walker.total_sats},
                 {"planes", c.walker.planes},
                 {"inclination_deg", c.walker.inclination_deg},
                 {"altitude_km", c.walker.altitude_km},
                 {"phasing", c.walker.phasing}};
  j["secular_j2"] = c.secular_j2;
  j["n_users"] = c.n_users;
  j["n_sats"] = c.n_sats;
  j["n_beams"] = c.n_beams;
  j["center_lat_deg"] = c.center_lat_deg;
  j["center_lon_deg"] = c.center_lon_deg;
  j["radius_km"] = c.radius_km;
  j["rerandomize_users"] = c.rerandomize_users;
  j["start_time"] = c.start_time.ToIso8601();
  j["n_slots"] = c.n_slots;
  j["slot_seconds"] = c.slot_seconds;
  j["carrier_ghz"] = c.carrier_ghz;
  j["bandwidth_hz"] = c.bandwidth_hz;
  j["n0_w_per_hz"] = c.n0_w_per_hz;
  j["k_factor_db"] = c.k_factor_db;
  j["p_max_w"] = c.p_max_w;
  j["budget_mode"] = std::string(ToString(c.budget_mode));
  j["elevation_threshold_deg"] = c.elevation_threshold_deg;
  j["a_zenith_db"] = c.a_zenith_db;
  j["iono_table"] = c.iono_table;
  j["rain_db"] = c.rain_db ? json(*c.rain_db) : json(nullptr);
  j["alpha"] = c.alpha;
  j["rate_min_bps"] = c.rate_min_bps;
  j["solver"] = std::string(ToString(c.solver));
  j["solver_timeout_s"] = c.solver_timeout_s;
  j["master_seed"] = c.master_seed;
  return j;
}

ScenarioConfig ConfigFromJson(const json& j) {
  ScenarioConfig c;
  RejectUnknown(j, ToJson(c), "");
  Read(j, "tle_file", c.tle_file);
  if (j.contains("walker")) {
    const json& w = j.at("walker");
    Read(w, "total_sats", c.walker.total_sats);
    Read(w, "planes", c.walker.planes);
    Read(w, "inclination_deg", c.walker.inclination_deg);
    Read(w, "altitude_km", c.walker.altitude_km);
    Read(w, "phasing", c.walker.phasing);
  }
  Read(j, "secular_j2", c.secular_j2);
  Read(j, "n_users", c.n_users);
  Read(j, "n_sats", c.n_sats);
  Read(j, "n_beams", c.n_beams);
  Read(j, "center_lat_deg", c.center_lat_deg);
  Read(j, "center_lon_deg", c.center_lon_deg);
  Read(j, "radius_km", c.radius_km);
  Read(j, "rerandomize_users", c.rerandomize_users);
  if (j.contains("start_time")) {
    std::string text;
    Read(j, "start_time", text);
    try {
      c.start_time = UtcTime::Parse(text);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("config key 'start_time': {}", e.what()));
    }
  }
  Read(j, "n_slots", c.n_slots);
  Read(j, "slot_seconds", c.slot_seconds);
  Read(j, "carrier_ghz", c.carrier_ghz);
  Read(j, "bandwidth_hz", c.bandwidth_hz);
  Read(j, "n0_w_per_hz", c.n0_w_per_hz);
  Read(j, "k_factor_db", c.k_factor_db);
  Read(j, "p_max_w", c.p_max_w);
  if (j.contains("budget_mode")) {
    std::string text;
    Read(j, "budget_mode", text);
    try {
      c.budget_mode = ParseBudgetMode(text);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("config key 'budget_mode': {}", e.what()));
    }
  }
  Read(j, "elevation_threshold_deg", c.elevation_threshold_deg);
  Read(j, "a_zenith_db", c.a_zenith_db);
  Read(j, "iono_table", c.iono_table);
  if (j.contains("rain_db")) {
    if (j.at("rain_db").is_null()) {
      c.rain_db.reset();
    } else {
      double v = 0.0;
      Read(j, "rain_db", v);
      c.rain_db = v;
    }
  }
  Read(j, "alpha", c.alpha);
  Read(j, "rate_min_bps", c.rate_min_bps);
  if (j.contains("solver")) {
    std::string text;
    Read(j, "solver", text);
    c.solver = ParseSolverKind(text);
  }
  Read(j, "solver_timeout_s", c.solver_timeout_s);
  Read(j, "master_seed", c.master_seed);
  c.Validate();
  return c;
}

ScenarioConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot read config '{}'", path));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config '{}': {}", path, e.what()));
  }
  return ConfigFromJson(j);
}

namespace {

void ApplyToJson(json& j, std::string_view assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError(
        fmt::format("override '{}' is not of the form key=value", assignment));
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));

  json* node = &j;
  std::string_view rest = key;
  while (true) {
    const size_t dot = rest.find('.');
    const std::string part(rest.substr(0, dot));
    if (!node->is_object() || !node->contains(part)) {
      throw ConfigError(fmt::format("unknown config key '{}'", key));
    }
    node = &(*node)[part];
    if (dot == std::string_view::npos) break;
    rest = rest.substr(dot + 1);
  }
  if (node->is_object()) {
    throw ConfigError(fmt::format("config key '{}' is not a value", key));
  }
  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded() || (node->is_string() && !value.is_string())) {
    value = text;
  }
  *node = std::move(value);
}

}  // namespace

void ApplyOverride(ScenarioConfig& config, std::string_view assignment) {
  const std::string_view one[] = {assignment};
  ApplyOverrides(config, one);
}

void ApplyOverrides(ScenarioConfig& config,
                    std::span<const std::string_view> assignments) {
  json j = ToJson(config);
  for (std::string_view a : assignments) ApplyToJson(j, a);
  config = ConfigFromJson(j);
}

}  // namespace leoho
