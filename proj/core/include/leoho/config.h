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


// Experiment description. Configs are JSON objects with flat keys plus a
// nested "walker" object; every key is optional and unknown keys are
// rejected. Overrides use dotted paths, e.g. `walker.planes=24`.

#ifndef LEOHO_CONFIG_H_
#define LEOHO_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "leoho/slot_problem.h"
#include "leoho/time.h"

namespace leoho {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SolverKind { kExact, kHeuristic, kBruteforce };
std::string_view ToString(SolverKind kind);
SolverKind ParseSolverKind(std::string_view text);

enum class Policy { kOptimized, kMinDistance };
std::string_view ToString(Policy policy);
// Accepts "optimized", "min_distance" and "min-distance".
Policy ParsePolicy(std::string_view text);

struct WalkerConfig {
  int total_sats = 1584;
  int planes = 72;
  double inclination_deg = 53.0;
  double altitude_km = 550.0;
  int phasing = 17;
};

struct ScenarioConfig {
  // Constellation: a TLE file when set, the Walker shell otherwise.
  std::string tle_file;
  WalkerConfig walker;
  bool secular_j2 = false;

  int n_users = 30;
  int n_sats = 30;
  int n_beams = 3;
  double center_lat_deg = 46.09;  // La Creuse, France
  double center_lon_deg = 2.02;
  double radius_km = 10.0;
  // Draw a fresh user placement for every replicate.
  bool rerandomize_users = false;

  UtcTime start_time = UtcTime::FromCalendar(2025, 1, 1);
  int n_slots = 20;
  double slot_seconds = 15.0;

  double carrier_ghz = 20.0;
  double bandwidth_hz = 200e6;
  double n0_w_per_hz = 1e-20;
  double k_factor_db = 10.0;
  double p_max_w = 1000.0;
  BudgetMode budget_mode = BudgetMode::kPerSatelliteTotal;
  double elevation_threshold_deg = 20.0;
  double a_zenith_db = 0.5;
  std::string iono_table;  // CSV path; empty selects the all-zero table
  std::optional<double> rain_db;

  double alpha = 0.5;
  double rate_min_bps = 0.1e6;
  SolverKind solver = SolverKind::kHeuristic;
  double solver_timeout_s = 30.0;
  std::uint64_t master_seed = 1;

  // Throws ConfigError.
  void Validate() const;
};

nlohmann::json ToJson(const ScenarioConfig& config);
// Throws ConfigError on unknown keys, wrong types or invalid values.
ScenarioConfig ConfigFromJson(const nlohmann::json& json);
// Throws std::runtime_error if the file cannot be read and ConfigError if it
// does not parse.
ScenarioConfig LoadConfig(const std::string& path);

// Applies `key=value` to `config`. The value is read as JSON when possible
// and as a bare string otherwise. Throws ConfigError for unknown keys.
void ApplyOverride(ScenarioConfig& config, std::string_view assignment);

// Applies several overrides in order and validates only the final result, so
// coupled keys (walker.total_sats and walker.planes) can change together.
void ApplyOverrides(ScenarioConfig& config,
                    std::span<const std::string_view> assignments);

}  // namespace leoho

#endif  // LEOHO_CONFIG_H_
