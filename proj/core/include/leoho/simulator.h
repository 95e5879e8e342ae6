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


// Episode and Monte Carlo driver.
//
// An episode places the users, selects the satellite subset (the n_sats with
// the highest elevation at the user center at start_time), sets the initial
// association by minimum distance at start_time with zero rates, then for
// slots t = 1..T at start_time + (t - 1) slot_seconds: propagates, computes
// geometry and visibility, draws one channel per (user, sat, beam), solves
// the slot (or applies the baseline) and records handovers against the
// previous slot.
//
// Randomness. The channel stream of an episode is keyed by its seed; the
// user placement stream is keyed by master_seed, or by the episode seed when
// rerandomize_users is set. Channels are drawn for every link in (u, s, b)
// order whether visible or not, so both policies see identical channels for
// a given seed.

#ifndef LEOHO_SIMULATOR_H_
#define LEOHO_SIMULATOR_H_

#include <cstdint>
#include <string>
#include <vector>

#include "leoho/channel.h"
#include "leoho/config.h"
#include "leoho/geometry.h"
#include "leoho/orbit.h"
#include "leoho/policies.h"
#include "leoho/random.h"
#include "leoho/slot_problem.h"

namespace leoho {

// Uniform placement on a disc of `radius_km` around the center: range
// R sqrt(u1) and bearing 2 pi u2, mapped onto the WGS-84 surface through the
// local radii of curvature. Altitude 0.
std::vector<GroundUser> PlaceUsers(double center_lat_deg,
                                   double center_lon_deg, double radius_km,
                                   int n, RandomStream& rng);

// Everything about a scenario that does not depend on the channel draws.
struct Scenario {
  ScenarioConfig config;
  std::vector<KeplerianElements> satellites;  // the selected subset
  std::vector<int> source_index;  // position of each in the full constellation
  std::vector<GroundUser> users;
  LinkBudget budget;

  UtcTime SlotTime(int t) const {
    return config.start_time + (t - 1) * config.slot_seconds;
  }
};

// Throws ConfigError for bad configs (including too few satellites) and
// std::runtime_error for unreadable TLE or loss-table files.
Scenario PrepareScenario(const ScenarioConfig& config,
                         std::uint64_t placement_seed);

// users x sats geometry at `time`, with visibility set from the threshold.
std::vector<LinkGeometry> ComputeGeometry(const Scenario& scenario,
                                          UtcTime time);

struct RunMetrics {
  Policy policy = Policy::kOptimized;
  std::uint64_t seed = 0;
  Association initial;                // I^0
  std::vector<double> slot_total_rate;  // [bit/s], per slot
  std::vector<double> slot_objective;
  std::vector<double> user_mean_rate;   // [bit/s], per user
  HandoverLedger ledger{0};
  double efc = 0.0;
  std::vector<int> non_optimal_slots;  // 1-based slots not proven optimal
  std::vector<int> timed_out_slots;
  // (slot, violation) pairs.
  std::vector<std::pair<int, Violation>> violations;
  // Filled only when requested.
  std::vector<SlotProblem> problems;
  std::vector<SlotSolution> solutions;
};

struct EpisodeOptions {
  bool keep_slots = false;
};

RunMetrics RunEpisode(const Scenario& scenario, Policy policy,
                      std::uint64_t seed, const EpisodeOptions& options = {});
// Prepares the scenario for `seed` and runs it.
RunMetrics RunEpisode(const ScenarioConfig& config, Policy policy,
                      std::uint64_t seed, const EpisodeOptions& options = {});

// Solves one slot with the configured solver.
SlotSolution SolveSlot(const SlotProblem& problem, const ScenarioConfig& config);

struct AggregateStats {
  int episodes = 0;
  double mean_user_rate_bps = 0.0;
  double std_bps = 0.0;  // unbiased, over (users x replicates)
  double mean_handovers = 0.0;  // total handovers per episode
  double mean_efc = 0.0;
  long non_optimal_slots = 0;
};

AggregateStats Aggregate(const std::vector<RunMetrics>& runs);

// Replicate r runs with seed DeriveSeed(master_seed, r). Replicates are
// spread over `jobs` threads; results are ordered by replicate.
std::vector<RunMetrics> RunReplicates(const ScenarioConfig& config,
                                      Policy policy, int n_runs, int jobs = 1);

struct MonteCarloResult {
  AggregateStats optimized;
  AggregateStats baseline;
  // (optimized - baseline) / baseline on the mean user rate.
  double relative_improvement = 0.0;
};

// Throws std::invalid_argument when n_runs < 1.
MonteCarloResult MonteCarlo(const ScenarioConfig& config, int n_runs,
                            int jobs = 1);

}  // namespace leoho

#endif  // LEOHO_SIMULATOR_H_
