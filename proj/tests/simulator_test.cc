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


#include "leoho/simulator.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "leoho/units.h"

namespace leoho {
namespace {

ScenarioConfig Small() {
  ScenarioConfig c;
  c.n_users = 10;
  c.n_sats = 6;
  c.n_beams = 2;
  c.n_slots = 5;
  c.solver = SolverKind::kExact;
  return c;
}

double ChordKm(const GroundUser& a, const GroundUser& b) {
  return (a.position_ecef - b.position_ecef).norm();
}

TEST(PlaceUsersTest, ZeroRadiusPutsEveryoneAtTheCenter) {
  RandomStream rng(1, "placement");
  for (const auto& u : PlaceUsers(46.09, 2.02, 0.0, 5, rng)) {
    EXPECT_DOUBLE_EQ(u.latitude_deg, 46.09);
    EXPECT_DOUBLE_EQ(u.longitude_deg, 2.02);
  }
}

TEST(PlaceUsersTest, UniformOverTheDisc) {
  RandomStream rng(2, "placement");
  const GroundUser center = GroundUser::At(-1, 46.09, 2.02);
  const auto users = PlaceUsers(46.09, 2.02, 10.0, 100000, rng);
  int inside = 0;
  for (size_t i = 0; i < users.size(); ++i) {
    EXPECT_EQ(users[i].user_id, static_cast<int>(i));
    // Chord and surface distance differ by under a millimetre at 10 km.
    const double d = ChordKm(users[i], center);
    EXPECT_LE(d, 10.0 + 1e-3);
    inside += d < 5.0;
  }
  EXPECT_NEAR(inside / 1e5, 0.25, 0.01);
}

TEST(PlaceUsersTest, RejectsNegativeRadius) {
  RandomStream rng(1, "placement");
  EXPECT_THROW(PlaceUsers(0.0, 0.0, -1.0, 3, rng), std::invalid_argument);
}

TEST(PrepareScenarioTest, SelectsTheHighestSatellitesAtTheCenter) {
  const ScenarioConfig c = Small();
  const Scenario sc = PrepareScenario(c, 1);
  ASSERT_EQ(sc.satellites.size(), 6u);
  const auto all = WalkerElements(c.walker.total_sats, c.walker.planes,
                                  c.walker.inclination_deg,
                                  c.walker.altitude_km, c.walker.phasing,
                                  c.start_time);
  const GroundUser center = GroundUser::At(-1, c.center_lat_deg,
                                           c.center_lon_deg);
  auto elevation = [&](int i) {
    return ElevationAndRange(
               center, Propagate(all[static_cast<size_t>(i)], c.start_time))
        .elevation_deg;
  };
  double lowest_selected = HUGE_VAL;
  for (int i : sc.source_index) {
    lowest_selected = std::min(lowest_selected, elevation(i));
  }
  for (int i = 0; i < static_cast<int>(all.size()); ++i) {
    if (std::find(sc.source_index.begin(), sc.source_index.end(), i) !=
        sc.source_index.end()) {
      continue;
    }
    EXPECT_LE(elevation(i), lowest_selected);
  }
  EXPECT_GT(lowest_selected, c.elevation_threshold_deg);
  EXPECT_EQ(sc.users.size(), 10u);
  EXPECT_EQ(sc.SlotTime(1), c.start_time);
  EXPECT_EQ(sc.SlotTime(3), c.start_time + 2 * c.slot_seconds);
}

TEST(PrepareScenarioTest, Errors) {
  ScenarioConfig c = Small();
  c.n_sats = 2000;
  EXPECT_THROW(PrepareScenario(c, 1), ConfigError);
  c = Small();
  c.tle_file = "/nonexistent/constellation.tle";
  EXPECT_THROW(PrepareScenario(c, 1), std::runtime_error);
  c = Small();
  c.iono_table = "/nonexistent/iono.csv";
  EXPECT_THROW(PrepareScenario(c, 1), std::runtime_error);
}

TEST(PrepareScenarioTest, LoadsTleConstellations) {
  ScenarioConfig c = Small();
  c.tle_file = LEOHO_TEST_DATA_DIR "/iss.tle";
  c.n_sats = 1;
  const Scenario sc = PrepareScenario(c, 1);
  ASSERT_EQ(sc.satellites.size(), 1u);
  EXPECT_NEAR(sc.satellites[0].inclination_rad, DegToRad(51.6416), 1e-12);
}

TEST(ComputeGeometryTest, VisibilityFollowsTheThreshold) {
  ScenarioConfig c = Small();
  const Scenario sc = PrepareScenario(c, 1);
  const auto g = ComputeGeometry(sc, c.start_time);
  ASSERT_EQ(g.size(), 60u);
  for (const auto& x : g) {
    EXPECT_EQ(x.visible, x.elevation_deg >= c.elevation_threshold_deg);
  }
  c.elevation_threshold_deg = 90.0;
  const auto none = ComputeGeometry(PrepareScenario(c, 1), c.start_time);
  EXPECT_TRUE(std::none_of(none.begin(), none.end(),
                           [](const LinkGeometry& x) { return x.visible; }));
}

TEST(RunEpisodeTest, SingleSlotRecordsOneTransition) {
  ScenarioConfig c = Small();
  c.n_slots = 1;
  const RunMetrics m = RunEpisode(c, Policy::kOptimized, 3);
  EXPECT_EQ(m.ledger.transitions(), 1);
  EXPECT_EQ(m.slot_total_rate.size(), 1u);
}

TEST(RunEpisodeTest, InitialAssociationIsMinimumDistanceAtStart) {
  const ScenarioConfig c = Small();
  const Scenario sc = PrepareScenario(c, c.master_seed);
  const auto g = ComputeGeometry(sc, c.start_time);
  Tensor3<std::uint8_t> vis({c.n_users, c.n_sats, c.n_beams}, 0);
  for (int u = 0; u < c.n_users; ++u) {
    for (int s = 0; s < c.n_sats; ++s) {
      for (int b = 0; b < c.n_beams; ++b) {
        vis(u, s, b) = g[static_cast<size_t>(u * c.n_sats + s)].visible;
      }
    }
  }
  EXPECT_EQ(RunEpisode(sc, Policy::kOptimized, 4).initial,
            MinDistanceAssociation(g, vis));
}

TEST(RunEpisodeTest, TotalsAndHandoversAreConsistent) {
  const ScenarioConfig c = Small();
  const RunMetrics m =
      RunEpisode(c, Policy::kOptimized, 5, {.keep_slots = true});
  ASSERT_EQ(m.solutions.size(), 5u);
  Association prev = m.initial;
  std::vector<double> sum(static_cast<size_t>(c.n_users), 0.0);
  for (int t = 0; t < 5; ++t) {
    const auto& sol = m.solutions[static_cast<size_t>(t)];
    double total = 0.0;
    for (int u = 0; u < c.n_users; ++u) {
      total += sol.rates[static_cast<size_t>(u)];
      sum[static_cast<size_t>(u)] += sol.rates[static_cast<size_t>(u)];
    }
    EXPECT_DOUBLE_EQ(m.slot_total_rate[static_cast<size_t>(t)], total);
    EXPECT_EQ(m.ledger.flags()[static_cast<size_t>(t)],
              HandoverEvents(sol.assoc, prev));
    EXPECT_EQ(m.problems[static_cast<size_t>(t)].prev_assoc, prev);
    prev = sol.assoc;
  }
  for (int u = 0; u < c.n_users; ++u) {
    EXPECT_DOUBLE_EQ(m.user_mean_rate[static_cast<size_t>(u)],
                     sum[static_cast<size_t>(u)] / 5);
  }
  EXPECT_DOUBLE_EQ(m.efc, static_cast<double>(m.ledger.total()) / (10 * 5));
  EXPECT_TRUE(m.non_optimal_slots.empty());
}

TEST(RunEpisodeTest, BothPoliciesSeeTheSameChannels) {
  const ScenarioConfig c = Small();
  const RunMetrics a =
      RunEpisode(c, Policy::kOptimized, 6, {.keep_slots = true});
  const RunMetrics b =
      RunEpisode(c, Policy::kMinDistance, 6, {.keep_slots = true});
  for (size_t t = 0; t < a.problems.size(); ++t) {
    EXPECT_EQ(a.problems[t].gamma, b.problems[t].gamma);
    EXPECT_EQ(a.problems[t].visibility, b.problems[t].visibility);
  }
}

TEST(RunEpisodeTest, OptimizedDominatesBaselineWithoutPenalty) {
  ScenarioConfig c = Small();
  c.alpha = 0.0;
  c.rate_min_bps = 0.0;
  for (std::uint64_t r = 0; r < 3; ++r) {
    const std::uint64_t seed = DeriveSeed(c.master_seed, r);
    const RunMetrics opt = RunEpisode(c, Policy::kOptimized, seed);
    const RunMetrics base = RunEpisode(c, Policy::kMinDistance, seed);
    for (size_t t = 0; t < opt.slot_total_rate.size(); ++t) {
      EXPECT_GE(opt.slot_total_rate[t],
                base.slot_total_rate[t] * (1.0 - 1e-12));
    }
  }
}

TEST(RunEpisodeTest, Deterministic) {
  const ScenarioConfig c = Small();
  const RunMetrics a = RunEpisode(c, Policy::kOptimized, 7);
  const RunMetrics b = RunEpisode(c, Policy::kOptimized, 7);
  EXPECT_EQ(a.slot_total_rate, b.slot_total_rate);
  EXPECT_EQ(a.slot_objective, b.slot_objective);
  EXPECT_EQ(a.user_mean_rate, b.user_mean_rate);
  EXPECT_EQ(a.ledger.flags(), b.ledger.flags());
  const RunMetrics other = RunEpisode(c, Policy::kOptimized, 8);
  EXPECT_NE(a.slot_total_rate, other.slot_total_rate);
}

TEST(RunEpisodeTest, RerandomizedUsersMoveWithTheSeed) {
  ScenarioConfig c = Small();
  const Scenario fixed_a = PrepareScenario(c, c.master_seed);
  c.rerandomize_users = true;
  const Scenario moved = PrepareScenario(c, 99);
  EXPECT_NE(fixed_a.users[0].latitude_deg, moved.users[0].latitude_deg);
}

TEST(AggregateTest, SingleUserSingleRunHasZeroStd) {
  ScenarioConfig c = Small();
  c.n_users = 1;
  const auto runs = RunReplicates(c, Policy::kOptimized, 1);
  const AggregateStats s = Aggregate(runs);
  EXPECT_EQ(s.episodes, 1);
  EXPECT_DOUBLE_EQ(s.mean_user_rate_bps, runs[0].user_mean_rate[0]);
  EXPECT_EQ(s.std_bps, 0.0);
}

TEST(AggregateTest, PoolsUsersAndReplicates) {
  const ScenarioConfig c = Small();
  const auto runs = RunReplicates(c, Policy::kMinDistance, 3);
  std::vector<double> x;
  double handovers = 0.0;
  for (const auto& r : runs) {
    x.insert(x.end(), r.user_mean_rate.begin(), r.user_mean_rate.end());
    handovers += static_cast<double>(r.ledger.total());
  }
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const AggregateStats s = Aggregate(runs);
  EXPECT_NEAR(s.mean_user_rate_bps, mean, 1e-9 * mean);
  EXPECT_NEAR(s.std_bps, std::sqrt(ss / static_cast<double>(x.size() - 1)),
              1e-9 * mean);
  EXPECT_DOUBLE_EQ(s.mean_handovers, handovers / 3.0);
}

TEST(AggregateTest, DegenerateChannelsGiveZeroSpread) {
  ScenarioConfig c = Small();
  c.n_users = 1;
  c.k_factor_db = 200.0;
  const AggregateStats s =
      Aggregate(RunReplicates(c, Policy::kOptimized, 4));
  EXPECT_NEAR(s.std_bps, 0.0, 1e-6 * s.mean_user_rate_bps);
  EXPECT_GT(s.mean_user_rate_bps, 0.0);
}

TEST(ReplicatesTest, ThreadCountDoesNotChangeResults) {
  ScenarioConfig c = Small();
  c.solver = SolverKind::kHeuristic;
  const auto serial = RunReplicates(c, Policy::kOptimized, 4, 1);
  const auto parallel = RunReplicates(c, Policy::kOptimized, 4, 3);
  for (size_t r = 0; r < serial.size(); ++r) {
    EXPECT_EQ(serial[r].seed, DeriveSeed(c.master_seed, r));
    EXPECT_EQ(serial[r].seed, parallel[r].seed);
    EXPECT_EQ(serial[r].slot_total_rate, parallel[r].slot_total_rate);
  }
}

TEST(ReplicatesTest, ErrorsPropagateFromWorkers) {
  ScenarioConfig c = Small();
  c.rerandomize_users = true;
  c.n_sats = 5000;
  EXPECT_THROW(RunReplicates(c, Policy::kOptimized, 3, 2), ConfigError);
}

TEST(MonteCarloTest, RejectsZeroRuns) {
  EXPECT_THROW(MonteCarlo(Small(), 0), std::invalid_argument);
}

TEST(MonteCarloTest, ReportsRelativeImprovement) {
  ScenarioConfig c = Small();
  c.n_slots = 2;
  const MonteCarloResult r = MonteCarlo(c, 2);
  EXPECT_EQ(r.optimized.episodes, 2);
  EXPECT_EQ(r.baseline.episodes, 2);
  EXPECT_DOUBLE_EQ(r.relative_improvement,
                   (r.optimized.mean_user_rate_bps -
                    r.baseline.mean_user_rate_bps) /
                       r.baseline.mean_user_rate_bps);
}

}  // namespace
}  // namespace leoho
