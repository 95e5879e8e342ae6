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


#include "leoho/policies.h"

#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "leoho/allocator.h"

namespace leoho {
namespace {

Association Single(std::optional<Link> link) {
  Association a(1);
  a[0] = link;
  return a;
}

bool Event(std::optional<Link> prev, std::optional<Link> curr) {
  return HandoverEvents(Single(curr), Single(prev))[0];
}

// Users x sats geometry with every satellite visible on every beam.
struct Layout {
  std::vector<LinkGeometry> geometry;
  SlotProblem problem;
};

Layout AllVisible(int users, int sats, int beams,
                  const std::vector<double>& distances) {
  Layout out;
  out.problem = SlotProblem::Empty({users, sats, beams});
  for (int u = 0; u < users; ++u) {
    for (int s = 0; s < sats; ++s) {
      out.geometry.push_back(
          {distances[static_cast<size_t>(u * sats + s)], 60.0, true});
      for (int b = 0; b < beams; ++b) {
        out.problem.visibility(u, s, b) = 1;
        out.problem.gamma(u, s, b) = 1e-3;
      }
    }
  }
  return out;
}

TEST(HandoverEventsTest, FourCaseTruthTable) {
  const Link here{1, 0};
  EXPECT_FALSE(Event(std::nullopt, std::nullopt));  // not covered at all
  EXPECT_TRUE(Event(std::nullopt, here));           // new connection
  EXPECT_TRUE(Event(here, std::nullopt));           // disconnection
  EXPECT_FALSE(Event(here, here));                  // kept its pair
}

TEST(HandoverEventsTest, BeamOrSatelliteChangeIsAnEvent) {
  EXPECT_TRUE(Event(Link{1, 0}, Link{1, 1}));
  EXPECT_TRUE(Event(Link{1, 0}, Link{2, 0}));
}

TEST(HandoverEventsTest, SizeMismatchThrows) {
  EXPECT_THROW(HandoverEvents(Association(2), Association(3)),
               std::invalid_argument);
}

TEST(EfcTest, Examples) {
  const std::vector<std::vector<bool>> none(5, std::vector<bool>(2, false));
  EXPECT_EQ(Efc(none), 0.0);
  const std::vector<std::vector<bool>> all(5, std::vector<bool>(2, true));
  EXPECT_EQ(Efc(all), 1.0);
  auto one = none;
  one[3][1] = true;
  EXPECT_DOUBLE_EQ(Efc(one), 0.1);
}

TEST(EfcTest, RejectsEmptyAndRagged) {
  EXPECT_THROW(Efc({}), std::invalid_argument);
  EXPECT_THROW(Efc({{}}), std::invalid_argument);
  EXPECT_THROW(Efc({{true, false}, {true}}), std::invalid_argument);
}

TEST(HandoverLedgerTest, CountsAndCumulativeTotals) {
  HandoverLedger ledger(2);
  ledger.Record({true, false});
  ledger.Record({false, false});
  ledger.Record({true, true});
  EXPECT_EQ(ledger.users(), 2);
  EXPECT_EQ(ledger.transitions(), 3);
  EXPECT_EQ(ledger.counters(), (std::vector<int>{2, 1}));
  EXPECT_EQ(ledger.total(), 3);
  EXPECT_EQ(ledger.CumulativeAt(0), 1);
  EXPECT_EQ(ledger.CumulativeAt(1), 1);
  EXPECT_EQ(ledger.CumulativeAt(2), 3);
  EXPECT_DOUBLE_EQ(ledger.efc(), 0.5);
  EXPECT_THROW(ledger.CumulativeAt(3), std::out_of_range);
  EXPECT_THROW(ledger.Record({true}), std::invalid_argument);
}

TEST(HandoverLedgerTest, CountersAreMonotone) {
  HandoverLedger ledger(3);
  std::vector<int> before = ledger.counters();
  for (int t = 0; t < 10; ++t) {
    ledger.Record({t % 2 == 0, t % 3 == 0, false});
    for (size_t u = 0; u < 3; ++u) EXPECT_GE(ledger.counters()[u], before[u]);
    before = ledger.counters();
  }
  EXPECT_EQ(ledger.counters()[2], 0);
}

TEST(MinDistanceTest, PicksTheClosestVisibleSatellite) {
  Layout l = AllVisible(1, 2, 2, {900.0, 600.0});
  const auto a = MinDistanceAssociation(l.geometry, l.problem.visibility);
  EXPECT_EQ(a[0], (Link{1, 0}));
  // Hide the closer one.
  l.problem.visibility(0, 1, 0) = l.problem.visibility(0, 1, 1) = 0;
  EXPECT_EQ(MinDistanceAssociation(l.geometry, l.problem.visibility)[0],
            (Link{0, 0}));
}

TEST(MinDistanceTest, NothingVisibleLeavesTheUserUnserved) {
  Layout l = AllVisible(1, 1, 1, {600.0});
  l.problem.visibility(0, 0, 0) = 0;
  const auto sol = MinDistancePolicy(l.geometry, l.problem);
  EXPECT_FALSE(sol.assoc[0].has_value());
  EXPECT_EQ(sol.rates[0], 0.0);
}

TEST(MinDistanceTest, ExtraUsersOnAFullSatelliteStayUnserved) {
  Layout l = AllVisible(4, 2, 3, {500, 900, 500, 900, 500, 900, 500, 900});
  const auto sol = MinDistancePolicy(l.geometry, l.problem);
  EXPECT_EQ(sol.assoc[0], (Link{0, 0}));
  EXPECT_EQ(sol.assoc[1], (Link{0, 1}));
  EXPECT_EQ(sol.assoc[2], (Link{0, 2}));
  EXPECT_FALSE(sol.assoc[3].has_value());
}

TEST(MinDistanceTest, PowerRulePerBudgetMode) {
  Layout l = AllVisible(2, 1, 3, {500.0, 500.0});
  l.problem.budget_mode = BudgetMode::kPerSatelliteTotal;
  auto sol = MinDistancePolicy(l.geometry, l.problem);
  EXPECT_EQ(sol.power(0, 0, 0), l.problem.p_max_w / 2);
  EXPECT_EQ(sol.power(1, 0, 1), l.problem.p_max_w / 2);
  l.problem.budget_mode = BudgetMode::kPerBeam;
  sol = MinDistancePolicy(l.geometry, l.problem);
  EXPECT_EQ(sol.power(0, 0, 0), l.problem.p_max_w);
  EXPECT_EQ(sol.power(1, 0, 1), l.problem.p_max_w);
}

TEST(MinDistanceTest, OnlyMinimumRateCanBeViolated) {
  Layout l = AllVisible(4, 2, 1, {500, 900, 600, 700, 550, 650, 800, 400});
  l.problem.rate_min_bps = 1e9;
  const auto sol = MinDistancePolicy(l.geometry, l.problem);
  EXPECT_FALSE(sol.violations.empty());
  for (const auto& v : sol.violations) {
    EXPECT_EQ(v.constraint, Constraint::kMinRate);
  }
}

TEST(MinDistanceTest, GeometrySizeMismatchThrows) {
  Layout l = AllVisible(2, 2, 1, {1, 2, 3, 4});
  l.geometry.pop_back();
  EXPECT_THROW(MinDistanceAssociation(l.geometry, l.problem.visibility),
               std::invalid_argument);
}

}  // namespace
}  // namespace leoho
