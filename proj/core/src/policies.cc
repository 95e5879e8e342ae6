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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "leoho/allocator.h"

namespace leoho {

Association MinDistanceAssociation(const std::vector<LinkGeometry>& geometry,
                                   const Tensor3<std::uint8_t>& visibility) {
  const Dims& d = visibility.dims();
  if (geometry.size() != static_cast<size_t>(d.users) *
                             static_cast<size_t>(d.sats)) {
    throw std::invalid_argument(
        fmt::format("geometry has {} entries, expected {} x {}",
                    geometry.size(), d.users, d.sats));
  }
  Tensor3<std::uint8_t> taken(Dims{1, d.sats, d.beams}, 0);
  Association assoc(d.users);
  for (int u = 0; u < d.users; ++u) {
    int closest = -1;
    double best = HUGE_VAL;
    for (int s = 0; s < d.sats; ++s) {
      bool visible = false;
      for (int b = 0; b < d.beams; ++b) visible |= visibility(u, s, b) != 0;
      const double dist =
          geometry[static_cast<size_t>(u) * static_cast<size_t>(d.sats) +
                   static_cast<size_t>(s)]
              .distance_km;
      if (visible && dist < best) {
        best = dist;
        closest = s;
      }
    }
    if (closest < 0) continue;
    for (int b = 0; b < d.beams; ++b) {
      if (!taken(0, closest, b) && visibility(u, closest, b)) {
        taken(0, closest, b) = 1;
        assoc[u] = Link{closest, b};
        break;
      }
    }
  }
  return assoc;
}

SlotSolution MinDistancePolicy(const std::vector<LinkGeometry>& geometry,
                               const SlotProblem& problem) {
  problem.Validate();
  const Dims& d = problem.dims;
  Association assoc = MinDistanceAssociation(geometry, problem.visibility);
  std::vector<int> served(static_cast<size_t>(d.sats), 0);
  for (int u = 0; u < d.users; ++u) {
    if (assoc[u]) ++served[static_cast<size_t>(assoc[u]->sat)];
  }
  PowerAllocation power(d, 0.0);
  for (int u = 0; u < d.users; ++u) {
    const auto& l = assoc[u];
    if (!l) continue;
    power(u, l->sat, l->beam) =
        problem.budget_mode == BudgetMode::kPerBeam
            ? problem.p_max_w
            : problem.p_max_w / served[static_cast<size_t>(l->sat)];
  }
  return MakeSolution(std::move(assoc), std::move(power), problem, false);
}

std::vector<bool> HandoverEvents(const Association& curr,
                                 const Association& prev) {
  if (curr.users() != prev.users()) {
    throw std::invalid_argument(fmt::format(
        "associations differ in size: {} vs {}", curr.users(), prev.users()));
  }
  std::vector<bool> events(static_cast<size_t>(curr.users()));
  for (int u = 0; u < curr.users(); ++u) {
    events[static_cast<size_t>(u)] =
        curr[u] != prev[u] && (curr[u] || prev[u]);
  }
  return events;
}

double Efc(const std::vector<std::vector<bool>>& flags) {
  if (flags.empty() || flags.front().empty()) {
    throw std::invalid_argument("EFC needs at least one user and transition");
  }
  long events = 0;
  for (const auto& row : flags) {
    if (row.size() != flags.front().size()) {
      throw std::invalid_argument("EFC flags are ragged");
    }
    events += std::count(row.begin(), row.end(), true);
  }
  return static_cast<double>(events) /
         (static_cast<double>(flags.size()) *
          static_cast<double>(flags.front().size()));
}

HandoverLedger::HandoverLedger(int users) {
  if (users < 0) throw std::invalid_argument("negative user count");
  counters_.assign(static_cast<size_t>(users), 0);
}

void HandoverLedger::Record(const std::vector<bool>& events) {
  if (events.size() != counters_.size()) {
    throw std::invalid_argument(
        fmt::format("ledger tracks {} users, got {} events", counters_.size(),
                    events.size()));
  }
  for (size_t u = 0; u < events.size(); ++u) counters_[u] += events[u] ? 1 : 0;
  flags_.push_back(events);
}

long HandoverLedger::total() const {
  return std::accumulate(counters_.begin(), counters_.end(), 0L);
}

long HandoverLedger::CumulativeAt(int t) const {
  if (t < 0 || t >= transitions()) {
    throw std::out_of_range(fmt::format("transition {} out of range", t));
  }
  long n = 0;
  for (int i = 0; i <= t; ++i) {
    const auto& row = flags_[static_cast<size_t>(i)];
    n += std::count(row.begin(), row.end(), true);
  }
  return n;
}

}  // namespace leoho
