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


// Minimum-distance baseline association and handover bookkeeping.

#ifndef LEOHO_POLICIES_H_
#define LEOHO_POLICIES_H_

#include <vector>

#include "leoho/geometry.h"
#include "leoho/slot_problem.h"

namespace leoho {

// Users, in ascending id, take the closest visible satellite and its lowest
// free beam; a user whose closest visible satellite is full stays unserved.
// `geometry` is users x sats, row-major. Power is p_max per served link in
// per-beam mode and an equal split of p_max across a satellite's served links
// otherwise. The result may violate only the minimum rate.
SlotSolution MinDistancePolicy(const std::vector<LinkGeometry>& geometry,
                               const SlotProblem& problem);

// Association part of MinDistancePolicy.
Association MinDistanceAssociation(const std::vector<LinkGeometry>& geometry,
                                   const Tensor3<std::uint8_t>& visibility);

// event[u] is true when u's (sat, beam) changed between the two slots,
// except when u was unserved in both. Throws std::invalid_argument when the
// user counts differ.
std::vector<bool> HandoverEvents(const Association& curr,
                                 const Association& prev);

// Fraction of (user, transition) pairs with an event. `flags` holds one
// per-user vector per transition. Throws std::invalid_argument when empty or
// ragged.
double Efc(const std::vector<std::vector<bool>>& flags);

class HandoverLedger {
 public:
  explicit HandoverLedger(int users);

  // Appends one transition. Throws std::invalid_argument on a size mismatch.
  void Record(const std::vector<bool>& events);

  int users() const { return static_cast<int>(counters_.size()); }
  int transitions() const { return static_cast<int>(flags_.size()); }
  // H_u.
  const std::vector<int>& counters() const { return counters_; }
  // flags()[t][u] for transition t (0-based).
  const std::vector<std::vector<bool>>& flags() const { return flags_; }
  long total() const;
  // Events up to and including transition t.
  long CumulativeAt(int t) const;
  double efc() const { return Efc(flags_); }

 private:
  std::vector<int> counters_;
  std::vector<std::vector<bool>> flags_;
};

}  // namespace leoho

#endif  // LEOHO_POLICIES_H_
