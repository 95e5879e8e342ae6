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

// Per-slot joint association and power allocation.
//
// The slot objective is
//
//   sum_u  R_u - alpha R_u^{prev} (1 - [u keeps its previous (sat, beam)])
//
// subject to one user per beam, one beam per user, visibility, a per-beam or
// per-satellite power budget and a per-user minimum rate. Three solvers are
// provided: exhaustive enumeration (ground truth for small instances), an
// exact branch-and-bound and an alternating matching / water-filling
// heuristic for large instances.
//
// Minimum-rate handling. A user is "enforced" when rate_min > 0 and at least
// one visible link can carry rate_min at p_max on its own. Enforced users may
// only be placed on such links and always receive the power floor
// (2^(rate_min / W) - 1) / gamma. Users that are not enforced get no floor and
// are reported as min-rate violations. Solutions are ranked by
//
//   1. fewest enforced users left unserved,
//   2. highest objective,
//   3. lexicographically smallest Association::Key,
//
// which reduces to the plain constrained problem whenever it is feasible.

#ifndef LEOHO_ALLOCATOR_H_
#define LEOHO_ALLOCATOR_H_

#include <stdexcept>
#include <vector>

#include "leoho/slot_problem.h"

namespace leoho {

// An association whose power floors cannot be met within the budget.
class InfeasibleAssociationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SearchSpaceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Per-user rate R_u [bit/s] for the given association and power tensor.
std::vector<double> UserRates(const Association& assoc,
                              const PowerAllocation& power,
                              const SlotProblem& problem);

// Slot objective. Throws std::invalid_argument on shape mismatch.
double ObjectiveValue(const Association& assoc, const PowerAllocation& power,
                      const SlotProblem& problem);

// Power floor that lets a link with SNR coefficient `gamma` carry
// `rate_min_bps`; +inf for a dead link, 0 when rate_min is 0.
double PowerFloor(double gamma, double rate_min_bps, double bandwidth_hz);

// Users whose minimum rate is enforced (see the file comment).
std::vector<bool> EnforcedUsers(const SlotProblem& problem);

struct PowerForAssoc {
  PowerAllocation power;
  std::vector<double> rates;
};

// Optimal powers for a fixed association: p_max on every active link in
// per-beam mode, per-satellite water-filling with rate floors otherwise.
// Throws InfeasibleAssociationError if the floors of some satellite exceed
// its budget.
PowerForAssoc OptimalPowerForAssoc(const Association& assoc,
                                   const SlotProblem& problem);

struct BruteforceOptions {
  long max_associations = 1'000'000;
};

// Enumerates every association allowed by the beam, user and visibility
// constraints. Throws SearchSpaceError once more than max_associations have
// been visited.
SlotSolution SolveSlotBruteforce(const SlotProblem& problem,
                                 const BruteforceOptions& options = {});

struct ExactOptions {
  double timeout_seconds = 30.0;
  // Enumerates the subtree under every node and throws std::logic_error if
  // its bound is beaten. Exponential; small instances only.
  bool verify_bounds = false;
  // Coordinate-descent sweeps over the satellite budget prices of the bound
  // and golden-section steps per satellite (per-satellite mode only).
  int dual_sweeps = 3;
  int golden_iterations = 12;
};

// Best-bound-first branch and bound over per-user (sat, beam) choices. The
// node bound is a maximum-weight matching in which every link is valued at
// full power plus its stay bonus; in per-satellite mode it is tightened by
// pricing the shared budget. Returns optimal = false if the timeout expires.
SlotSolution SolveSlotExact(const SlotProblem& problem,
                            const ExactOptions& options = {});

struct HeuristicOptions {
  int max_rounds = 20;
  double relative_tolerance = 1e-6;
};

// Alternates a matching step at fixed per-link power estimates with an
// optimal power step for the resulting association. Never reports
// optimal = true.
SlotSolution SolveSlotHeuristic(const SlotProblem& problem,
                                const HeuristicOptions& options = {});

// Every constraint of the slot problem, evaluated on a solution.
std::vector<Violation> CheckFeasibility(const SlotSolution& solution,
                                        const SlotProblem& problem);

// Structural checks on a raw association tensor (binary values, one beam per
// user, one user per beam, visibility).
std::vector<Violation> CheckAssociationTensor(
    const Tensor3<double>& association, const SlotProblem& problem);

// Builds a SlotSolution for a given association and power tensor: rates,
// objective and violations are filled in.
SlotSolution MakeSolution(Association assoc, PowerAllocation power,
                          const SlotProblem& problem, bool optimal);

}  // namespace leoho

#endif  // LEOHO_ALLOCATOR_H_
