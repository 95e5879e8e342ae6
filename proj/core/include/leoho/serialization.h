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


// File formats.
//
// problem.json
//   {"users": U, "sats": S, "beams": B,
//    "gamma": [[[...B] x S] x U],        1/W
//    "visibility": [[[0|1 ...]]],
//    "prev_assoc": [[sat, beam] | null, ...],
//    "prev_rates_bps": [...], "alpha": a, "p_max_w": P,
//    "rate_min_bps": r, "bandwidth_hz": W,
//    "budget_mode": "per_beam" | "per_satellite_total"}
//
// solution.json
//   {"assoc": [[sat, beam] | null, ...], "power_w": [[[...]]],
//    "rates_bps": [...], "total_rate_bps": x, "objective": x,
//    "optimal": bool,
//    "violations": [{"constraint", "user", "sat", "beam", "magnitude"}],
//    "stats": {"nodes", "rounds", "timed_out"}}
//
// Doubles are written in shortest round-trip form, so equal runs produce
// byte-identical files.

#ifndef LEOHO_SERIALIZATION_H_
#define LEOHO_SERIALIZATION_H_

#include <ostream>

#include <nlohmann/json.hpp>

#include "leoho/simulator.h"
#include "leoho/slot_problem.h"

namespace leoho {

nlohmann::json ToJson(const SlotProblem& problem);
nlohmann::json ToJson(const SlotSolution& solution);
// Throw std::invalid_argument on malformed documents.
SlotProblem ProblemFromJson(const nlohmann::json& json);
SlotSolution SolutionFromJson(const nlohmann::json& json);

// t,user_id,sat_id,distance_km,elevation_deg,visible for t = 1..T.
void WriteGeometryCsv(std::ostream& out, const Scenario& scenario);

// t,policy,total_rate_bps,objective,handovers_cumulative
void WriteMetricsCsv(std::ostream& out, const RunMetrics& metrics);

// t,user_id,prev_sat,prev_beam,curr_sat,curr_beam,event with -1 for
// "unserved". Requires the episode to have kept its slot solutions.
void WriteHandoverCsv(std::ostream& out, const RunMetrics& metrics);

// t,optimized_total_rate_bps,baseline_total_rate_bps,optimized_handovers,
// baseline_handovers,optimized_handovers_cumulative,
// baseline_handovers_cumulative
void WriteCompareCsv(std::ostream& out, const RunMetrics& optimized,
                     const RunMetrics& baseline);
nlohmann::json CompareSummaryJson(const RunMetrics& optimized,
                                  const RunMetrics& baseline);

nlohmann::json ToJson(const AggregateStats& stats);
// {"optimized": {...}, "min_distance": {...}, "relative_improvement": x}
nlohmann::json ToJson(const MonteCarloResult& result);

}  // namespace leoho

#endif  // LEOHO_SERIALIZATION_H_
