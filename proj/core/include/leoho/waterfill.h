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

#ifndef LEOHO_WATERFILL_H_
#define LEOHO_WATERFILL_H_

#include <span>
#include <stdexcept>
#include <vector>

namespace leoho {

// Raised when the power floors alone exceed the budget.
class InfeasibleFloorsError : public std::domain_error {
 public:
  InfeasibleFloorsError(double floor_sum, double budget);
  double floor_sum() const { return floor_sum_; }
  double budget() const { return budget_; }

 private:
  double floor_sum_;
  double budget_;
};

struct WaterfillResult {
  std::vector<double> powers;
  // Derivative of sum(log(1 + g_i p_i)) with respect to the budget at the
  // optimum; 0 when no link has positive gain.
  double marginal = 0.0;
};

// Maximizes sum_i log(1 + gains[i] p_i) subject to sum_i p_i <= p_total and
// p_i >= p_floor[i]. Substituting p = floor + q turns this into plain
// water-filling on the effective gains g / (1 + g floor); the water level is
// located exactly by a scan over the sorted breakpoints 1 / g. `p_floor` may
// be empty (all zero).
WaterfillResult WaterfillDetailed(std::span<const double> gains,
                                  double p_total,
                                  std::span<const double> p_floor = {});

inline std::vector<double> Waterfill(std::span<const double> gains,
                                     double p_total,
                                     std::span<const double> p_floor = {}) {
  return WaterfillDetailed(gains, p_total, p_floor).powers;
}

}  // namespace leoho

#endif  // LEOHO_WATERFILL_H_
