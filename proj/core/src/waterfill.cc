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

#include "leoho/waterfill.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace leoho {

InfeasibleFloorsError::InfeasibleFloorsError(double floor_sum, double budget)
    : std::domain_error(fmt::format(
          "power floors sum to {} W, exceeding the {} W budget", floor_sum,
          budget)),
      floor_sum_(floor_sum),
      budget_(budget) {}

WaterfillResult WaterfillDetailed(std::span<const double> gains,
                                  double p_total,
                                  std::span<const double> p_floor) {
  const size_t n = gains.size();
  if (!p_floor.empty() && p_floor.size() != n) {
    throw std::invalid_argument("waterfill: gains and floors differ in size");
  }
  if (!(p_total >= 0.0) || !std::isfinite(p_total)) {
    throw std::invalid_argument("waterfill: budget must be finite and >= 0");
  }
  std::vector<double> floor(n, 0.0);
  double floor_sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (!(gains[i] >= 0.0) || !std::isfinite(gains[i])) {
      throw std::invalid_argument("waterfill: gains must be finite and >= 0");
    }
    if (!p_floor.empty()) {
      if (!(p_floor[i] >= 0.0) || !std::isfinite(p_floor[i])) {
        throw std::invalid_argument(
            "waterfill: floors must be finite and >= 0");
      }
      floor[i] = p_floor[i];
    }
    floor_sum += floor[i];
  }
  // A relative 1e-12 slack absorbs rounding in floors that exactly exhaust
  // the budget.
  if (floor_sum > p_total * (1.0 + 1e-12)) {
    throw InfeasibleFloorsError(floor_sum, p_total);
  }
  const double budget = std::max(0.0, p_total - floor_sum);

  // Breakpoints 1 / g' of the effective problem; zero-gain links never
  // receive water.
  std::vector<double> inv(n, HUGE_VAL);
  std::vector<size_t> order;
  order.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (gains[i] > 0.0) {
      inv[i] = (1.0 + gains[i] * floor[i]) / gains[i];
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return inv[a] < inv[b]; });

  WaterfillResult result;
  result.powers = floor;
  if (order.empty()) return result;

  size_t active = 0;
  double inv_sum = 0.0;
  double level = 0.0;
  for (size_t k = 0; k < order.size(); ++k) {
    inv_sum += inv[order[k]];
    active = k + 1;
    level = (budget + inv_sum) / static_cast<double>(active);
    if (k + 1 == order.size() || level <= inv[order[k + 1]]) break;
  }
  for (size_t k = 0; k < active; ++k) {
    const size_t i = order[k];
    result.powers[i] += std::max(0.0, level - inv[i]);
  }
  result.marginal = 1.0 / level;
  return result;
}

}  // namespace leoho
