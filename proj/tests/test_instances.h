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


// Random slot problems shared by the unit and acceptance tests.

#ifndef LEOHO_TESTS_TEST_INSTANCES_H_
#define LEOHO_TESTS_TEST_INSTANCES_H_

#include <cmath>
#include <random>

#include "leoho/slot_problem.h"

namespace leoho::testing {

struct InstanceOptions {
  BudgetMode mode = BudgetMode::kPerSatelliteTotal;
  double alpha = 0.5;
  double rate_min_bps = 0.0;
  double visible_fraction = 0.75;
};

// SNR coefficients span roughly 0.1 to 100 at full power, which puts both
// interior and boundary water-filling solutions within reach. Beams of one
// satellite share visibility, as in the simulator.
inline SlotProblem RandomInstance(std::mt19937_64& rng, Dims dims,
                                  const InstanceOptions& options) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SlotProblem p = SlotProblem::Empty(dims);
  p.alpha = options.alpha;
  p.rate_min_bps = options.rate_min_bps;
  p.budget_mode = options.mode;
  p.p_max_w = 10.0;
  p.bandwidth_hz = 1e6;
  for (int u = 0; u < dims.users; ++u) {
    for (int s = 0; s < dims.sats; ++s) {
      const bool visible = unit(rng) < options.visible_fraction;
      for (int b = 0; b < dims.beams; ++b) {
        p.visibility(u, s, b) = visible ? 1 : 0;
        p.gamma(u, s, b) = std::pow(10.0, -2.0 + 3.0 * unit(rng));
      }
    }
  }
  // A previous association that respects beam exclusivity and visibility.
  std::vector<bool> used(static_cast<size_t>(dims.links()), false);
  for (int u = 0; u < dims.users; ++u) {
    if (unit(rng) < 0.3) continue;
    const int s = static_cast<int>(unit(rng) * dims.sats);
    const int b = static_cast<int>(unit(rng) * dims.beams);
    const size_t l = static_cast<size_t>(s * dims.beams + b);
    if (used[l] || !p.visibility(u, s, b)) continue;
    used[l] = true;
    p.prev_assoc[u] = Link{s, b};
    p.prev_rates[static_cast<size_t>(u)] = 1e6 * (0.5 + 4.0 * unit(rng));
  }
  return p;
}

}  // namespace leoho::testing

#endif  // LEOHO_TESTS_TEST_INSTANCES_H_
