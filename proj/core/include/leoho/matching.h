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

#ifndef LEOHO_MATCHING_H_
#define LEOHO_MATCHING_H_

#include <cmath>
#include <span>
#include <vector>

namespace leoho {

// Marks an absent edge in a weight matrix.
inline constexpr double kForbiddenEdge = -HUGE_VAL;

struct MatchingResult {
  std::vector<int> row_to_col;  // -1 for unmatched rows
  double weight = 0.0;
};

// Maximum-weight (not necessarily perfect) bipartite matching. `weights` is
// row-major rows x cols; kForbiddenEdge removes an edge. Every row may stay
// unmatched at weight 0, so negative edges are never used. Hungarian
// algorithm with potentials, O(rows^2 (rows + cols)).
MatchingResult MaxWeightMatching(int rows, int cols,
                                 std::span<const double> weights);

}  // namespace leoho

#endif  // LEOHO_MATCHING_H_
