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

#include "leoho/matching.h"

#include <stdexcept>

namespace leoho {

MatchingResult MaxWeightMatching(int rows, int cols,
                                 std::span<const double> weights) {
  if (rows < 0 || cols < 0 ||
      weights.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
    throw std::invalid_argument("matching: weight matrix shape mismatch");
  }
  MatchingResult result;
  result.row_to_col.assign(static_cast<size_t>(rows), -1);
  if (rows == 0) return result;

  // Min-cost assignment on cost = -weight, with one private zero-cost
  // "unmatched" column per row appended after the real columns. 1-based
  // indices; column 0 is the virtual root of each augmenting search.
  const int n = rows;
  const int m = cols + rows;
  auto allowed = [&](int i, int j) {
    if (j > cols) return j - cols == i;
    return weights[static_cast<size_t>(i - 1) * static_cast<size_t>(cols) +
                   static_cast<size_t>(j - 1)] != kForbiddenEdge;
  };
  auto cost = [&](int i, int j) {
    if (j > cols) return 0.0;
    return -weights[static_cast<size_t>(i - 1) * static_cast<size_t>(cols) +
                    static_cast<size_t>(j - 1)];
  };

  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<size_t>(m) + 1, 0.0);
  std::vector<int> p(static_cast<size_t>(m) + 1, 0);
  std::vector<int> way(static_cast<size_t>(m) + 1, 0);
  std::vector<double> minv(static_cast<size_t>(m) + 1);
  std::vector<char> used(static_cast<size_t>(m) + 1);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), HUGE_VAL);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[static_cast<size_t>(j0)] = 1;
      const int i0 = p[static_cast<size_t>(j0)];
      double delta = HUGE_VAL;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        const auto js = static_cast<size_t>(j);
        if (used[js]) continue;
        if (allowed(i0, j)) {
          const double cur = cost(i0, j) - u[static_cast<size_t>(i0)] - v[js];
          if (cur < minv[js]) {
            minv[js] = cur;
            way[js] = j0;
          }
        }
        if (minv[js] < delta) {
          delta = minv[js];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        const auto js = static_cast<size_t>(j);
        if (used[js]) {
          u[static_cast<size_t>(p[js])] += delta;
          v[js] -= delta;
        } else {
          minv[js] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<size_t>(j0)];
      p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  for (int j = 1; j <= cols; ++j) {
    const int i = p[static_cast<size_t>(j)];
    if (i == 0) continue;
    const double w = weights[static_cast<size_t>(i - 1) *
                                 static_cast<size_t>(cols) +
                             static_cast<size_t>(j - 1)];
    // A zero-weight real edge and the private dummy are interchangeable;
    // only report edges that carry value.
    if (w > 0.0) {
      result.row_to_col[static_cast<size_t>(i - 1)] = j - 1;
      result.weight += w;
    }
  }
  return result;
}

}  // namespace leoho
