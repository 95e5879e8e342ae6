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

#include "leoho/slot_problem.h"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace leoho {
namespace {

constexpr std::array<std::pair<Constraint, std::string_view>, 8>
    kConstraintNames{{
        {Constraint::kMinRate, "min_rate"},
        {Constraint::kPowerWithoutAssociation, "power_without_association"},
        {Constraint::kPowerBudget, "power_budget"},
        {Constraint::kBeamShared, "beam_shared"},
        {Constraint::kUserMultiple, "user_multiple"},
        {Constraint::kInvisible, "invisible"},
        {Constraint::kPowerRange, "power_range"},
        {Constraint::kNonBinary, "non_binary"},
    }};

}  // namespace

int Association::ServedCount() const {
  int n = 0;
  for (const auto& l : links_) n += l.has_value() ? 1 : 0;
  return n;
}

std::vector<int> Association::Key(int beams) const {
  std::vector<int> key;
  key.reserve(links_.size());
  for (const auto& l : links_) {
    key.push_back(l ? l->sat * beams + l->beam : -1);
  }
  return key;
}

Tensor3<std::uint8_t> Association::ToTensor(Dims dims) const {
  if (dims.users != users()) {
    throw std::invalid_argument("association size does not match dims");
  }
  Tensor3<std::uint8_t> t(dims, 0);
  for (int u = 0; u < users(); ++u) {
    const auto& l = (*this)[u];
    if (!l) continue;
    if (l->sat < 0 || l->sat >= dims.sats || l->beam < 0 ||
        l->beam >= dims.beams) {
      throw std::invalid_argument(
          fmt::format("user {} assigned outside the tensor", u));
    }
    t(u, l->sat, l->beam) = 1;
  }
  return t;
}

std::string_view ToString(BudgetMode mode) {
  return mode == BudgetMode::kPerBeam ? "per_beam" : "per_satellite_total";
}

BudgetMode ParseBudgetMode(std::string_view text) {
  if (text == "per_beam") return BudgetMode::kPerBeam;
  if (text == "per_satellite_total") return BudgetMode::kPerSatelliteTotal;
  throw std::invalid_argument(fmt::format(
      "unknown budget mode '{}' (per_beam | per_satellite_total)", text));
}

std::string_view ToString(Constraint c) {
  for (const auto& [k, name] : kConstraintNames) {
    if (k == c) return name;
  }
  return "unknown";
}

Constraint ParseConstraint(std::string_view text) {
  for (const auto& [k, name] : kConstraintNames) {
    if (name == text) return k;
  }
  throw std::invalid_argument(fmt::format("unknown constraint '{}'", text));
}

SlotProblem SlotProblem::Empty(Dims dims) {
  SlotProblem p;
  p.dims = dims;
  p.gamma = Tensor3<double>(dims, 0.0);
  p.visibility = Tensor3<std::uint8_t>(dims, 0);
  p.prev_assoc = Association(dims.users);
  p.prev_rates.assign(static_cast<size_t>(dims.users), 0.0);
  return p;
}

void SlotProblem::Validate() const {
  if (dims.users < 0 || dims.sats < 0 || dims.beams < 0) {
    throw std::invalid_argument("negative problem dimensions");
  }
  if (gamma.dims() != dims || visibility.dims() != dims) {
    throw std::invalid_argument("gamma/visibility tensors do not match dims");
  }
  if (prev_assoc.users() != dims.users ||
      prev_rates.size() != static_cast<size_t>(dims.users)) {
    throw std::invalid_argument(
        "previous association/rates do not match the user count");
  }
  for (int u = 0; u < dims.users; ++u) {
    const auto& l = prev_assoc[u];
    if (l && (l->sat < 0 || l->sat >= dims.sats || l->beam < 0 ||
              l->beam >= dims.beams)) {
      throw std::invalid_argument(
          fmt::format("previous association of user {} out of range", u));
    }
  }
  for (double g : gamma.data()) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("gamma must be finite and non-negative");
    }
  }
  for (double r : prev_rates) {
    if (!(r >= 0.0)) {
      throw std::invalid_argument("previous rates must be non-negative");
    }
  }
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(p_max_w > 0.0)) throw std::invalid_argument("p_max must be > 0");
  if (!(rate_min_bps >= 0.0)) {
    throw std::invalid_argument("rate_min must be >= 0");
  }
  if (!(bandwidth_hz > 0.0)) {
    throw std::invalid_argument("bandwidth must be > 0");
  }
}

double SlotSolution::TotalRate() const {
  return std::accumulate(rates.begin(), rates.end(), 0.0);
}

}  // namespace leoho
