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

// Data model of the per-slot association and power problem: user x satellite
// x beam tensors, the association (which user sits on which beam), the power
// tensor and the solver output.

#ifndef LEOHO_SLOT_PROBLEM_H_
#define LEOHO_SLOT_PROBLEM_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leoho {

struct Dims {
  int users = 0;
  int sats = 0;
  int beams = 0;

  int links() const { return sats * beams; }
  size_t size() const {
    return static_cast<size_t>(users) * static_cast<size_t>(sats) *
           static_cast<size_t>(beams);
  }
  bool operator==(const Dims&) const = default;
};

// Dense row-major (user, sat, beam) tensor.
template <typename T>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(Dims dims, T fill = T{})
      : dims_(dims), data_(dims.size(), fill) {}

  const Dims& dims() const { return dims_; }
  T& operator()(int u, int s, int b) { return data_[Index(u, s, b)]; }
  const T& operator()(int u, int s, int b) const {
    return data_[Index(u, s, b)];
  }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }
  bool operator==(const Tensor3&) const = default;

 private:
  size_t Index(int u, int s, int b) const {
    return (static_cast<size_t>(u) * static_cast<size_t>(dims_.sats) +
            static_cast<size_t>(s)) *
               static_cast<size_t>(dims_.beams) +
           static_cast<size_t>(b);
  }

  Dims dims_;
  std::vector<T> data_;
};

struct Link {
  int sat = 0;
  int beam = 0;
  auto operator<=>(const Link&) const = default;
};

// Per-user serving (satellite, beam) or nothing. This representation cannot
// express a user on two beams; several users on one beam can be expressed
// and are reported by CheckFeasibility.
class Association {
 public:
  Association() = default;
  explicit Association(int users) : links_(static_cast<size_t>(users)) {}

  int users() const { return static_cast<int>(links_.size()); }
  const std::optional<Link>& operator[](int u) const {
    return links_[static_cast<size_t>(u)];
  }
  std::optional<Link>& operator[](int u) {
    return links_[static_cast<size_t>(u)];
  }
  bool Serves(int u, int s, int b) const {
    const auto& l = (*this)[u];
    return l && l->sat == s && l->beam == b;
  }
  int ServedCount() const;

  // One integer per user: sat * beams + beam, or -1 when unserved. Ties
  // between equally good associations go to the lexicographically smallest
  // key.
  std::vector<int> Key(int beams) const;
  Tensor3<std::uint8_t> ToTensor(Dims dims) const;

  bool operator==(const Association&) const = default;

 private:
  std::vector<std::optional<Link>> links_;
};

enum class BudgetMode {
  // Each (satellite, beam) carries at most p_max.
  kPerBeam,
  // All beams of a satellite share p_max.
  kPerSatelliteTotal,
};

std::string_view ToString(BudgetMode mode);
// Accepts "per_beam" and "per_satellite_total".
BudgetMode ParseBudgetMode(std::string_view text);

struct SlotProblem {
  Dims dims;
  Tensor3<double> gamma;              // SNR coefficient per watt
  Tensor3<std::uint8_t> visibility;   // 1 where a link may be established
  Association prev_assoc;             // association at t - 1
  std::vector<double> prev_rates;     // R_u at t - 1 [bit/s]
  double alpha = 0.5;
  double p_max_w = 1000.0;
  double rate_min_bps = 0.0;
  double bandwidth_hz = 200e6;
  BudgetMode budget_mode = BudgetMode::kPerSatelliteTotal;

  // Empty problem of the given shape: zero gains, nothing visible, nobody
  // previously served.
  static SlotProblem Empty(Dims dims);

  // Throws std::invalid_argument when shapes disagree or a scalar is out of
  // range.
  void Validate() const;
};

using PowerAllocation = Tensor3<double>;

enum class Constraint {
  kMinRate,                 // R_u >= rate_min
  kPowerWithoutAssociation, // P <= I p_max
  kPowerBudget,             // per-beam or per-satellite sum <= p_max
  kBeamShared,              // at most one user per beam
  kUserMultiple,            // at most one beam per user
  kInvisible,               // I <= V
  kPowerRange,              // 0 <= P <= p_max
  kNonBinary,               // I in {0, 1}
};

std::string_view ToString(Constraint c);
Constraint ParseConstraint(std::string_view text);

struct Violation {
  Constraint constraint = Constraint::kMinRate;
  int user = -1;  // -1 when not user-specific
  int sat = -1;
  int beam = -1;
  double magnitude = 0.0;

  bool operator==(const Violation&) const = default;
};

struct SolverStats {
  long nodes = 0;
  int rounds = 0;
  bool timed_out = false;
  // Heuristic only: best objective after each round.
  std::vector<double> objective_trace;
};

struct SlotSolution {
  Association assoc;
  PowerAllocation power;
  std::vector<double> rates;  // R_u at t [bit/s]
  double objective = 0.0;
  bool optimal = false;
  std::vector<Violation> violations;
  SolverStats stats;

  double TotalRate() const;
};

}  // namespace leoho

#endif  // LEOHO_SLOT_PROBLEM_H_
