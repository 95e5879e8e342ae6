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

#include "leoho/allocator.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <queue>
#include <utility>

#include <fmt/format.h>

#include "leoho/channel.h"
#include "leoho/matching.h"
#include "leoho/waterfill.h"

namespace leoho {
namespace {

constexpr double kFloorSlack = 1e-12;
constexpr double kTieTolerance = 1e-12;
constexpr int kUnserved = -1;

double LinkRate(double gamma, double power, double bandwidth_hz) {
  return Rate(LinkQuality{gamma}, power, bandwidth_hz);
}

void CheckShapes(const Association& assoc, const PowerAllocation& power,
                 const SlotProblem& problem) {
  if (assoc.users() != problem.dims.users) {
    throw std::invalid_argument(fmt::format(
        "association has {} users, problem has {}", assoc.users(),
        problem.dims.users));
  }
  if (power.dims() != problem.dims) {
    throw std::invalid_argument("power tensor does not match problem dims");
  }
  if (problem.gamma.dims() != problem.dims ||
      problem.prev_assoc.users() != problem.dims.users ||
      problem.prev_rates.size() != static_cast<size_t>(problem.dims.users)) {
    throw std::invalid_argument("slot problem tensors do not match its dims");
  }
}

// Ranking of candidate associations; see the header comment.
struct Score {
  int violations = 0;
  double objective = -HUGE_VAL;
  std::vector<int> key;
};

bool WithinTie(double a, double b) {
  return std::fabs(a - b) <=
         kTieTolerance * std::max({1.0, std::fabs(a), std::fabs(b)});
}

bool Better(const Score& a, const Score& b) {
  if (a.violations != b.violations) return a.violations < b.violations;
  if (!WithinTie(a.objective, b.objective)) return a.objective > b.objective;
  return a.key < b.key;
}

// Everything about a slot problem that the solvers look up per link.
class SlotModel {
 public:
  explicit SlotModel(const SlotProblem& problem)
      : problem_(problem),
        users_(problem.dims.users),
        sats_(problem.dims.sats),
        beams_(problem.dims.beams),
        links_(problem.dims.links()) {
    problem.Validate();
    const auto n = static_cast<size_t>(users_) * static_cast<size_t>(links_);
    allowed_.assign(n, 0);
    floor_.assign(n, 0.0);
    full_rate_.assign(n, 0.0);
    bonus_.assign(n, 0.0);
    enforced_ = EnforcedUsers(problem);
    constant_ = 0.0;
    for (int u = 0; u < users_; ++u) {
      constant_ -= problem.alpha * problem.prev_rates[static_cast<size_t>(u)];
      const auto& prev = problem.prev_assoc[u];
      for (int l = 0; l < links_; ++l) {
        const int s = l / beams_;
        const int b = l % beams_;
        const size_t i = Index(u, l);
        const double g = problem.gamma(u, s, b);
        floor_[i] = PowerFloor(g, problem.rate_min_bps, problem.bandwidth_hz);
        full_rate_[i] = LinkRate(g, problem.p_max_w, problem.bandwidth_hz);
        if (prev && prev->sat == s && prev->beam == b) {
          bonus_[i] = problem.alpha * problem.prev_rates[static_cast<size_t>(u)];
        }
        const bool visible = problem.visibility(u, s, b) != 0;
        const bool meets_floor =
            floor_[i] <= problem.p_max_w * (1.0 + kFloorSlack);
        allowed_[i] = visible && (!enforced_[static_cast<size_t>(u)] ||
                                  meets_floor);
      }
    }
  }

  int users() const { return users_; }
  int sats() const { return sats_; }
  int beams() const { return beams_; }
  int links() const { return links_; }
  const SlotProblem& problem() const { return problem_; }
  bool per_beam() const {
    return problem_.budget_mode == BudgetMode::kPerBeam;
  }

  bool allowed(int u, int l) const { return allowed_[Index(u, l)] != 0; }
  bool enforced(int u) const { return enforced_[static_cast<size_t>(u)]; }
  // Floor actually charged to the satellite budget.
  double charged_floor(int u, int l) const {
    return enforced(u) ? floor_[Index(u, l)] : 0.0;
  }
  double full_rate(int u, int l) const { return full_rate_[Index(u, l)]; }
  double bonus(int u, int l) const { return bonus_[Index(u, l)]; }
  double gamma(int u, int l) const {
    return problem_.gamma(u, l / beams_, l % beams_);
  }
  double constant() const { return constant_; }
  double p_max() const { return problem_.p_max_w; }
  double budget_limit() const { return p_max() * (1.0 + kFloorSlack); }

  Association ToAssociation(const std::vector<int>& choices) const {
    Association a(users_);
    for (int u = 0; u < users_; ++u) {
      const int l = choices[static_cast<size_t>(u)];
      if (l != kUnserved) a[u] = Link{l / beams_, l % beams_};
    }
    return a;
  }

  struct Evaluation {
    Score score;
    PowerForAssoc power;
  };

  // Nullopt for associations the solvers may not return: enforced users on
  // links that cannot carry rate_min, or floors that break a budget.
  std::optional<Evaluation> Evaluate(const std::vector<int>& choices) const {
    int violations = 0;
    std::vector<double> floor_sum(static_cast<size_t>(sats_), 0.0);
    for (int u = 0; u < users_; ++u) {
      const int l = choices[static_cast<size_t>(u)];
      if (l == kUnserved) {
        violations += enforced(u) ? 1 : 0;
        continue;
      }
      if (!allowed(u, l)) return std::nullopt;
      floor_sum[static_cast<size_t>(l / beams_)] += charged_floor(u, l);
    }
    if (!per_beam()) {
      for (double f : floor_sum) {
        if (f > budget_limit()) return std::nullopt;
      }
    }
    const Association assoc = ToAssociation(choices);
    Evaluation e;
    e.power = OptimalPowerForAssoc(assoc, problem_);
    e.score.violations = violations;
    e.score.objective = ObjectiveValue(assoc, e.power.power, problem_);
    e.score.key = choices;
    return e;
  }

 private:
  size_t Index(int u, int l) const {
    return static_cast<size_t>(u) * static_cast<size_t>(links_) +
           static_cast<size_t>(l);
  }

  const SlotProblem& problem_;
  int users_;
  int sats_;
  int beams_;
  int links_;
  std::vector<char> allowed_;
  std::vector<bool> enforced_;
  std::vector<double> floor_;
  std::vector<double> full_rate_;
  std::vector<double> bonus_;
  double constant_ = 0.0;
};

// Depth-first enumeration of admissible completions of a prefix. The visitor
// is called with the full choice vector; users are expanded in id order and
// choices in key order (unserved first), so leaves arrive in lexicographic
// key order.
class Enumerator {
 public:
  using Visitor = std::function<void(const std::vector<int>&)>;

  Enumerator(const SlotModel& model, long limit)
      : model_(model), limit_(limit) {}

  void Run(std::vector<int> prefix, int depth, const Visitor& visit) {
    choices_ = std::move(prefix);
    choices_.resize(static_cast<size_t>(model_.users()), kUnserved);
    used_.assign(static_cast<size_t>(model_.links()), 0);
    floor_sum_.assign(static_cast<size_t>(model_.sats()), 0.0);
    for (int u = 0; u < depth; ++u) {
      const int l = choices_[static_cast<size_t>(u)];
      if (l == kUnserved) continue;
      used_[static_cast<size_t>(l)] = 1;
      floor_sum_[static_cast<size_t>(l / model_.beams())] +=
          model_.charged_floor(u, l);
    }
    Recurse(depth, visit);
  }

  long visited() const { return visited_; }

 private:
  void Recurse(int u, const Visitor& visit) {
    if (u == model_.users()) {
      if (++visited_ > limit_) {
        throw SearchSpaceError(fmt::format(
            "more than {} feasible associations; instance too large for "
            "exhaustive search",
            limit_));
      }
      visit(choices_);
      return;
    }
    choices_[static_cast<size_t>(u)] = kUnserved;
    Recurse(u + 1, visit);
    for (int l = 0; l < model_.links(); ++l) {
      if (used_[static_cast<size_t>(l)] || !model_.allowed(u, l)) continue;
      const auto s = static_cast<size_t>(l / model_.beams());
      const double f = model_.charged_floor(u, l);
      if (!model_.per_beam() && floor_sum_[s] + f > model_.budget_limit()) {
        continue;
      }
      used_[static_cast<size_t>(l)] = 1;
      floor_sum_[s] += f;
      choices_[static_cast<size_t>(u)] = l;
      Recurse(u + 1, visit);
      choices_[static_cast<size_t>(u)] = kUnserved;
      floor_sum_[s] -= f;
      used_[static_cast<size_t>(l)] = 0;
    }
  }

  const SlotModel& model_;
  long limit_;
  long visited_ = 0;
  std::vector<int> choices_;
  std::vector<char> used_;
  std::vector<double> floor_sum_;
};

class BranchAndBound {
 public:
  BranchAndBound(const SlotModel& model, const ExactOptions& options)
      : model_(model), options_(options) {}

  struct Node {
    std::vector<int> choices;  // first `depth` entries decided
    std::vector<char> used;
    std::vector<double> floor_sum;
    int depth = 0;
    int violations = 0;  // enforced users left unserved so far
    int violation_bound = 0;
    double bound = HUGE_VAL;
    std::vector<double> price;  // per-satellite budget prices of the bound
    long seq = 0;
  };

  struct Outcome {
    Score best;
    bool timed_out = false;
    long nodes = 0;
  };

  Outcome Run(const Score& initial) {
    const auto start = std::chrono::steady_clock::now();
    incumbent_ = initial;

    auto worse = [](const Node& a, const Node& b) {
      if (a.violation_bound != b.violation_bound) {
        return a.violation_bound > b.violation_bound;
      }
      if (a.bound != b.bound) return a.bound < b.bound;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.seq > b.seq;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);

    Node root;
    root.choices.assign(static_cast<size_t>(model_.users()), kUnserved);
    root.used.assign(static_cast<size_t>(model_.links()), 0);
    root.floor_sum.assign(static_cast<size_t>(model_.sats()), 0.0);
    Bound(root);
    if (model_.users() == 0) return {incumbent_, false, 1};
    open.push(std::move(root));

    Outcome out;
    while (!open.empty()) {
      if ((out.nodes & 63) == 0 &&
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
                  .count() > options_.timeout_seconds) {
        out.timed_out = true;
        break;
      }
      Node node = open.top();
      open.pop();
      ++out.nodes;
      if (!MayImprove(node)) continue;

      const int u = node.depth;
      for (int l = kUnserved; l < model_.links(); ++l) {
        double f = 0.0;
        if (l != kUnserved) {
          if (node.used[static_cast<size_t>(l)] || !model_.allowed(u, l)) {
            continue;
          }
          f = model_.charged_floor(u, l);
          const auto s = static_cast<size_t>(l / model_.beams());
          if (!model_.per_beam() &&
              node.floor_sum[s] + f > model_.budget_limit()) {
            continue;
          }
        }
        Node child;
        child.choices = node.choices;
        child.used = node.used;
        child.floor_sum = node.floor_sum;
        child.choices[static_cast<size_t>(u)] = l;
        child.depth = u + 1;
        child.violations = node.violations;
        child.price = node.price;
        if (l == kUnserved) {
          child.violations += model_.enforced(u) ? 1 : 0;
        } else {
          child.used[static_cast<size_t>(l)] = 1;
          child.floor_sum[static_cast<size_t>(l / model_.beams())] += f;
        }
        if (child.depth == model_.users()) {
          if (auto e = model_.Evaluate(child.choices);
              e && Better(e->score, incumbent_)) {
            incumbent_ = std::move(e->score);
          }
          continue;
        }
        Bound(child);
        if (!MayImprove(child)) continue;
        child.seq = ++seq_;
        open.push(std::move(child));
      }
    }
    out.best = incumbent_;
    return out;
  }

 private:
  // Whether some leaf under `node` could outrank the incumbent.
  bool MayImprove(const Node& node) const {
    if (node.violation_bound != incumbent_.violations) {
      return node.violation_bound < incumbent_.violations;
    }
    if (!WithinTie(node.bound, incumbent_.objective)) {
      return node.bound > incumbent_.objective;
    }
    // Within tie tolerance only a lexicographically smaller (or equal)
    // prefix can still win.
    return !std::lexicographical_compare(
        incumbent_.key.begin(), incumbent_.key.begin() + node.depth,
        node.choices.begin(), node.choices.begin() + node.depth);
  }

  // Objective bound. Every link is valued at its best power and the
  // undecided users are matched by maximum weight. In per-satellite mode the
  // shared budget is dualized with one price per satellite:
  //
  //   D(price) = sum_s price_s p_max + max_matching sum_l value_l(price_s)
  //
  // bounds every completion for any price >= 0. Prices start from the
  // parent's and are improved by coordinate descent (a golden-section search
  // per satellite on the convex D); the search stops early once the node is
  // dominated by the incumbent.
  void Bound(Node& node) {
    node.violation_bound = node.violations + UnavoidableViolations(node);
    if (model_.per_beam()) {
      node.bound = Dual(node, {});
    } else {
      std::vector<double> price = node.price;
      price.resize(static_cast<size_t>(model_.sats()), 0.0);
      double best = Dual(node, price);
      auto dominated = [&] {
        return node.violation_bound > incumbent_.violations ||
               (node.violation_bound == incumbent_.violations &&
                best < incumbent_.objective &&
                !WithinTie(best, incumbent_.objective));
      };
      for (int sweep = 0; sweep < options_.dual_sweeps && !dominated();
           ++sweep) {
        const double before = best;
        for (int s = 0; s < model_.sats() && !dominated(); ++s) {
          best = MinimizeAlong(node, price, s, best);
        }
        if (before - best <= kTieTolerance * std::fabs(best)) break;
      }
      node.bound = best;
      node.price = std::move(price);
    }
    if (options_.verify_bounds) VerifyBound(node);
  }

  // D(price) for `node`; an empty price vector means all zero.
  double Dual(const Node& node, const std::vector<double>& price) {
    const int links = model_.links();
    const int beams = model_.beams();
    const int free_rows = model_.users() - node.depth;
    auto price_of = [&](int l) {
      return price.empty() ? 0.0 : price[static_cast<size_t>(l / beams)];
    };
    double value = model_.constant();
    for (double x : price) value += x * model_.p_max();
    for (int u = 0; u < node.depth; ++u) {
      const int l = node.choices[static_cast<size_t>(u)];
      if (l != kUnserved) value += LinkValue(u, l, price_of(l));
    }
    weights_.resize(static_cast<size_t>(free_rows) *
                    static_cast<size_t>(links));
    for (int r = 0; r < free_rows; ++r) {
      const int u = node.depth + r;
      for (int l = 0; l < links; ++l) {
        weights_[static_cast<size_t>(r) * static_cast<size_t>(links) +
                 static_cast<size_t>(l)] =
            node.used[static_cast<size_t>(l)] || !model_.allowed(u, l)
                ? kForbiddenEdge
                : LinkValue(u, l, price_of(l));
      }
    }
    return value + MaxWeightMatching(free_rows, links, weights_).weight;
  }

  // Golden-section search for the price of satellite s. Beyond the largest
  // zero-power marginal of its links the dual only grows, which bounds the
  // bracket. Returns the smallest value seen and leaves the matching price
  // in `price`.
  double MinimizeAlong(const Node& node, std::vector<double>& price, int s,
                       double current) {
    const auto su = static_cast<size_t>(s);
    double hi = 0.0;
    for (int u = 0; u < model_.users(); ++u) {
      for (int b = 0; b < model_.beams(); ++b) {
        hi = std::max(hi, model_.gamma(u, s * model_.beams() + b));
      }
    }
    hi *= model_.problem().bandwidth_hz / std::numbers::ln2;
    if (hi <= 0.0) return current;

    double best = current;
    double best_x = price[su];
    auto f = [&](double x) {
      price[su] = x;
      const double v = Dual(node, price);
      if (v < best) {
        best = v;
        best_x = x;
      }
      return v;
    };
    constexpr double kInvPhi = 0.6180339887498949;
    double a = 0.0;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < options_.golden_iterations; ++i) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = f(d);
      }
    }
    price[su] = best_x;
    return best;
  }

  // Best value of link l for user u when power costs `price` per watt, plus
  // its stay bonus. Enforced users never get less than their floor.
  double LinkValue(int u, int l, double price) const {
    const double gamma = model_.gamma(u, l);
    const double p_max = model_.p_max();
    const double w = model_.problem().bandwidth_hz;
    double p = p_max;
    if (price > 0.0 && gamma > 0.0) {
      p = std::clamp(w / (price * std::numbers::ln2) - 1.0 / gamma, 0.0,
                     p_max);
    }
    p = std::max(p, std::min(model_.charged_floor(u, l), p_max));
    return LinkRate(gamma, p, w) - price * p + model_.bonus(u, l);
  }

  // Enforced users below `node` that no completion can place. Each
  // satellite takes at most as many of them as it has free beams and as fit
  // its remaining budget when the smallest floors are chosen; the rest
  // follows from a maximum-cardinality matching against those capacities.
  int UnavoidableViolations(const Node& node) const {
    std::vector<int> rows;
    for (int u = node.depth; u < model_.users(); ++u) {
      if (model_.enforced(u)) rows.push_back(u);
    }
    if (rows.empty()) return 0;
    const int beams = model_.beams();
    std::vector<int> slot_sat;
    for (int s = 0; s < model_.sats(); ++s) {
      int free_beams = 0;
      for (int b = 0; b < beams; ++b) {
        free_beams += node.used[static_cast<size_t>(s * beams + b)] ? 0 : 1;
      }
      int capacity = free_beams;
      if (!model_.per_beam() && capacity > 0) {
        std::vector<double> cheapest;
        for (int u : rows) {
          double f = HUGE_VAL;
          for (int b = 0; b < beams; ++b) {
            const int l = s * beams + b;
            if (!node.used[static_cast<size_t>(l)] && model_.allowed(u, l)) {
              f = std::min(f, model_.charged_floor(u, l));
            }
          }
          if (f < HUGE_VAL) cheapest.push_back(f);
        }
        std::sort(cheapest.begin(), cheapest.end());
        double left = model_.budget_limit() -
                      node.floor_sum[static_cast<size_t>(s)];
        int fits = 0;
        for (double f : cheapest) {
          if (f > left) break;
          left -= f;
          ++fits;
        }
        capacity = std::min(capacity, fits);
      }
      for (int k = 0; k < capacity; ++k) slot_sat.push_back(s);
    }
    const int cols = static_cast<int>(slot_sat.size());
    std::vector<double> weights(rows.size() * static_cast<size_t>(cols),
                                kForbiddenEdge);
    for (size_t r = 0; r < rows.size(); ++r) {
      for (int c = 0; c < cols; ++c) {
        const int s = slot_sat[static_cast<size_t>(c)];
        for (int b = 0; b < beams; ++b) {
          const int l = s * beams + b;
          if (!node.used[static_cast<size_t>(l)] &&
              model_.allowed(rows[r], l)) {
            weights[r * static_cast<size_t>(cols) + static_cast<size_t>(c)] =
                1.0;
            break;
          }
        }
      }
    }
    const MatchingResult m =
        MaxWeightMatching(static_cast<int>(rows.size()), cols, weights);
    return static_cast<int>(rows.size()) -
           static_cast<int>(std::lround(m.weight));
  }

  void VerifyBound(const Node& node) const {
    Enumerator enumerator(model_, 1'000'000);
    enumerator.Run(node.choices, node.depth, [&](const std::vector<int>& c) {
      const auto e = model_.Evaluate(c);
      if (!e) return;
      if (e->score.violations < node.violation_bound ||
          (e->score.objective > node.bound &&
           !WithinTie(e->score.objective, node.bound))) {
        throw std::logic_error(fmt::format(
            "branch-and-bound node at depth {} bounded by ({}, {}) but a "
            "leaf reaches ({}, {})",
            node.depth, node.violation_bound, node.bound,
            e->score.violations, e->score.objective));
      }
    });
  }

  const SlotModel& model_;
  const ExactOptions& options_;
  Score incumbent_;
  long seq_ = 0;
  std::vector<double> weights_;
};

}  // namespace

double PowerFloor(double gamma, double rate_min_bps, double bandwidth_hz) {
  if (rate_min_bps <= 0.0) return 0.0;
  if (gamma <= 0.0) return HUGE_VAL;
  return std::expm1(rate_min_bps / bandwidth_hz * std::numbers::ln2) / gamma;
}

std::vector<bool> EnforcedUsers(const SlotProblem& problem) {
  const Dims& d = problem.dims;
  std::vector<bool> enforced(static_cast<size_t>(d.users), false);
  if (problem.rate_min_bps <= 0.0) return enforced;
  for (int u = 0; u < d.users; ++u) {
    for (int s = 0; s < d.sats && !enforced[static_cast<size_t>(u)]; ++s) {
      for (int b = 0; b < d.beams; ++b) {
        if (problem.visibility(u, s, b) &&
            PowerFloor(problem.gamma(u, s, b), problem.rate_min_bps,
                       problem.bandwidth_hz) <=
                problem.p_max_w * (1.0 + kFloorSlack)) {
          enforced[static_cast<size_t>(u)] = true;
          break;
        }
      }
    }
  }
  return enforced;
}

std::vector<double> UserRates(const Association& assoc,
                              const PowerAllocation& power,
                              const SlotProblem& problem) {
  CheckShapes(assoc, power, problem);
  std::vector<double> rates(static_cast<size_t>(problem.dims.users), 0.0);
  for (int u = 0; u < problem.dims.users; ++u) {
    const auto& l = assoc[u];
    if (!l) continue;
    rates[static_cast<size_t>(u)] =
        LinkRate(problem.gamma(u, l->sat, l->beam),
                 std::max(0.0, power(u, l->sat, l->beam)),
                 problem.bandwidth_hz);
  }
  return rates;
}

double ObjectiveValue(const Association& assoc, const PowerAllocation& power,
                      const SlotProblem& problem) {
  const std::vector<double> rates = UserRates(assoc, power, problem);
  double total = 0.0;
  for (int u = 0; u < problem.dims.users; ++u) {
    const auto& now = assoc[u];
    const auto& before = problem.prev_assoc[u];
    const bool stays = now && before && *now == *before;
    total += rates[static_cast<size_t>(u)];
    if (!stays) {
      total -= problem.alpha * problem.prev_rates[static_cast<size_t>(u)];
    }
  }
  return total;
}

PowerForAssoc OptimalPowerForAssoc(const Association& assoc,
                                   const SlotProblem& problem) {
  const Dims& d = problem.dims;
  PowerForAssoc out;
  out.power = PowerAllocation(d, 0.0);
  CheckShapes(assoc, out.power, problem);
  const std::vector<bool> enforced = EnforcedUsers(problem);

  auto floor_of = [&](int u, const Link& l) {
    return enforced[static_cast<size_t>(u)]
               ? PowerFloor(problem.gamma(u, l.sat, l.beam),
                            problem.rate_min_bps, problem.bandwidth_hz)
               : 0.0;
  };

  if (problem.budget_mode == BudgetMode::kPerBeam) {
    for (int u = 0; u < d.users; ++u) {
      const auto& l = assoc[u];
      if (!l) continue;
      if (floor_of(u, *l) > problem.p_max_w * (1.0 + kFloorSlack)) {
        throw InfeasibleAssociationError(fmt::format(
            "user {} needs {} W on satellite {} beam {} (budget {} W)", u,
            floor_of(u, *l), l->sat, l->beam, problem.p_max_w));
      }
      out.power(u, l->sat, l->beam) = problem.p_max_w;
    }
  } else {
    std::vector<std::vector<int>> on_sat(static_cast<size_t>(d.sats));
    for (int u = 0; u < d.users; ++u) {
      if (assoc[u]) on_sat[static_cast<size_t>(assoc[u]->sat)].push_back(u);
    }
    for (int s = 0; s < d.sats; ++s) {
      const auto& members = on_sat[static_cast<size_t>(s)];
      if (members.empty()) continue;
      std::vector<double> gains, floors;
      for (int u : members) {
        gains.push_back(problem.gamma(u, s, assoc[u]->beam));
        floors.push_back(floor_of(u, *assoc[u]));
      }
      std::vector<double> p;
      try {
        p = Waterfill(gains, problem.p_max_w, floors);
      } catch (const InfeasibleFloorsError& e) {
        throw InfeasibleAssociationError(
            fmt::format("satellite {}: {}", s, e.what()));
      }
      for (size_t i = 0; i < members.size(); ++i) {
        const int u = members[i];
        out.power(u, s, assoc[u]->beam) = p[i];
      }
    }
  }
  out.rates = UserRates(assoc, out.power, problem);
  return out;
}

SlotSolution MakeSolution(Association assoc, PowerAllocation power,
                          const SlotProblem& problem, bool optimal) {
  SlotSolution sol;
  sol.rates = UserRates(assoc, power, problem);
  sol.objective = ObjectiveValue(assoc, power, problem);
  sol.assoc = std::move(assoc);
  sol.power = std::move(power);
  sol.optimal = optimal;
  sol.violations = CheckFeasibility(sol, problem);
  return sol;
}

SlotSolution SolveSlotBruteforce(const SlotProblem& problem,
                                 const BruteforceOptions& options) {
  const SlotModel model(problem);
  std::optional<Score> best;
  Enumerator enumerator(model, options.max_associations);
  enumerator.Run({}, 0, [&](const std::vector<int>& choices) {
    auto e = model.Evaluate(choices);
    if (e && (!best || Better(e->score, *best))) best = std::move(e->score);
  });
  // The all-unserved association is always admissible.
  const Association assoc = model.ToAssociation(best->key);
  SlotSolution sol = MakeSolution(
      assoc, OptimalPowerForAssoc(assoc, problem).power, problem, true);
  sol.stats.nodes = enumerator.visited();
  return sol;
}

SlotSolution SolveSlotExact(const SlotProblem& problem,
                            const ExactOptions& options) {
  const SlotModel model(problem);
  Score initial = model
                      .Evaluate(std::vector<int>(
                          static_cast<size_t>(model.users()), kUnserved))
                      ->score;
  const SlotSolution warm = SolveSlotHeuristic(problem);
  if (auto e = model.Evaluate(warm.assoc.Key(model.beams()));
      e && Better(e->score, initial)) {
    initial = std::move(e->score);
  }

  BranchAndBound bnb(model, options);
  const auto outcome = bnb.Run(initial);
  const Association assoc = model.ToAssociation(outcome.best.key);
  SlotSolution sol =
      MakeSolution(assoc, OptimalPowerForAssoc(assoc, problem).power, problem,
                   !outcome.timed_out);
  sol.stats.nodes = outcome.nodes;
  sol.stats.timed_out = outcome.timed_out;
  return sol;
}

SlotSolution SolveSlotHeuristic(const SlotProblem& problem,
                                const HeuristicOptions& options) {
  const SlotModel model(problem);
  const int users = model.users();
  const int links = model.links();
  const int beams = model.beams();
  const double p_max = model.p_max();
  const double w = problem.bandwidth_hz;

  // Serving an enforced user outranks any throughput difference.
  double priority = 1.0;
  for (int u = 0; u < users; ++u) {
    double best_link = 0.0;
    for (int l = 0; l < links; ++l) {
      best_link = std::max(best_link, model.full_rate(u, l) + model.bonus(u, l));
    }
    priority += best_link;
  }

  std::vector<double> link_power(static_cast<size_t>(users) *
                                     static_cast<size_t>(links),
                                 p_max);
  std::optional<SlotModel::Evaluation> best;
  std::vector<int> previous;
  SolverStats stats;
  std::vector<double> weights(static_cast<size_t>(users) *
                              static_cast<size_t>(links));
  for (int round = 1; round <= options.max_rounds; ++round) {
    for (int u = 0; u < users; ++u) {
      for (int l = 0; l < links; ++l) {
        const size_t i =
            static_cast<size_t>(u) * static_cast<size_t>(links) +
            static_cast<size_t>(l);
        if (!model.allowed(u, l)) {
          weights[i] = kForbiddenEdge;
          continue;
        }
        weights[i] = LinkRate(model.gamma(u, l), link_power[i], w) +
                     model.bonus(u, l) + (model.enforced(u) ? priority : 0.0);
      }
    }
    const MatchingResult m = MaxWeightMatching(users, links, weights);
    std::vector<int> choices = m.row_to_col;

    // Drop the least valuable enforced users from satellites whose floors
    // do not fit.
    if (!model.per_beam()) {
      for (int s = 0; s < model.sats(); ++s) {
        while (true) {
          double sum = 0.0;
          int victim = -1;
          double victim_weight = HUGE_VAL;
          for (int u = 0; u < users; ++u) {
            const int l = choices[static_cast<size_t>(u)];
            if (l == kUnserved || l / beams != s) continue;
            sum += model.charged_floor(u, l);
            const double wgt = weights[static_cast<size_t>(u) *
                                           static_cast<size_t>(links) +
                                       static_cast<size_t>(l)];
            if (model.enforced(u) && wgt < victim_weight) {
              victim_weight = wgt;
              victim = u;
            }
          }
          if (sum <= model.budget_limit() || victim < 0) break;
          choices[static_cast<size_t>(victim)] = kUnserved;
        }
      }
    }

    if (best && choices == previous) break;  // fixed point
    previous = choices;
    auto candidate = model.Evaluate(choices);
    stats.rounds = round;
    if (!candidate) break;
    const bool improved = !best || Better(candidate->score, best->score);
    const bool significant =
        !best || candidate->score.violations < best->score.violations ||
        candidate->score.objective - best->score.objective >
            options.relative_tolerance *
                std::max(1.0, std::fabs(best->score.objective));
    if (improved) best = std::move(candidate);
    stats.objective_trace.push_back(best->score.objective);
    if (!significant) break;

    // Next round: active links keep their power; an idle link is priced as
    // if it joined its satellite's current users.
    std::vector<int> load(static_cast<size_t>(model.sats()), 0);
    for (int c : best->score.key) {
      if (c != kUnserved) ++load[static_cast<size_t>(c / beams)];
    }
    for (int u = 0; u < users; ++u) {
      for (int l = 0; l < links; ++l) {
        const int s = l / beams;
        double p = p_max;
        if (!model.per_beam()) {
          if (best->score.key[static_cast<size_t>(u)] == l) {
            p = best->power.power(u, s, l % beams);
          } else {
            p = p_max / (load[static_cast<size_t>(s)] + 1);
          }
        }
        link_power[static_cast<size_t>(u) * static_cast<size_t>(links) +
                   static_cast<size_t>(l)] = p;
      }
    }
  }

  if (!best) {
    best = model.Evaluate(std::vector<int>(static_cast<size_t>(users),
                                           kUnserved));
  }
  const Association assoc = model.ToAssociation(best->score.key);
  SlotSolution sol =
      MakeSolution(assoc, std::move(best->power.power), problem, false);
  sol.stats = std::move(stats);
  return sol;
}

std::vector<Violation> CheckFeasibility(const SlotSolution& solution,
                                        const SlotProblem& problem) {
  const Dims& d = problem.dims;
  CheckShapes(solution.assoc, solution.power, problem);
  std::vector<Violation> out;
  const double p_tol = 1e-9 * problem.p_max_w;

  // One user per beam, visibility.
  Tensor3<int> load(Dims{1, d.sats, d.beams}, 0);
  for (int u = 0; u < d.users; ++u) {
    const auto& l = solution.assoc[u];
    if (!l) continue;
    ++load(0, l->sat, l->beam);
    if (!problem.visibility(u, l->sat, l->beam)) {
      out.push_back({Constraint::kInvisible, u, l->sat, l->beam, 1.0});
    }
  }
  for (int s = 0; s < d.sats; ++s) {
    for (int b = 0; b < d.beams; ++b) {
      if (load(0, s, b) > 1) {
        out.push_back({Constraint::kBeamShared, -1, s, b,
                       static_cast<double>(load(0, s, b) - 1)});
      }
    }
  }

  // Power: only on active links, within [0, p_max], within budget.
  std::vector<double> sat_power(static_cast<size_t>(d.sats), 0.0);
  for (int s = 0; s < d.sats; ++s) {
    for (int b = 0; b < d.beams; ++b) {
      double beam_power = 0.0;
      for (int u = 0; u < d.users; ++u) {
        const double p = solution.power(u, s, b);
        beam_power += p;
        if (p > p_tol && !solution.assoc.Serves(u, s, b)) {
          out.push_back({Constraint::kPowerWithoutAssociation, u, s, b, p});
        }
        if (p < -p_tol) {
          out.push_back({Constraint::kPowerRange, u, s, b, -p});
        } else if (p > problem.p_max_w + p_tol) {
          out.push_back(
              {Constraint::kPowerRange, u, s, b, p - problem.p_max_w});
        }
      }
      sat_power[static_cast<size_t>(s)] += beam_power;
      if (problem.budget_mode == BudgetMode::kPerBeam &&
          beam_power > problem.p_max_w + p_tol) {
        out.push_back({Constraint::kPowerBudget, -1, s, b,
                       beam_power - problem.p_max_w});
      }
    }
    if (problem.budget_mode == BudgetMode::kPerSatelliteTotal &&
        sat_power[static_cast<size_t>(s)] > problem.p_max_w + p_tol) {
      out.push_back({Constraint::kPowerBudget, -1, s, -1,
                     sat_power[static_cast<size_t>(s)] - problem.p_max_w});
    }
  }

  // Minimum rate.
  if (problem.rate_min_bps > 0.0) {
    const std::vector<double> rates =
        UserRates(solution.assoc, solution.power, problem);
    const double r_tol = 1e-9 * problem.rate_min_bps;
    for (int u = 0; u < d.users; ++u) {
      const double r = rates[static_cast<size_t>(u)];
      if (r < problem.rate_min_bps - r_tol) {
        const auto& l = solution.assoc[u];
        out.push_back({Constraint::kMinRate, u, l ? l->sat : -1,
                       l ? l->beam : -1, problem.rate_min_bps - r});
      }
    }
  }
  return out;
}

std::vector<Violation> CheckAssociationTensor(
    const Tensor3<double>& association, const SlotProblem& problem) {
  const Dims& d = problem.dims;
  if (association.dims() != d) {
    throw std::invalid_argument("association tensor does not match dims");
  }
  std::vector<Violation> out;
  for (int u = 0; u < d.users; ++u) {
    double per_user = 0.0;
    for (int s = 0; s < d.sats; ++s) {
      for (int b = 0; b < d.beams; ++b) {
        const double x = association(u, s, b);
        if (x != 0.0 && x != 1.0) {
          out.push_back({Constraint::kNonBinary, u, s, b,
                         std::min(std::fabs(x), std::fabs(1.0 - x))});
        }
        if (x > 0.0 && !problem.visibility(u, s, b)) {
          out.push_back({Constraint::kInvisible, u, s, b, x});
        }
        per_user += x;
      }
    }
    if (per_user > 1.0) {
      out.push_back({Constraint::kUserMultiple, u, -1, -1, per_user - 1.0});
    }
  }
  for (int s = 0; s < d.sats; ++s) {
    for (int b = 0; b < d.beams; ++b) {
      double per_beam = 0.0;
      for (int u = 0; u < d.users; ++u) per_beam += association(u, s, b);
      if (per_beam > 1.0) {
        out.push_back({Constraint::kBeamShared, -1, s, b, per_beam - 1.0});
      }
    }
  }
  return out;
}

}  // namespace leoho
