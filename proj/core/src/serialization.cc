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


#include "leoho/serialization.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace leoho {
namespace {

using nlohmann::json;

template <typename T>
json NestedTensor(const Tensor3<T>& t) {
  const Dims& d = t.dims();
  json out = json::array();
  for (int u = 0; u < d.users; ++u) {
    json per_sat = json::array();
    for (int s = 0; s < d.sats; ++s) {
      json per_beam = json::array();
      for (int b = 0; b < d.beams; ++b) per_beam.push_back(t(u, s, b));
      per_sat.push_back(std::move(per_beam));
    }
    out.push_back(std::move(per_sat));
  }
  return out;
}

template <typename T>
Tensor3<T> TensorFromJson(const json& j, Dims d, const char* name) {
  Tensor3<T> t(d);
  if (!j.is_array() || j.size() != static_cast<size_t>(d.users)) {
    throw std::invalid_argument(fmt::format("'{}' must have {} rows", name,
                                            d.users));
  }
  for (int u = 0; u < d.users; ++u) {
    const json& row = j[static_cast<size_t>(u)];
    if (!row.is_array() || row.size() != static_cast<size_t>(d.sats)) {
      throw std::invalid_argument(fmt::format("'{}'[{}] must have {} entries",
                                              name, u, d.sats));
    }
    for (int s = 0; s < d.sats; ++s) {
      const json& cell = row[static_cast<size_t>(s)];
      if (!cell.is_array() || cell.size() != static_cast<size_t>(d.beams)) {
        throw std::invalid_argument(fmt::format(
            "'{}'[{}][{}] must have {} entries", name, u, s, d.beams));
      }
      for (int b = 0; b < d.beams; ++b) {
        t(u, s, b) = cell[static_cast<size_t>(b)].get<T>();
      }
    }
  }
  return t;
}

json AssocToJson(const Association& a) {
  json out = json::array();
  for (int u = 0; u < a.users(); ++u) {
    out.push_back(a[u] ? json::array({a[u]->sat, a[u]->beam}) : json(nullptr));
  }
  return out;
}

Association AssocFromJson(const json& j, int users) {
  if (!j.is_array() || j.size() != static_cast<size_t>(users)) {
    throw std::invalid_argument(
        fmt::format("association must list {} users", users));
  }
  Association a(users);
  for (int u = 0; u < users; ++u) {
    const json& e = j[static_cast<size_t>(u)];
    if (e.is_null()) continue;
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("association entries are [sat, beam] or null");
    }
    a[u] = Link{e[0].get<int>(), e[1].get<int>()};
  }
  return a;
}

int Code(const std::optional<Link>& l, bool sat) {
  if (!l) return -1;
  return sat ? l->sat : l->beam;
}


}  // namespace

json ToJson(const SlotProblem& p) {
  json j;
  j["users"] = p.dims.users;
  j["sats"] = p.dims.sats;
  j["beams"] = p.dims.beams;
  j["gamma"] = NestedTensor(p.gamma);
  j["visibility"] = NestedTensor(p.visibility);
  j["prev_assoc"] = AssocToJson(p.prev_assoc);
  j["prev_rates_bps"] = p.prev_rates;
  j["alpha"] = p.alpha;
  j["p_max_w"] = p.p_max_w;
  j["rate_min_bps"] = p.rate_min_bps;
  j["bandwidth_hz"] = p.bandwidth_hz;
  j["budget_mode"] = std::string(ToString(p.budget_mode));
  return j;
}

SlotProblem ProblemFromJson(const json& j) {
  try {
    const Dims d{j.at("users").get<int>(), j.at("sats").get<int>(),
                 j.at("beams").get<int>()};
    if (d.users < 0 || d.sats < 0 || d.beams < 0) {
      throw std::invalid_argument("negative dimension");
    }
    SlotProblem p = SlotProblem::Empty(d);
    p.gamma = TensorFromJson<double>(j.at("gamma"), d, "gamma");
    p.visibility =
        TensorFromJson<std::uint8_t>(j.at("visibility"), d, "visibility");
    p.prev_assoc = AssocFromJson(j.at("prev_assoc"), d.users);
    p.prev_rates = j.at("prev_rates_bps").get<std::vector<double>>();
    p.alpha = j.at("alpha").get<double>();
    p.p_max_w = j.at("p_max_w").get<double>();
    p.rate_min_bps = j.at("rate_min_bps").get<double>();
    p.bandwidth_hz = j.at("bandwidth_hz").get<double>();
    p.budget_mode = ParseBudgetMode(j.at("budget_mode").get<std::string>());
    p.Validate();
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(fmt::format("problem.json: {}", e.what()));
  }
}

json ToJson(const SlotSolution& s) {
  json j;
  j["assoc"] = AssocToJson(s.assoc);
  j["power_w"] = NestedTensor(s.power);
  j["rates_bps"] = s.rates;
  j["total_rate_bps"] = s.TotalRate();
  j["objective"] = s.objective;
  j["optimal"] = s.optimal;
  json v = json::array();
  for (const Violation& x : s.violations) {
    v.push_back({{"constraint", std::string(ToString(x.constraint))},
                 {"user", x.user},
                 {"sat", x.sat},
                 {"beam", x.beam},
                 {"magnitude", x.magnitude}});
  }
  j["violations"] = std::move(v);
  j["stats"] = {{"nodes", s.stats.nodes},
                {"rounds", s.stats.rounds},
                {"timed_out", s.stats.timed_out}};
  return j;
}

SlotSolution SolutionFromJson(const json& j) {
  try {
    SlotSolution s;
    const json& power = j.at("power_w");
    const Dims d{static_cast<int>(power.size()),
                 power.empty() ? 0 : static_cast<int>(power[0].size()),
                 power.empty() || power[0].empty()
                     ? 0
                     : static_cast<int>(power[0][0].size())};
    s.power = TensorFromJson<double>(power, d, "power_w");
    s.assoc = AssocFromJson(j.at("assoc"), d.users);
    s.rates = j.at("rates_bps").get<std::vector<double>>();
    s.objective = j.at("objective").get<double>();
    s.optimal = j.at("optimal").get<bool>();
    for (const json& v : j.at("violations")) {
      s.violations.push_back(
          {ParseConstraint(v.at("constraint").get<std::string>()),
           v.at("user").get<int>(), v.at("sat").get<int>(),
           v.at("beam").get<int>(), v.at("magnitude").get<double>()});
    }
    const json& st = j.at("stats");
    s.stats.nodes = st.at("nodes").get<long>();
    s.stats.rounds = st.at("rounds").get<int>();
    s.stats.timed_out = st.at("timed_out").get<bool>();
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(fmt::format("solution.json: {}", e.what()));
  }
}

void WriteGeometryCsv(std::ostream& out, const Scenario& scenario) {
  out << "t,user_id,sat_id,distance_km,elevation_deg,visible\n";
  const int sats = static_cast<int>(scenario.satellites.size());
  for (int t = 1; t <= scenario.config.n_slots; ++t) {
    const std::vector<LinkGeometry> g =
        ComputeGeometry(scenario, scenario.SlotTime(t));
    for (size_t u = 0; u < scenario.users.size(); ++u) {
      for (int s = 0; s < sats; ++s) {
        const LinkGeometry& x =
            g[u * static_cast<size_t>(sats) + static_cast<size_t>(s)];
        fmt::print(out, "{},{},{},{},{},{}\n", t, u, s, x.distance_km,
                   x.elevation_deg, x.visible ? 1 : 0);
      }
    }
  }
}

void WriteMetricsCsv(std::ostream& out, const RunMetrics& m) {
  out << "t,policy,total_rate_bps,objective,handovers_cumulative\n";
  for (size_t i = 0; i < m.slot_total_rate.size(); ++i) {
    fmt::print(out, "{},{},{},{},{}\n", i + 1, ToString(m.policy),
               m.slot_total_rate[i], m.slot_objective[i],
               m.ledger.CumulativeAt(static_cast<int>(i)));
  }
}

void WriteHandoverCsv(std::ostream& out, const RunMetrics& m) {
  if (m.solutions.size() != static_cast<size_t>(m.ledger.transitions())) {
    throw std::invalid_argument(
        "handover log needs an episode run with keep_slots");
  }
  out << "t,user_id,prev_sat,prev_beam,curr_sat,curr_beam,event\n";
  const Association* prev = &m.initial;
  for (size_t t = 0; t < m.solutions.size(); ++t) {
    const Association& curr = m.solutions[t].assoc;
    for (int u = 0; u < curr.users(); ++u) {
      fmt::print(out, "{},{},{},{},{},{},{}\n", t + 1, u,
                 Code((*prev)[u], true), Code((*prev)[u], false),
                 Code(curr[u], true), Code(curr[u], false),
                 m.ledger.flags()[t][static_cast<size_t>(u)] ? 1 : 0);
    }
    prev = &curr;
  }
}

void WriteCompareCsv(std::ostream& out, const RunMetrics& opt,
                     const RunMetrics& base) {
  if (opt.slot_total_rate.size() != base.slot_total_rate.size()) {
    throw std::invalid_argument("compared episodes differ in length");
  }
  out << "t,optimized_total_rate_bps,baseline_total_rate_bps,"
         "optimized_handovers,baseline_handovers,"
         "optimized_handovers_cumulative,baseline_handovers_cumulative\n";
  for (size_t i = 0; i < opt.slot_total_rate.size(); ++i) {
    const auto& fo = opt.ledger.flags()[i];
    const auto& fb = base.ledger.flags()[i];
    fmt::print(out, "{},{},{},{},{},{},{}\n", i + 1, opt.slot_total_rate[i],
               base.slot_total_rate[i], std::count(fo.begin(), fo.end(), true),
               std::count(fb.begin(), fb.end(), true),
               opt.ledger.CumulativeAt(static_cast<int>(i)),
               base.ledger.CumulativeAt(static_cast<int>(i)));
  }
}

json CompareSummaryJson(const RunMetrics& opt, const RunMetrics& base) {
  auto one = [](const RunMetrics& m) {
    double total = 0.0;
    for (double r : m.slot_total_rate) total += r;
    double mean_user = 0.0;
    for (double r : m.user_mean_rate) mean_user += r;
    if (!m.user_mean_rate.empty()) {
      mean_user /= static_cast<double>(m.user_mean_rate.size());
    }
    return json{{"total_handovers", m.ledger.total()},
                {"efc", m.efc},
                {"mean_user_rate_bps", mean_user},
                {"sum_total_rate_bps", total},
                {"non_optimal_slots", m.non_optimal_slots.size()}};
  };
  return {{"seed", opt.seed},
          {"optimized", one(opt)},
          {"min_distance", one(base)}};
}

json ToJson(const AggregateStats& a) {
  return {{"episodes", a.episodes},
          {"mean_user_rate_bps", a.mean_user_rate_bps},
          {"std_bps", a.std_bps},
          {"mean_handovers", a.mean_handovers},
          {"mean_efc", a.mean_efc},
          {"non_optimal_slots", a.non_optimal_slots}};
}

json ToJson(const MonteCarloResult& r) {
  return {{"optimized", ToJson(r.optimized)},
          {"min_distance", ToJson(r.baseline)},
          {"relative_improvement", r.relative_improvement}};
}

}  // namespace leoho
