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


#include "leoho/simulator.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "leoho/allocator.h"
#include "leoho/tle.h"
#include "leoho/units.h"

namespace leoho {
namespace {

std::vector<KeplerianElements> LoadConstellation(const ScenarioConfig& c) {
  if (c.tle_file.empty()) {
    return WalkerElements(c.walker.total_sats, c.walker.planes,
                          c.walker.inclination_deg, c.walker.altitude_km,
                          c.walker.phasing, c.start_time);
  }
  std::ifstream in(c.tle_file);
  if (!in) {
    throw std::runtime_error(
        fmt::format("cannot read TLE file '{}'", c.tle_file));
  }
  std::ostringstream text;
  text << in.rdbuf();
  std::vector<KeplerianElements> out;
  for (const Tle& tle : ParseTle(text.str())) {
    out.push_back(KeplerianElements::FromTle(tle));
  }
  return out;
}

Tensor3<std::uint8_t> VisibilityTensor(const std::vector<LinkGeometry>& geom,
                                       Dims dims) {
  Tensor3<std::uint8_t> vis(dims, 0);
  for (int u = 0; u < dims.users; ++u) {
    for (int s = 0; s < dims.sats; ++s) {
      const bool v = geom[static_cast<size_t>(u) *
                              static_cast<size_t>(dims.sats) +
                          static_cast<size_t>(s)]
                         .visible;
      for (int b = 0; b < dims.beams; ++b) vis(u, s, b) = v ? 1 : 0;
    }
  }
  return vis;
}

}  // namespace

std::vector<GroundUser> PlaceUsers(double center_lat_deg,
                                   double center_lon_deg, double radius_km,
                                   int n, RandomStream& rng) {
  if (radius_km < 0.0) throw std::invalid_argument("radius_km must be >= 0");
  const double phi = DegToRad(center_lat_deg);
  const double lambda = DegToRad(center_lon_deg);
  const double e2 = kWgs84Flattening * (2.0 - kWgs84Flattening);
  const double w = std::sqrt(1.0 - e2 * std::sin(phi) * std::sin(phi));
  const double meridional = kEarthRadiusKm * (1.0 - e2) / (w * w * w);
  const double prime_vertical = kEarthRadiusKm / w;
  std::vector<GroundUser> users;
  users.reserve(static_cast<size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    const double r = radius_km * std::sqrt(rng.Uniform());
    const double bearing = kTwoPi * rng.Uniform();
    // Great-circle step on the osculating sphere of the bearing's normal
    // section (Euler's radius of curvature).
    const double c = std::cos(bearing);
    const double s = std::sin(bearing);
    const double radius =
        1.0 / (c * c / meridional + s * s / prime_vertical);
    const double delta = r / radius;
    const double sin_lat = std::sin(phi) * std::cos(delta) +
                           std::cos(phi) * std::sin(delta) * c;
    const double lat = std::asin(std::clamp(sin_lat, -1.0, 1.0));
    const double lon =
        lambda + std::atan2(s * std::sin(delta) * std::cos(phi),
                            std::cos(delta) - std::sin(phi) * sin_lat);
    users.push_back(GroundUser::At(i, RadToDeg(lat), RadToDeg(lon), 0.0));
  }
  return users;
}

Scenario PrepareScenario(const ScenarioConfig& config,
                         std::uint64_t placement_seed) {
  config.Validate();
  Scenario sc;
  sc.config = config;

  const std::vector<KeplerianElements> all = LoadConstellation(config);
  if (static_cast<int>(all.size()) < config.n_sats) {
    throw ConfigError(fmt::format(
        "constellation has {} satellites, n_sats is {}", all.size(),
        config.n_sats));
  }
  const GroundUser center =
      GroundUser::At(-1, config.center_lat_deg, config.center_lon_deg);
  const PropagationOptions opts{.secular_j2 = config.secular_j2};
  std::vector<double> elevation(all.size());
  for (size_t i = 0; i < all.size(); ++i) {
    elevation[i] =
        ElevationAndRange(center, Propagate(all[i], config.start_time, opts))
            .elevation_deg;
  }
  std::vector<int> order(all.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return elevation[static_cast<size_t>(a)] > elevation[static_cast<size_t>(b)];
  });
  order.resize(static_cast<size_t>(config.n_sats));
  for (int i : order) {
    sc.satellites.push_back(all[static_cast<size_t>(i)]);
    sc.source_index.push_back(i);
  }

  RandomStream placement(placement_seed, "placement");
  sc.users = PlaceUsers(config.center_lat_deg, config.center_lon_deg,
                        config.radius_km, config.n_users, placement);

  sc.budget.carrier_ghz = config.carrier_ghz;
  sc.budget.zenith_attenuation_db = config.a_zenith_db;
  sc.budget.rain_override_db = config.rain_db;
  if (!config.iono_table.empty()) {
    sc.budget.iono_table = LossTable::FromCsvFile(config.iono_table);
  }
  return sc;
}

std::vector<LinkGeometry> ComputeGeometry(const Scenario& scenario,
                                          UtcTime time) {
  const PropagationOptions opts{.secular_j2 = scenario.config.secular_j2};
  const size_t n_sats = scenario.satellites.size();
  std::vector<SatelliteState> states;
  states.reserve(n_sats);
  for (size_t s = 0; s < n_sats; ++s) {
    states.push_back(Propagate(scenario.satellites[s], time, opts,
                               static_cast<int>(s)));
  }
  std::vector<LinkGeometry> out;
  out.reserve(scenario.users.size() * n_sats);
  for (const GroundUser& user : scenario.users) {
    for (const SatelliteState& state : states) {
      LinkGeometry g = ElevationAndRange(user, state);
      g.visible = IsVisible(g, scenario.config.elevation_threshold_deg);
      out.push_back(g);
    }
  }
  return out;
}

SlotSolution SolveSlot(const SlotProblem& problem,
                       const ScenarioConfig& config) {
  switch (config.solver) {
    case SolverKind::kExact:
      return SolveSlotExact(problem,
                            ExactOptions{.timeout_seconds = config.solver_timeout_s});
    case SolverKind::kBruteforce:
      return SolveSlotBruteforce(problem);
    case SolverKind::kHeuristic:
      break;
  }
  return SolveSlotHeuristic(problem);
}

RunMetrics RunEpisode(const Scenario& scenario, Policy policy,
                      std::uint64_t seed, const EpisodeOptions& options) {
  const ScenarioConfig& cfg = scenario.config;
  const Dims dims{cfg.n_users, cfg.n_sats, cfg.n_beams};
  RandomStream channel(seed, "channel");

  RunMetrics m;
  m.policy = policy;
  m.seed = seed;
  m.ledger = HandoverLedger(dims.users);
  const std::vector<LinkGeometry> start_geometry =
      ComputeGeometry(scenario, cfg.start_time);
  m.initial =
      MinDistanceAssociation(start_geometry, VisibilityTensor(start_geometry, dims));

  Association prev = m.initial;
  std::vector<double> prev_rates(static_cast<size_t>(dims.users), 0.0);
  std::vector<double> rate_sum(static_cast<size_t>(dims.users), 0.0);
  for (int t = 1; t <= cfg.n_slots; ++t) {
    const std::vector<LinkGeometry> geometry =
        ComputeGeometry(scenario, scenario.SlotTime(t));
    SlotProblem problem = SlotProblem::Empty(dims);
    problem.visibility = VisibilityTensor(geometry, dims);
    for (int u = 0; u < dims.users; ++u) {
      for (int s = 0; s < dims.sats; ++s) {
        const LinkGeometry& g =
            geometry[static_cast<size_t>(u) * static_cast<size_t>(dims.sats) +
                     static_cast<size_t>(s)];
        const PathLossBreakdown loss =
            g.visible ? TotalLoss(g, scenario.budget) : PathLossBreakdown{};
        for (int b = 0; b < dims.beams; ++b) {
          const ChannelRealization h = DrawChannel(channel, cfg.k_factor_db);
          if (!g.visible) continue;
          problem.gamma(u, s, b) =
              SnrCoefficient(h, loss, cfg.n0_w_per_hz, cfg.bandwidth_hz)
                  .gamma_per_watt;
        }
      }
    }
    problem.prev_assoc = prev;
    problem.prev_rates = prev_rates;
    problem.alpha = cfg.alpha;
    problem.p_max_w = cfg.p_max_w;
    problem.rate_min_bps = cfg.rate_min_bps;
    problem.bandwidth_hz = cfg.bandwidth_hz;
    problem.budget_mode = cfg.budget_mode;

    SlotSolution sol = policy == Policy::kOptimized
                           ? SolveSlot(problem, cfg)
                           : MinDistancePolicy(geometry, problem);

    m.ledger.Record(HandoverEvents(sol.assoc, prev));
    m.slot_total_rate.push_back(sol.TotalRate());
    m.slot_objective.push_back(sol.objective);
    for (int u = 0; u < dims.users; ++u) {
      rate_sum[static_cast<size_t>(u)] += sol.rates[static_cast<size_t>(u)];
    }
    if (policy == Policy::kOptimized && !sol.optimal) {
      m.non_optimal_slots.push_back(t);
    }
    if (sol.stats.timed_out) m.timed_out_slots.push_back(t);
    for (const Violation& v : sol.violations) m.violations.emplace_back(t, v);

    prev = sol.assoc;
    prev_rates = sol.rates;
    if (options.keep_slots) {
      m.problems.push_back(std::move(problem));
      m.solutions.push_back(std::move(sol));
    }
  }
  m.user_mean_rate.resize(static_cast<size_t>(dims.users));
  for (int u = 0; u < dims.users; ++u) {
    m.user_mean_rate[static_cast<size_t>(u)] =
        rate_sum[static_cast<size_t>(u)] / cfg.n_slots;
  }
  m.efc = m.ledger.efc();
  return m;
}

RunMetrics RunEpisode(const ScenarioConfig& config, Policy policy,
                      std::uint64_t seed, const EpisodeOptions& options) {
  const Scenario scenario = PrepareScenario(
      config, config.rerandomize_users ? seed : config.master_seed);
  return RunEpisode(scenario, policy, seed, options);
}

AggregateStats Aggregate(const std::vector<RunMetrics>& runs) {
  AggregateStats a;
  a.episodes = static_cast<int>(runs.size());
  if (runs.empty()) return a;
  std::vector<double> samples;
  double handovers = 0.0;
  double efc = 0.0;
  for (const RunMetrics& r : runs) {
    samples.insert(samples.end(), r.user_mean_rate.begin(),
                   r.user_mean_rate.end());
    handovers += static_cast<double>(r.ledger.total());
    efc += r.efc;
    a.non_optimal_slots += static_cast<long>(r.non_optimal_slots.size());
  }
  const double n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += x;
  a.mean_user_rate_bps = sum / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) {
      ss += (x - a.mean_user_rate_bps) * (x - a.mean_user_rate_bps);
    }
    a.std_bps = std::sqrt(ss / (n - 1.0));
  }
  a.mean_handovers = handovers / static_cast<double>(runs.size());
  a.mean_efc = efc / static_cast<double>(runs.size());
  return a;
}

std::vector<RunMetrics> RunReplicates(const ScenarioConfig& config,
                                      Policy policy, int n_runs, int jobs) {
  if (n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
  std::optional<Scenario> shared;
  if (!config.rerandomize_users) {
    shared = PrepareScenario(config, config.master_seed);
  }
  std::vector<RunMetrics> out(static_cast<size_t>(n_runs));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n_runs));
  auto work = [&](int r) {
    try {
      const std::uint64_t seed =
          DeriveSeed(config.master_seed, static_cast<std::uint64_t>(r));
      out[static_cast<size_t>(r)] =
          shared ? RunEpisode(*shared, policy, seed)
                 : RunEpisode(config, policy, seed);
    } catch (...) {
      errors[static_cast<size_t>(r)] = std::current_exception();
    }
  };
  const int workers = std::clamp(jobs, 1, n_runs);
  if (workers == 1) {
    for (int r = 0; r < n_runs; ++r) work(r);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int r = w; r < n_runs; r += workers) work(r);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

MonteCarloResult MonteCarlo(const ScenarioConfig& config, int n_runs,
                            int jobs) {
  MonteCarloResult result;
  result.optimized =
      Aggregate(RunReplicates(config, Policy::kOptimized, n_runs, jobs));
  result.baseline =
      Aggregate(RunReplicates(config, Policy::kMinDistance, n_runs, jobs));
  result.relative_improvement =
      (result.optimized.mean_user_rate_bps -
       result.baseline.mean_user_rate_bps) /
      result.baseline.mean_user_rate_bps;
  return result;
}

}  // namespace leoho
