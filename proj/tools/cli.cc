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


#include "cli.h"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "leoho/config.h"
#include "leoho/serialization.h"
#include "leoho/simulator.h"
#include "leoho/tle.h"

namespace leoho::cli {
namespace {

namespace fs = std::filesystem;

// Failure to read or write a file; maps to kExitIo.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  bool print_config = false;
  std::string policy = "optimized";
  int runs = 100;
  int jobs = 1;
  std::string tle_path;
};

void AddCommon(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "Scenario config (JSON)");
  cmd->add_option("--out", f.out_dir, "Output directory")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Master seed override");
  cmd->add_option("--set", f.overrides, "Config override key=value")
      ->allow_extra_args(false);
  cmd->add_flag("--print-config", f.print_config,
                "Print the effective config and exit");
}

ScenarioConfig ResolveConfig(const Flags& f) {
  ScenarioConfig config;
  if (!f.config_path.empty()) {
    if (!fs::exists(f.config_path)) {
      throw IoError(fmt::format("config file '{}' not found", f.config_path));
    }
    try {
      config = LoadConfig(f.config_path);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  }
  const std::vector<std::string_view> overrides(f.overrides.begin(),
                                                f.overrides.end());
  ApplyOverrides(config, overrides);
  if (f.seed) config.master_seed = *f.seed;
  return config;
}

fs::path PrepareOutDir(const Flags& f) {
  const fs::path dir(f.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError(fmt::format("cannot create output directory '{}': {}",
                              f.out_dir, ec.message()));
  }
  return dir;
}

void WriteFile(const fs::path& path,
               const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  body(out);
  out.flush();
  if (!out) throw IoError(fmt::format("error writing '{}'", path.string()));
}

void WriteJson(const fs::path& path, const nlohmann::json& j) {
  WriteFile(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

std::uint64_t EpisodeSeed(const ScenarioConfig& c) {
  return DeriveSeed(c.master_seed, 0);
}

void WarnNonOptimal(const RunMetrics& m, std::ostream& err) {
  for (int t : m.timed_out_slots) {
    fmt::print(err, "warning: slot {} hit the solver timeout; the incumbent "
                    "was kept\n", t);
  }
}

int CmdRun(const Flags& f, std::ostream& out, std::ostream& err) {
  const ScenarioConfig config = ResolveConfig(f);
  const Policy policy = ParsePolicy(f.policy);
  const fs::path dir = PrepareOutDir(f);
  const RunMetrics m = RunEpisode(config, policy, EpisodeSeed(config),
                                  EpisodeOptions{.keep_slots = true});
  WriteFile(dir / "metrics.csv", [&](std::ostream& o) { WriteMetricsCsv(o, m); });
  WriteFile(dir / "handovers.csv",
            [&](std::ostream& o) { WriteHandoverCsv(o, m); });
  const fs::path slots = dir / "slots";
  fs::create_directories(slots);
  for (size_t i = 0; i < m.solutions.size(); ++i) {
    const std::string stem = fmt::format("slot_{:03d}", i + 1);
    WriteJson(slots / (stem + ".problem.json"), ToJson(m.problems[i]));
    WriteJson(slots / (stem + ".solution.json"), ToJson(m.solutions[i]));
  }
  WarnNonOptimal(m, err);
  fmt::print(out, "{}: {} slots, {} handovers, EFC {:.4f}, wrote {}\n",
             ToString(policy), m.slot_total_rate.size(), m.ledger.total(),
             m.efc, (dir / "metrics.csv").string());
  return kExitOk;
}

int CmdCompare(const Flags& f, std::ostream& out, std::ostream& err) {
  const ScenarioConfig config = ResolveConfig(f);
  const fs::path dir = PrepareOutDir(f);
  const Scenario scenario = PrepareScenario(config, config.master_seed);
  const std::uint64_t seed = EpisodeSeed(config);
  const Scenario per_seed = config.rerandomize_users
                                ? PrepareScenario(config, seed)
                                : scenario;
  const RunMetrics opt = RunEpisode(per_seed, Policy::kOptimized, seed);
  const RunMetrics base = RunEpisode(per_seed, Policy::kMinDistance, seed);
  WriteFile(dir / "compare.csv",
            [&](std::ostream& o) { WriteCompareCsv(o, opt, base); });
  WriteJson(dir / "compare_summary.json", CompareSummaryJson(opt, base));
  WriteFile(dir / "metrics_optimized.csv",
            [&](std::ostream& o) { WriteMetricsCsv(o, opt); });
  WriteFile(dir / "metrics_min_distance.csv",
            [&](std::ostream& o) { WriteMetricsCsv(o, base); });
  WarnNonOptimal(opt, err);
  fmt::print(out, "handovers: optimized {}, min_distance {}; wrote {}\n",
             opt.ledger.total(), base.ledger.total(),
             (dir / "compare.csv").string());
  return kExitOk;
}

int CmdMonteCarlo(const Flags& f, std::ostream& out, std::ostream&) {
  const ScenarioConfig config = ResolveConfig(f);
  const fs::path dir = PrepareOutDir(f);
  const MonteCarloResult r = MonteCarlo(config, f.runs, f.jobs);
  nlohmann::json j = ToJson(r);
  j["runs"] = f.runs;
  j["master_seed"] = config.master_seed;
  WriteJson(dir / "aggregate.json", j);
  fmt::print(out,
             "mean user rate: optimized {:.6g} bit/s, min_distance {:.6g} "
             "bit/s ({:+.1f}%); wrote {}\n",
             r.optimized.mean_user_rate_bps, r.baseline.mean_user_rate_bps,
             100.0 * r.relative_improvement,
             (dir / "aggregate.json").string());
  return kExitOk;
}

int CmdGeometry(const Flags& f, std::ostream& out, std::ostream&) {
  const ScenarioConfig config = ResolveConfig(f);
  const fs::path dir = PrepareOutDir(f);
  const Scenario scenario = PrepareScenario(config, config.master_seed);
  WriteFile(dir / "geometry.csv",
            [&](std::ostream& o) { WriteGeometryCsv(o, scenario); });
  fmt::print(out, "wrote {}\n", (dir / "geometry.csv").string());
  return kExitOk;
}

int CmdValidateTle(const Flags& f, std::ostream& out, std::ostream& err) {
  std::ifstream in(f.tle_path);
  if (!in) throw IoError(fmt::format("cannot read '{}'", f.tle_path));
  std::ostringstream text;
  text << in.rdbuf();
  try {
    const std::vector<Tle> tles = ParseTle(text.str());
    fmt::print(out, "{}: {} element sets OK\n", f.tle_path, tles.size());
    return kExitOk;
  } catch (const TleParseError& e) {
    fmt::print(err, "{}: {}\n", f.tle_path, e.what());
    return kExitUsage;
  }
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"LEO downlink association and handover simulator", "leoho"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* run = app.add_subcommand("run", "Run one episode");
  AddCommon(run, f);
  run->add_option("--policy", f.policy, "optimized or min-distance")
      ->check(CLI::IsMember({"optimized", "min-distance", "min_distance"}))
      ->capture_default_str();

  CLI::App* compare =
      app.add_subcommand("compare", "Run both policies on identical seeds");
  AddCommon(compare, f);

  CLI::App* mc = app.add_subcommand("montecarlo", "Monte Carlo campaign");
  AddCommon(mc, f);
  mc->add_option("--runs", f.runs, "Replicates per policy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mc->add_option("--jobs", f.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* geometry =
      app.add_subcommand("geometry", "Dump the visibility timeline");
  AddCommon(geometry, f);

  CLI::App* validate =
      app.add_subcommand("validate-tle", "Check a TLE file");
  validate->add_option("file", f.tle_path, "TLE file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return CmdValidateTle(f, out, err);
    if (f.print_config) {
      out << ToJson(ResolveConfig(f)).dump(2) << '\n';
      return kExitOk;
    }
    if (run->parsed()) return CmdRun(f, out, err);
    if (compare->parsed()) return CmdCompare(f, out, err);
    if (mc->parsed()) return CmdMonteCarlo(f, out, err);
    if (geometry->parsed()) return CmdGeometry(f, out, err);
  } catch (const IoError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitIo;
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    // Unreadable TLE or loss-table files referenced by the config.
    fmt::print(err, "error: {}\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace leoho::cli
