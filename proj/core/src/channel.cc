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

#include "leoho/channel.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "leoho/units.h"

namespace leoho {

ChannelRealization DrawChannel(RandomStream& rng, double k_factor_db) {
  if (std::isnan(k_factor_db) || k_factor_db == HUGE_VAL) {
    throw std::invalid_argument("Rician K factor must be finite or -inf dB");
  }
  const double re = rng.StandardNormal();
  const double im = rng.StandardNormal();
  const std::complex<double> nlos(re * std::sqrt(0.5), im * std::sqrt(0.5));

  const double k = std::isinf(k_factor_db) ? 0.0 : DbToLinear(k_factor_db);
  const double los_weight = std::sqrt(k / (k + 1.0));
  const double nlos_weight = std::sqrt(1.0 / (k + 1.0));

  ChannelRealization out;
  out.k_factor_db = k_factor_db;
  out.h = los_weight * std::complex<double>(1.0, 0.0) + nlos_weight * nlos;
  return out;
}

double FreeSpaceLossDb(double frequency_mhz, double distance_km) {
  if (!(frequency_mhz > 0.0) || !(distance_km > 0.0)) {
    throw std::invalid_argument(
        fmt::format("free-space loss needs positive inputs (f = {} MHz, "
                    "d = {} km)",
                    frequency_mhz, distance_km));
  }
  return 32.45 + 20.0 * std::log10(frequency_mhz) +
         20.0 * std::log10(distance_km);
}

double AtmosphericLossDb(double zenith_attenuation_db, double elevation_deg) {
  if (!(elevation_deg > 0.0)) {
    throw std::logic_error(fmt::format(
        "atmospheric loss requested below the horizon (elevation {} deg)",
        elevation_deg));
  }
  // The sine is evaluated in extended precision and rounded once, so
  // elevations with exact sines (30, 90 deg) give exactly A / sin.
  const long double rad = static_cast<long double>(elevation_deg) *
                          (std::numbers::pi_v<long double> / 180.0L);
  return zenith_attenuation_db / static_cast<double>(std::sin(rad));
}

void LossTable::Add(double frequency_ghz, double elevation_deg,
                    double loss_db) {
  if (!std::isfinite(frequency_ghz) || !std::isfinite(elevation_deg) ||
      !std::isfinite(loss_db)) {
    throw std::invalid_argument("loss table entries must be finite");
  }
  if (loss_db < 0.0) {
    throw std::invalid_argument("loss table entries must be non-negative");
  }
  auto& row = rows_[frequency_ghz];
  const auto it = std::lower_bound(
      row.begin(), row.end(), elevation_deg,
      [](const auto& entry, double e) { return entry.first < e; });
  if (it != row.end() && it->first == elevation_deg) {
    throw std::invalid_argument(fmt::format(
        "duplicate loss table entry at {} GHz, {} deg", frequency_ghz,
        elevation_deg));
  }
  row.insert(it, {elevation_deg, loss_db});
}

double LossTable::Lookup(double frequency_ghz, double elevation_deg) const {
  if (rows_.empty()) throw std::invalid_argument("loss table is empty");

  // Nearest tabulated frequency; ties go to the lower one.
  auto upper = rows_.lower_bound(frequency_ghz);
  auto chosen = upper;
  if (upper == rows_.end()) {
    chosen = std::prev(upper);
  } else if (upper != rows_.begin()) {
    auto lower = std::prev(upper);
    if (frequency_ghz - lower->first <= upper->first - frequency_ghz) {
      chosen = lower;
    }
  }
  const auto& row = chosen->second;
  if (elevation_deg <= row.front().first) return row.front().second;
  if (elevation_deg >= row.back().first) return row.back().second;
  const auto hi = std::upper_bound(
      row.begin(), row.end(), elevation_deg,
      [](double e, const auto& entry) { return e < entry.first; });
  const auto lo = std::prev(hi);
  const double t = (elevation_deg - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

LossTable LossTable::ZeroAt20Ghz() {
  LossTable table;
  table.Add(20.0, 0.0, 0.0);
  table.Add(20.0, 90.0, 0.0);
  return table;
}

LossTable LossTable::FromCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("loss table CSV is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "frequency_ghz,elevation_deg,loss_db") {
    throw std::invalid_argument(
        "loss table CSV header must be 'frequency_ghz,elevation_deg,loss_db'");
  }
  LossTable table;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    double f = 0.0, e = 0.0, l = 0.0;
    char c1 = 0, c2 = 0;
    if (!(fields >> f >> c1 >> e >> c2 >> l) || c1 != ',' || c2 != ',') {
      throw std::invalid_argument(
          fmt::format("loss table CSV line {}: expected three numbers",
                      line_number));
    }
    table.Add(f, e, l);
  }
  if (table.empty()) throw std::invalid_argument("loss table CSV has no rows");
  return table;
}

LossTable LossTable::FromCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::ios_base::failure("cannot open loss table '" + path + "'");
  }
  return FromCsv(in);
}

double IonosphericLossDb(double frequency_ghz, double elevation_deg,
                         const LossTable& table) {
  return table.Lookup(frequency_ghz, elevation_deg);
}

PathLossBreakdown TotalLoss(const LinkGeometry& geometry,
                            const LinkBudget& budget) {
  if (!geometry.visible) {
    throw std::invalid_argument("path loss requested for an invisible link");
  }
  PathLossBreakdown loss;
  loss.fs_db = FreeSpaceLossDb(budget.carrier_ghz * 1000.0,
                               geometry.distance_km);
  loss.atm_db =
      AtmosphericLossDb(budget.zenith_attenuation_db, geometry.elevation_deg);
  loss.iono_db = IonosphericLossDb(budget.carrier_ghz, geometry.elevation_deg,
                                   budget.iono_table);
  loss.rain_db = RainLossDb(budget.rain_override_db);
  loss.total_db = loss.fs_db + loss.atm_db + loss.iono_db + loss.rain_db;
  return loss;
}

double LinkQuality::RateAt(double power_w, double bandwidth_hz) const {
  return Rate(*this, power_w, bandwidth_hz);
}

LinkQuality SnrCoefficient(const ChannelRealization& channel,
                           const PathLossBreakdown& loss,
                           double noise_psd_w_per_hz, double bandwidth_hz) {
  if (!(noise_psd_w_per_hz > 0.0) || !(bandwidth_hz > 0.0)) {
    throw std::invalid_argument("noise density and bandwidth must be > 0");
  }
  return {channel.PowerGain() /
          (noise_psd_w_per_hz * bandwidth_hz * DbToLinear(loss.total_db))};
}

double Rate(const LinkQuality& quality, double power_w, double bandwidth_hz) {
  if (power_w < 0.0) {
    throw std::invalid_argument(
        fmt::format("negative transmit power {} W", power_w));
  }
  const double snr = quality.gamma_per_watt * power_w;
  // log1p keeps precision in the low-SNR regime typical of LEO downlinks;
  // log2 keeps powers of two exact above it.
  if (snr < 1.0) return bandwidth_hz * (std::log1p(snr) / std::numbers::ln2);
  return bandwidth_hz * std::log2(1.0 + snr);
}

}  // namespace leoho
