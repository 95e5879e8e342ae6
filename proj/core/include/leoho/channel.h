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

// Downlink channel: Rician small-scale fading on top of a four-term path loss
// (free space, atmospheric absorption, ionospheric/tropospheric, rain), the
// noise-limited SNR coefficient and the Shannon rate.

#ifndef LEOHO_CHANNEL_H_
#define LEOHO_CHANNEL_H_

#include <complex>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leoho/geometry.h"
#include "leoho/random.h"

namespace leoho {

struct ChannelRealization {
  std::complex<double> h{1.0, 0.0};
  double k_factor_db = 0.0;

  double PowerGain() const { return std::norm(h); }
};

// h = sqrt(K/(K+1)) h_los + sqrt(1/(K+1)) h_nlos with h_los = 1 and
// h_nlos ~ CN(0, 1). K = -inf dB is the Rayleigh limit. Exactly two normal
// variates are consumed from `rng` per call whatever K is.
ChannelRealization DrawChannel(RandomStream& rng, double k_factor_db);

// Free-space loss [dB] with the carrier in MHz and the range in km.
double FreeSpaceLossDb(double frequency_mhz, double distance_km);

// Zenith attenuation scaled by 1 / sin(elevation). Elevation must be > 0.
double AtmosphericLossDb(double zenith_attenuation_db, double elevation_deg);

// Tabulated ionospheric + tropospheric loss, keyed by carrier and elevation.
// Lookup snaps to the nearest tabulated frequency, then interpolates
// linearly in elevation and clamps at the grid ends.
class LossTable {
 public:
  LossTable() = default;

  void Add(double frequency_ghz, double elevation_deg, double loss_db);
  bool empty() const { return rows_.empty(); }
  double Lookup(double frequency_ghz, double elevation_deg) const;

  // Zero loss at 20 GHz across the whole elevation range.
  static LossTable ZeroAt20Ghz();
  // CSV with the header `frequency_ghz,elevation_deg,loss_db`.
  static LossTable FromCsv(std::istream& in);
  static LossTable FromCsvFile(const std::string& path);

 private:
  // frequency -> (elevation, loss) sorted by elevation.
  std::map<double, std::vector<std::pair<double, double>>> rows_;
};

double IonosphericLossDb(double frequency_ghz, double elevation_deg,
                         const LossTable& table);

// Rain fade. Zero in the temperate clear-sky climate modelled here unless an
// explicit override is supplied.
inline double RainLossDb(std::optional<double> override_db = std::nullopt) {
  return override_db.value_or(0.0);
}

struct PathLossBreakdown {
  double fs_db = 0.0;
  double atm_db = 0.0;
  double iono_db = 0.0;
  double rain_db = 0.0;
  double total_db = 0.0;
};

struct LinkBudget {
  double carrier_ghz = 20.0;
  double zenith_attenuation_db = 0.5;
  LossTable iono_table = LossTable::ZeroAt20Ghz();
  std::optional<double> rain_override_db;
};

// Requires geometry.visible. Throws std::invalid_argument otherwise.
PathLossBreakdown TotalLoss(const LinkGeometry& geometry,
                            const LinkBudget& budget);

struct LinkQuality {
  double gamma_per_watt = 0.0;

  // Shannon rate [bit/s] at transmit power `power_w` over bandwidth
  // `bandwidth_hz`.
  double RateAt(double power_w, double bandwidth_hz) const;
};

// gamma = |h|^2 / (N0 W 10^(L/10)).
LinkQuality SnrCoefficient(const ChannelRealization& channel,
                           const PathLossBreakdown& loss,
                           double noise_psd_w_per_hz, double bandwidth_hz);

// W log2(1 + gamma p). Throws std::invalid_argument for negative power.
double Rate(const LinkQuality& quality, double power_w, double bandwidth_hz);

}  // namespace leoho

#endif  // LEOHO_CHANNEL_H_
