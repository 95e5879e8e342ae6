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

#include "leoho/orbit.h"

#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "leoho/units.h"

namespace leoho {
namespace {

constexpr int kMaxKeplerIterations = 50;
constexpr double kJ2000JulianDate = 2451545.0;

Eigen::Matrix3d RotZ(double angle) {
  return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}
Eigen::Matrix3d RotX(double angle) {
  return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitX()).toRotationMatrix();
}

}  // namespace

KeplerianElements KeplerianElements::FromTle(const Tle& tle) {
  KeplerianElements el;
  el.epoch = tle.epoch();
  el.semi_major_axis_km = tle.SemiMajorAxisKm();
  el.eccentricity = tle.eccentricity;
  el.inclination_rad = DegToRad(tle.inclination_deg);
  el.raan_rad = DegToRad(tle.raan_deg);
  el.arg_perigee_rad = DegToRad(tle.arg_perigee_deg);
  el.mean_anomaly_rad = DegToRad(tle.mean_anomaly_deg);
  return el;
}

double KeplerianElements::MeanMotion() const {
  return std::sqrt(kMuEarth / (semi_major_axis_km * semi_major_axis_km *
                               semi_major_axis_km));
}

double KeplerianElements::PeriodSeconds() const { return kTwoPi / MeanMotion(); }

double Gmst(UtcTime t) {
  const double centuries = (t.JulianDate() - kJ2000JulianDate) / 36525.0;
  // Seconds of sidereal time; the 876600 h term carries the daily rotation.
  const double seconds =
      67310.54841 +
      (876600.0 * 3600.0 + 8640184.812866) * centuries +
      0.093104 * centuries * centuries -
      6.2e-6 * centuries * centuries * centuries;
  return WrapRadians(std::fmod(seconds, kSecondsPerDay) * (kTwoPi / 86400.0));
}

double SolveKepler(double mean_anomaly_rad, double eccentricity) {
  const double m = WrapRadians(mean_anomaly_rad);
  double e_anom = eccentricity < 0.8 ? m : kPi;
  for (int i = 0; i < kMaxKeplerIterations; ++i) {
    const double f = e_anom - eccentricity * std::sin(e_anom) - m;
    const double fp = 1.0 - eccentricity * std::cos(e_anom);
    const double step = f / fp;
    e_anom -= step;
    if (std::fabs(step) < 1e-14) return e_anom;
  }
  throw PropagationError(
      fmt::format("Kepler equation did not converge after {} iterations "
                  "(M = {}, e = {})",
                  kMaxKeplerIterations, mean_anomaly_rad, eccentricity));
}

SatelliteState Propagate(const KeplerianElements& el, UtcTime t,
                         const PropagationOptions& options, int sat_id) {
  const double e = el.eccentricity;
  if (!(e >= 0.0) || e >= 1.0) {
    throw PropagationError(
        fmt::format("non-elliptic elements (e = {}) cannot be propagated", e));
  }
  if (!(el.semi_major_axis_km > 0.0)) {
    throw PropagationError("semi-major axis must be positive");
  }
  const double dt = t - el.epoch;
  if (std::fabs(dt) > options.warn_after_days * kSecondsPerDay) {
    spdlog::warn("propagating satellite {} {:.1f} days from its epoch", sat_id,
                 dt / kSecondsPerDay);
  }

  const double a = el.semi_major_axis_km;
  const double n = el.MeanMotion();
  double raan = el.raan_rad;
  double argp = el.arg_perigee_rad;
  if (options.secular_j2) {
    const double p = a * (1.0 - e * e);
    const double k = 1.5 * n * kJ2 * (kEarthRadiusKm / p) * (kEarthRadiusKm / p);
    const double cos_i = std::cos(el.inclination_rad);
    raan += -k * cos_i * dt;
    argp += 0.5 * k * (5.0 * cos_i * cos_i - 1.0) * dt;
  }

  const double big_e = SolveKepler(el.mean_anomaly_rad + n * dt, e);
  const double cos_e = std::cos(big_e);
  const double sin_e = std::sin(big_e);
  const double root = std::sqrt(1.0 - e * e);
  const double r = a * (1.0 - e * cos_e);

  const Eigen::Vector3d r_pqw(a * (cos_e - e), a * root * sin_e, 0.0);
  const double v_scale = std::sqrt(kMuEarth * a) / r;
  const Eigen::Vector3d v_pqw(-v_scale * sin_e, v_scale * root * cos_e, 0.0);

  const Eigen::Matrix3d pqw_to_eci =
      RotZ(raan) * RotX(el.inclination_rad) * RotZ(argp);

  SatelliteState state;
  state.sat_id = sat_id;
  state.time = t;
  state.position_eci = pqw_to_eci * r_pqw;
  state.velocity_eci = pqw_to_eci * v_pqw;

  const Eigen::Matrix3d eci_to_ecef = RotZ(-Gmst(t));
  const Eigen::Vector3d omega(0.0, 0.0, kEarthRotationRadPerSec);
  state.position_ecef = eci_to_ecef * state.position_eci;
  state.velocity_ecef =
      eci_to_ecef * state.velocity_eci - omega.cross(state.position_ecef);
  return state;
}

SatelliteState Propagate(const Tle& tle, UtcTime t,
                         const PropagationOptions& options, int sat_id) {
  return Propagate(KeplerianElements::FromTle(tle), t, options, sat_id);
}

std::vector<KeplerianElements> WalkerElements(int total_sats, int planes,
                                              double inclination_deg,
                                              double altitude_km, int phasing,
                                              UtcTime epoch) {
  if (total_sats <= 0 || planes <= 0) {
    throw std::invalid_argument("Walker constellation needs positive counts");
  }
  if (total_sats % planes != 0) {
    throw std::invalid_argument(fmt::format(
        "Walker constellation: {} satellites not divisible by {} planes",
        total_sats, planes));
  }
  if (!(altitude_km > 0.0)) {
    throw std::invalid_argument("Walker constellation altitude must be > 0");
  }
  const int per_plane = total_sats / planes;
  std::vector<KeplerianElements> out;
  out.reserve(static_cast<size_t>(total_sats));
  for (int p = 0; p < planes; ++p) {
    for (int k = 0; k < per_plane; ++k) {
      KeplerianElements el;
      el.epoch = epoch;
      el.semi_major_axis_km = kEarthRadiusKm + altitude_km;
      el.inclination_rad = DegToRad(inclination_deg);
      el.raan_rad = DegToRad(360.0 * p / planes);
      el.mean_anomaly_rad =
          WrapRadians(DegToRad(360.0 * k / per_plane +
                               360.0 * phasing * p / total_sats));
      out.push_back(el);
    }
  }
  return out;
}

std::vector<SatelliteState> SynthWalker(int total_sats, int planes,
                                        double inclination_deg,
                                        double altitude_km, int phasing,
                                        UtcTime t) {
  const auto elements =
      WalkerElements(total_sats, planes, inclination_deg, altitude_km,
                     phasing, t);
  std::vector<SatelliteState> states;
  states.reserve(elements.size());
  for (size_t i = 0; i < elements.size(); ++i) {
    states.push_back(Propagate(elements[i], t, {}, static_cast<int>(i)));
  }
  return states;
}

}  // namespace leoho
