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

#include "leoho/geometry.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "leoho/units.h"

namespace leoho {

Eigen::Vector3d GeodeticToEcef(double latitude_deg, double longitude_deg,
                               double altitude_m) {
  const double lat = DegToRad(latitude_deg);
  const double lon = DegToRad(longitude_deg);
  const double e2 = kWgs84Flattening * (2.0 - kWgs84Flattening);
  const double sin_lat = std::sin(lat);
  const double n = kEarthRadiusKm / std::sqrt(1.0 - e2 * sin_lat * sin_lat);
  const double h = altitude_m / 1000.0;
  return {(n + h) * std::cos(lat) * std::cos(lon),
          (n + h) * std::cos(lat) * std::sin(lon),
          (n * (1.0 - e2) + h) * sin_lat};
}

GroundUser GroundUser::At(int user_id, double latitude_deg,
                          double longitude_deg, double altitude_m) {
  if (!(std::fabs(latitude_deg) <= 90.0)) {
    throw std::invalid_argument(
        fmt::format("latitude {} outside [-90, 90]", latitude_deg));
  }
  if (!std::isfinite(longitude_deg) || !std::isfinite(altitude_m)) {
    throw std::invalid_argument("non-finite user coordinates");
  }
  GroundUser user;
  user.user_id = user_id;
  user.latitude_deg = latitude_deg;
  user.longitude_deg =
      longitude_deg >= -180.0 && longitude_deg < 180.0
          ? longitude_deg
          : WrapDegrees(longitude_deg + 180.0) - 180.0;
  user.altitude_m = altitude_m;
  user.position_ecef =
      GeodeticToEcef(latitude_deg, user.longitude_deg, altitude_m);
  return user;
}

LinkGeometry ElevationAndRange(const GroundUser& user,
                               const SatelliteState& sat) {
  const Eigen::Vector3d los = sat.position_ecef - user.position_ecef;
  const double range = los.norm();
  if (!(range > 0.0)) {
    throw std::invalid_argument(fmt::format(
        "user {} and satellite {} are coincident", user.user_id, sat.sat_id));
  }
  const double lat = DegToRad(user.latitude_deg);
  const double lon = DegToRad(user.longitude_deg);
  const double sin_lat = std::sin(lat), cos_lat = std::cos(lat);
  const double sin_lon = std::sin(lon), cos_lon = std::cos(lon);

  // Rows of the ECEF -> SEZ rotation.
  const Eigen::Vector3d south(sin_lat * cos_lon, sin_lat * sin_lon, -cos_lat);
  const Eigen::Vector3d east(-sin_lon, cos_lon, 0.0);
  const Eigen::Vector3d zenith(cos_lat * cos_lon, cos_lat * sin_lon, sin_lat);

  const double s = south.dot(los);
  const double e = east.dot(los);
  const double z = zenith.dot(los);

  LinkGeometry g;
  g.distance_km = range;
  g.elevation_deg =
      std::clamp(RadToDeg(std::atan2(z, std::hypot(s, e))), -90.0, 90.0);
  return g;
}

}  // namespace leoho
