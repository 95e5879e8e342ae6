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

#ifndef LEOHO_GEOMETRY_H_
#define LEOHO_GEOMETRY_H_

#include <stdexcept>

#include <Eigen/Core>

#include "leoho/orbit.h"

namespace leoho {

// WGS-84 geodetic coordinates to earth-fixed Cartesian [km].
Eigen::Vector3d GeodeticToEcef(double latitude_deg, double longitude_deg,
                               double altitude_m);

struct GroundUser {
  int user_id = 0;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double altitude_m = 0.0;
  Eigen::Vector3d position_ecef = Eigen::Vector3d::Zero();  // km

  // Validates the coordinates, wraps longitude into [-180, 180) and derives
  // the earth-fixed position. Throws std::invalid_argument for |lat| > 90.
  static GroundUser At(int user_id, double latitude_deg, double longitude_deg,
                       double altitude_m = 0.0);
};

struct LinkGeometry {
  double distance_km = 0.0;
  double elevation_deg = 0.0;
  bool visible = false;
};

// Slant range and elevation above the local (geodetic) horizon, evaluated in
// the topocentric south-east-zenith frame at the user. `visible` is left
// false. Throws std::invalid_argument if the two positions coincide.
LinkGeometry ElevationAndRange(const GroundUser& user,
                               const SatelliteState& sat);

// Closed at the threshold: an elevation equal to the threshold is visible.
inline bool IsVisible(const LinkGeometry& geometry, double threshold_deg) {
  return geometry.elevation_deg >= threshold_deg;
}

}  // namespace leoho

#endif  // LEOHO_GEOMETRY_H_
