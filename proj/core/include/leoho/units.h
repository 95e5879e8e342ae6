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

// Physical constants and the single place where dB <-> linear conversions
// live.

#ifndef LEOHO_UNITS_H_
#define LEOHO_UNITS_H_

#include <cmath>
#include <numbers>

namespace leoho {

// Earth gravitational parameter [km^3/s^2].
inline constexpr double kMuEarth = 398600.4418;
// WGS-84 equatorial radius [km].
inline constexpr double kEarthRadiusKm = 6378.137;
// WGS-84 flattening.
inline constexpr double kWgs84Flattening = 1.0 / 298.257223563;
// Second zonal harmonic.
inline constexpr double kJ2 = 1.08262668e-3;
// Earth rotation rate [rad/s].
inline constexpr double kEarthRotationRadPerSec = 7.2921158553e-5;
inline constexpr double kSecondsPerDay = 86400.0;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double DegToRad(double deg) { return deg * (kPi / 180.0); }
constexpr double RadToDeg(double rad) { return rad * (180.0 / kPi); }

// Power ratio in dB to linear scale.
inline double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }
inline double LinearToDb(double ratio) { return 10.0 * std::log10(ratio); }

// Wraps an angle in degrees into [0, 360).
inline double WrapDegrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  // fmod can return 360 - ulp + 360 rounding to exactly 360.
  if (r >= 360.0) r -= 360.0;
  return r;
}

inline double WrapRadians(double rad) {
  double r = std::fmod(rad, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

}  // namespace leoho

#endif  // LEOHO_UNITS_H_
