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

// Two-body propagation of mean elements with an optional secular J2 drift of
// the node and perigee. This is not SGP4: it is meant for minute-scale
// geometry, where the difference is far below what a link budget resolves.

#ifndef LEOHO_ORBIT_H_
#define LEOHO_ORBIT_H_

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "leoho/time.h"
#include "leoho/tle.h"

namespace leoho {

class PropagationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KeplerianElements {
  UtcTime epoch;
  double semi_major_axis_km = 0.0;
  double eccentricity = 0.0;
  double inclination_rad = 0.0;
  double raan_rad = 0.0;
  double arg_perigee_rad = 0.0;
  double mean_anomaly_rad = 0.0;

  static KeplerianElements FromTle(const Tle& tle);
  // Mean motion [rad/s].
  double MeanMotion() const;
  double PeriodSeconds() const;
};

struct SatelliteState {
  int sat_id = 0;
  UtcTime time;
  Eigen::Vector3d position_ecef = Eigen::Vector3d::Zero();  // km
  Eigen::Vector3d velocity_ecef = Eigen::Vector3d::Zero();  // km/s
  // Inertial (true-of-date, GMST-rotated) frame.
  Eigen::Vector3d position_eci = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity_eci = Eigen::Vector3d::Zero();
};

struct PropagationOptions {
  bool secular_j2 = false;
  // Beyond this many days from epoch a warning is logged.
  double warn_after_days = 30.0;
};

// Greenwich mean sidereal time [rad], IAU 1982 expression.
double Gmst(UtcTime t);

// Solves M = E - e sin E by Newton iteration. Throws PropagationError if the
// iteration has not converged after 50 steps.
double SolveKepler(double mean_anomaly_rad, double eccentricity);

SatelliteState Propagate(const KeplerianElements& elements, UtcTime t,
                         const PropagationOptions& options = {},
                         int sat_id = 0);
SatelliteState Propagate(const Tle& tle, UtcTime t,
                         const PropagationOptions& options = {},
                         int sat_id = 0);

// Circular Walker-delta constellation i:T/P/F. Plane p has RAAN 360 p / P;
// satellite k in that plane sits at argument of latitude
// 360 k / S + 360 F p / T with S = T / P satellites per plane.
std::vector<KeplerianElements> WalkerElements(int total_sats, int planes,
                                              double inclination_deg,
                                              double altitude_km, int phasing,
                                              UtcTime epoch);

std::vector<SatelliteState> SynthWalker(int total_sats, int planes,
                                        double inclination_deg,
                                        double altitude_km, int phasing,
                                        UtcTime t);

}  // namespace leoho

#endif  // LEOHO_ORBIT_H_
