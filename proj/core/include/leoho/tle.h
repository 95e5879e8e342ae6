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

// Two-line element set parsing and formatting.
//
// Every field of both data lines is kept so that a well-formed record can be
// written back column-exact. Only the orbital elements feed the propagator;
// the drag terms are parsed and carried along unused.

#ifndef LEOHO_TLE_H_
#define LEOHO_TLE_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leoho/time.h"

namespace leoho {

inline constexpr size_t kTleLineLength = 69;

// Thrown by ParseTle. `line_number` is 1-based within the parsed text.
class TleParseError : public std::runtime_error {
 public:
  enum class Kind { kLineLength, kChecksum, kField, kDanglingLine, kRange };

  TleParseError(Kind kind, int line_number, const std::string& what)
      : std::runtime_error(what), kind_(kind), line_number_(line_number) {}

  Kind kind() const { return kind_; }
  int line_number() const { return line_number_; }

 private:
  Kind kind_;
  int line_number_;
};

// The "assumed decimal point" exponential notation of the drag fields, e.g.
// " 12345-3" == 0.12345e-3. Kept as integers so zero signs and digits
// round-trip exactly.
struct TleExponent {
  int mantissa = 0;  // signed, five digits
  int exponent = 0;
  bool explicit_plus = false;  // "+12345-3" rather than " 12345-3"
  bool exponent_plus = false;  // "...+0" rather than "...-0"

  double value() const;
};

struct Tle {
  std::string name;  // empty for two-line records
  int catalog_number = 0;
  char classification = 'U';
  std::string international_designator;  // columns 10-17, trailing blanks kept
  int epoch_year = 0;                    // four digit
  double epoch_day = 1.0;                // 1-based fractional day of year
  double mean_motion_dot = 0.0;          // rev/day^2 / 2
  TleExponent mean_motion_ddot;          // rev/day^3 / 6
  TleExponent bstar;                     // 1/earth radii, unused
  int ephemeris_type = 0;
  int element_set_number = 0;

  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double eccentricity = 0.0;
  double arg_perigee_deg = 0.0;
  double mean_anomaly_deg = 0.0;
  double mean_motion_rev_per_day = 0.0;
  int revolution_number = 0;

  UtcTime epoch() const {
    return UtcTime::FromYearAndDayOfYear(epoch_year, epoch_day);
  }
  double bstar_value() const { return bstar.value(); }
  // Semi-major axis from Kepler's third law [km].
  double SemiMajorAxisKm() const;
};

// Modulo-10 checksum over the first 68 columns: digits count face value,
// '-' counts 1, everything else 0.
int TleChecksum(std::string_view line);

// Parses zero or more 2- or 3-line element sets. Blank lines are skipped.
// A name line may carry the "0 " prefix used by some catalogs.
std::vector<Tle> ParseTle(std::string_view text);

// Formats the two 69-column data lines of `tle` with fresh checksums.
std::pair<std::string, std::string> FormatTle(const Tle& tle);

}  // namespace leoho

#endif  // LEOHO_TLE_H_
