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

#ifndef LEOHO_TIME_H_
#define LEOHO_TIME_H_

#include <compare>
#include <string>
#include <string_view>

namespace leoho {

// A UTC instant stored as seconds since 1970-01-01T00:00:00Z. Leap seconds
// are ignored (UTC is treated as UT1), which is well below the fidelity of
// the two-body propagator.
class UtcTime {
 public:
  constexpr UtcTime() = default;

  static constexpr UtcTime FromUnixSeconds(double s) { return UtcTime(s); }
  static UtcTime FromCalendar(int year, int month, int day, int hour = 0,
                              int minute = 0, double second = 0.0);
  // Day-of-year is 1-based and fractional: 1.5 is Jan 1 12:00.
  static UtcTime FromYearAndDayOfYear(int year, double day_of_year);
  // Accepts "YYYY-MM-DDTHH:MM:SS[.fff][Z]" and "YYYY-MM-DD HH:MM:SS".
  // Throws std::invalid_argument on malformed input.
  static UtcTime Parse(std::string_view iso8601);

  constexpr double unix_seconds() const { return unix_seconds_; }
  double JulianDate() const;
  std::string ToIso8601() const;

  constexpr UtcTime operator+(double seconds) const {
    return UtcTime(unix_seconds_ + seconds);
  }
  constexpr double operator-(UtcTime other) const {
    return unix_seconds_ - other.unix_seconds_;
  }
  constexpr auto operator<=>(const UtcTime&) const = default;

 private:
  constexpr explicit UtcTime(double s) : unix_seconds_(s) {}
  double unix_seconds_ = 0.0;
};

}  // namespace leoho

#endif  // LEOHO_TIME_H_
