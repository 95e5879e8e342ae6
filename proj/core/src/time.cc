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

#include "leoho/time.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace leoho {
namespace {

constexpr double kUnixEpochJulianDate = 2440587.5;

double DaysFromCivil(int year, int month, int day) {
  const std::chrono::year_month_day ymd{
      std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
      std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) {
    throw std::invalid_argument(
        fmt::format("invalid calendar date {:04d}-{:02d}-{:02d}", year, month,
                    day));
  }
  return static_cast<double>(
      std::chrono::sys_days{ymd}.time_since_epoch().count());
}

}  // namespace

UtcTime UtcTime::FromCalendar(int year, int month, int day, int hour,
                              int minute, double second) {
  if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0.0 ||
      second >= 61.0) {
    throw std::invalid_argument("invalid time of day");
  }
  return UtcTime(DaysFromCivil(year, month, day) * 86400.0 + hour * 3600.0 +
                 minute * 60.0 + second);
}

UtcTime UtcTime::FromYearAndDayOfYear(int year, double day_of_year) {
  if (!(day_of_year >= 1.0) || day_of_year >= 367.0) {
    throw std::invalid_argument(
        fmt::format("day of year {} out of range", day_of_year));
  }
  return UtcTime(DaysFromCivil(year, 1, 1) * 86400.0 +
                 (day_of_year - 1.0) * 86400.0);
}

UtcTime UtcTime::Parse(std::string_view iso8601) {
  const std::string s(iso8601);
  int year = 0, month = 0, day = 0, hour = 0, minute = 0;
  double second = 0.0;
  char sep = 0;
  int consumed = 0;
  const int n = std::sscanf(s.c_str(), "%4d-%2d-%2d%c%2d:%2d:%lf%n", &year,
                            &month, &day, &sep, &hour, &minute, &second,
                            &consumed);
  if (n != 7 || (sep != 'T' && sep != ' ')) {
    throw std::invalid_argument("malformed UTC timestamp: '" + s + "'");
  }
  const std::string_view rest = iso8601.substr(static_cast<size_t>(consumed));
  if (!(rest.empty() || rest == "Z")) {
    throw std::invalid_argument("unsupported timezone suffix in '" + s + "'");
  }
  return FromCalendar(year, month, day, hour, minute, second);
}

double UtcTime::JulianDate() const {
  return kUnixEpochJulianDate + unix_seconds_ / 86400.0;
}

std::string UtcTime::ToIso8601() const {
  const double days = std::floor(unix_seconds_ / 86400.0);
  const double sod = unix_seconds_ - days * 86400.0;
  const std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{static_cast<long>(days)}}};
  const int hour = static_cast<int>(sod / 3600.0);
  const int minute = static_cast<int>((sod - hour * 3600.0) / 60.0);
  const double second = sod - hour * 3600.0 - minute * 60.0;
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:06.3f}Z",
                     static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()), hour, minute, second);
}

}  // namespace leoho
