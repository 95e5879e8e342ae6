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

#include "leoho/tle.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "leoho/units.h"

namespace leoho {
namespace {

using Kind = TleParseError::Kind;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

// Columns are 1-based and inclusive, as in every TLE format description.
std::string_view Columns(std::string_view line, int first, int last) {
  return line.substr(static_cast<size_t>(first - 1),
                     static_cast<size_t>(last - first + 1));
}

class FieldReader {
 public:
  FieldReader(std::string_view line, int line_number)
      : line_(line), line_number_(line_number) {}

  int Int(int first, int last, const char* what) const {
    std::string_view s = Trim(Columns(line_, first, last));
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      Fail(what, first, last);
    }
    return negative ? -value : value;
  }

  double Double(int first, int last, const char* what) const {
    std::string_view s = Trim(Columns(line_, first, last));
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      Fail(what, first, last);
    }
    return negative ? -value : value;
  }

  // Digits with an implied leading "0.", e.g. eccentricity "0006703".
  double ImpliedDecimal(int first, int last, const char* what) const {
    const std::string_view s = Columns(line_, first, last);
    for (char c : s) {
      if (c < '0' || c > '9') Fail(what, first, last);
    }
    return static_cast<double>(Int(first, last, what)) /
           std::pow(10.0, static_cast<double>(s.size()));
  }

  TleExponent Exponent(int first, int last, const char* what) const {
    const std::string_view s = Columns(line_, first, last);  // 8 chars
    TleExponent out;
    const char sign = s[0];
    if (sign != ' ' && sign != '-' && sign != '+') Fail(what, first, last);
    out.explicit_plus = sign == '+';
    int mantissa = 0;
    for (int i = 1; i <= 5; ++i) {
      const char c = s[static_cast<size_t>(i)];
      if (c < '0' || c > '9') Fail(what, first, last);
      mantissa = mantissa * 10 + (c - '0');
    }
    const char exp_sign = s[6];
    const char exp_digit = s[7];
    if ((exp_sign != '-' && exp_sign != '+') || exp_digit < '0' ||
        exp_digit > '9') {
      Fail(what, first, last);
    }
    out.mantissa = sign == '-' ? -mantissa : mantissa;
    out.exponent_plus = exp_sign == '+';
    out.exponent = (exp_sign == '-' ? -1 : 1) * (exp_digit - '0');
    return out;
  }

  [[noreturn]] void Fail(const char* what, int first, int last) const {
    throw TleParseError(
        Kind::kField, line_number_,
        fmt::format("line {}: cannot parse {} in columns {}-{}: '{}'",
                    line_number_, what, first, last,
                    Columns(line_, first, last)));
  }

 private:
  std::string_view line_;
  int line_number_;
};

struct NumberedLine {
  std::string_view text;
  int number;
};

void CheckDataLine(const NumberedLine& line, char expected_first) {
  if (line.text.size() != kTleLineLength) {
    throw TleParseError(
        Kind::kLineLength, line.number,
        fmt::format("line {}: expected {} characters, found {}", line.number,
                    kTleLineLength, line.text.size()));
  }
  if (line.text[0] != expected_first || line.text[1] != ' ') {
    throw TleParseError(Kind::kField, line.number,
                        fmt::format("line {}: expected line number '{}'",
                                    line.number, expected_first));
  }
  const char last = line.text[kTleLineLength - 1];
  if (last < '0' || last > '9') {
    throw TleParseError(
        Kind::kChecksum, line.number,
        fmt::format("line {}: checksum column is not a digit", line.number));
  }
  const int expected = TleChecksum(line.text);
  if (expected != last - '0') {
    throw TleParseError(
        Kind::kChecksum, line.number,
        fmt::format("line {}: checksum mismatch (computed {}, found {})",
                    line.number, expected, last));
  }
}

bool LooksLikeDataLine(std::string_view s, char first) {
  return s.size() >= 2 && s[0] == first && s[1] == ' ';
}

Tle ParseRecord(std::string_view name, const NumberedLine& l1,
                const NumberedLine& l2) {
  CheckDataLine(l1, '1');
  CheckDataLine(l2, '2');
  const FieldReader r1(l1.text, l1.number);
  const FieldReader r2(l2.text, l2.number);

  Tle tle;
  tle.name = std::string(name);
  tle.catalog_number = r1.Int(3, 7, "catalog number");
  tle.classification = l1.text[7];
  tle.international_designator = std::string(Columns(l1.text, 10, 17));
  const int yy = r1.Int(19, 20, "epoch year");
  tle.epoch_year = yy < 57 ? 2000 + yy : 1900 + yy;
  tle.epoch_day = r1.Double(21, 32, "epoch day");
  tle.mean_motion_dot = r1.Double(34, 43, "mean motion derivative");
  tle.mean_motion_ddot = r1.Exponent(45, 52, "mean motion second derivative");
  tle.bstar = r1.Exponent(54, 61, "B* drag term");
  tle.ephemeris_type = r1.Int(63, 63, "ephemeris type");
  tle.element_set_number = r1.Int(65, 68, "element set number");

  const int catalog2 = r2.Int(3, 7, "catalog number");
  if (catalog2 != tle.catalog_number) {
    throw TleParseError(
        Kind::kField, l2.number,
        fmt::format("line {}: catalog number {} does not match line 1 ({})",
                    l2.number, catalog2, tle.catalog_number));
  }
  tle.inclination_deg = r2.Double(9, 16, "inclination");
  tle.raan_deg = r2.Double(18, 25, "right ascension of ascending node");
  tle.eccentricity = r2.ImpliedDecimal(27, 33, "eccentricity");
  tle.arg_perigee_deg = r2.Double(35, 42, "argument of perigee");
  tle.mean_anomaly_deg = r2.Double(44, 51, "mean anomaly");
  tle.mean_motion_rev_per_day = r2.Double(53, 63, "mean motion");
  tle.revolution_number = r2.Int(64, 68, "revolution number");

  if (tle.epoch_day < 1.0 || tle.epoch_day >= 367.0) {
    throw TleParseError(Kind::kRange, l1.number,
                        fmt::format("line {}: epoch day {} out of range",
                                    l1.number, tle.epoch_day));
  }
  if (tle.inclination_deg < 0.0 || tle.inclination_deg > 180.0) {
    throw TleParseError(Kind::kRange, l2.number,
                        fmt::format("line {}: inclination {} out of [0, 180]",
                                    l2.number, tle.inclination_deg));
  }
  if (!(tle.eccentricity >= 0.0 && tle.eccentricity < 1.0)) {
    throw TleParseError(Kind::kRange, l2.number,
                        fmt::format("line {}: eccentricity {} out of [0, 1)",
                                    l2.number, tle.eccentricity));
  }
  if (!(tle.mean_motion_rev_per_day > 0.0)) {
    throw TleParseError(Kind::kRange, l2.number,
                        fmt::format("line {}: mean motion must be positive",
                                    l2.number));
  }
  tle.raan_deg = WrapDegrees(tle.raan_deg);
  tle.arg_perigee_deg = WrapDegrees(tle.arg_perigee_deg);
  tle.mean_anomaly_deg = WrapDegrees(tle.mean_anomaly_deg);
  return tle;
}

std::string FormatExponent(const TleExponent& e) {
  const char sign = e.mantissa < 0 ? '-' : (e.explicit_plus ? '+' : ' ');
  const char exp_sign = e.exponent < 0 ? '-' : (e.exponent_plus ? '+' : '-');
  return fmt::format("{}{:05d}{}{:d}", sign, std::abs(e.mantissa), exp_sign,
                     std::abs(e.exponent));
}

std::string FormatMeanMotionDot(double v) {
  const long scaled = std::lround(std::fabs(v) * 1e8);
  const char sign = v < 0.0 ? '-' : ' ';
  if (scaled >= 100000000L) {
    // One integer digit replaces the sign position in this rare case.
    return fmt::format("{}{:.8f}", sign, std::fabs(v)).substr(0, 10);
  }
  return fmt::format("{}.{:08d}", sign, scaled);
}

}  // namespace

double TleExponent::value() const {
  return mantissa * 1e-5 * std::pow(10.0, exponent);
}

double Tle::SemiMajorAxisKm() const {
  const double n_rad_s = mean_motion_rev_per_day * kTwoPi / kSecondsPerDay;
  return std::cbrt(kMuEarth / (n_rad_s * n_rad_s));
}

int TleChecksum(std::string_view line) {
  int sum = 0;
  const size_t n = std::min(line.size(), kTleLineLength - 1);
  for (size_t i = 0; i < n; ++i) {
    const char c = line[i];
    if (c >= '0' && c <= '9') {
      sum += c - '0';
    } else if (c == '-') {
      sum += 1;
    }
  }
  return sum % 10;
}

std::vector<Tle> ParseTle(std::string_view text) {
  std::vector<NumberedLine> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    while (!raw.empty() &&
           (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t')) {
      raw.remove_suffix(1);
    }
    if (!raw.empty()) lines.push_back({raw, number});
    if (end == text.size()) break;
    pos = end + 1;
  }

  std::vector<Tle> out;
  size_t i = 0;
  while (i < lines.size()) {
    std::string_view name;
    if (!LooksLikeDataLine(lines[i].text, '1')) {
      name = lines[i].text;
      if (name.size() >= 2 && name[0] == '0' && name[1] == ' ') {
        name.remove_prefix(2);
      }
      name = Trim(name);
      ++i;
      if (i >= lines.size()) {
        throw TleParseError(
            Kind::kDanglingLine, lines[i - 1].number,
            fmt::format("line {}: name line without element lines",
                        lines[i - 1].number));
      }
    }
    if (i + 1 >= lines.size() || !LooksLikeDataLine(lines[i + 1].text, '2')) {
      // Either a lone line 1 or something that is neither a name nor a
      // line-1; report the line we could not pair.
      if (!LooksLikeDataLine(lines[i].text, '1')) {
        throw TleParseError(
            Kind::kDanglingLine, lines[i].number,
            fmt::format("line {}: expected element line 1", lines[i].number));
      }
      throw TleParseError(
          Kind::kDanglingLine, lines[i].number,
          fmt::format("line {}: element line 1 without a following line 2",
                      lines[i].number));
    }
    if (!LooksLikeDataLine(lines[i].text, '1')) {
      throw TleParseError(
          Kind::kDanglingLine, lines[i].number,
          fmt::format("line {}: expected element line 1", lines[i].number));
    }
    out.push_back(ParseRecord(name, lines[i], lines[i + 1]));
    i += 2;
  }
  return out;
}

std::pair<std::string, std::string> FormatTle(const Tle& tle) {
  std::string l1 = fmt::format(
      "1 {:05d}{} {:<8.8} {:02d}{:012.8f} {} {} {} {:d} {:4d}",
      tle.catalog_number, tle.classification, tle.international_designator,
      tle.epoch_year % 100, tle.epoch_day,
      FormatMeanMotionDot(tle.mean_motion_dot),
      FormatExponent(tle.mean_motion_ddot), FormatExponent(tle.bstar),
      tle.ephemeris_type, tle.element_set_number);
  const long ecc = std::lround(tle.eccentricity * 1e7);
  std::string l2 = fmt::format(
      "2 {:05d} {:8.4f} {:8.4f} {:07d} {:8.4f} {:8.4f} {:11.8f}{:5d}",
      tle.catalog_number, tle.inclination_deg, tle.raan_deg, ecc,
      tle.arg_perigee_deg, tle.mean_anomaly_deg, tle.mean_motion_rev_per_day,
      tle.revolution_number % 100000);
  l1.push_back(static_cast<char>('0' + TleChecksum(l1)));
  l2.push_back(static_cast<char>('0' + TleChecksum(l2)));
  return {std::move(l1), std::move(l2)};
}

}  // namespace leoho
