// Copyright 2026 The epiphase Authors
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

#include "epiphase/dates.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "epiphase/errors.hpp"

namespace epiphase {

long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

void civil_from_days(long z, int& y, int& m, int& d) {
  z += 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long yy = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

long parse_iso_date(std::string_view text) {
  auto fail = [&] {
    throw ConfigError("invalid ISO date '" + std::string(text) + "' (expected YYYY-MM-DD)");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') fail();
  int y = 0, m = 0, d = 0;
  auto parse_int = [&](std::string_view sv, int& out) {
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), out);
    if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size()) fail();
  };
  parse_int(text.substr(0, 4), y);
  parse_int(text.substr(5, 2), m);
  parse_int(text.substr(8, 2), d);
  if (m < 1 || m > 12 || d < 1 || d > 31) fail();
  const long days = days_from_civil(y, m, d);
  // Round-trip to reject impossible day-of-month combinations (e.g. Feb 30).
  int y2, m2, d2;
  civil_from_days(days, y2, m2, d2);
  if (y2 != y || m2 != m || d2 != d) fail();
  return days;
}

std::string format_iso_date(long days) {
  int y, m, d;
  civil_from_days(days, y, m, d);
  std::array<char, 16> buf;
  std::snprintf(buf.data(), buf.size(), "%04d-%02d-%02d", y, m, d);
  return std::string(buf.data());
}

}  // namespace epiphase
