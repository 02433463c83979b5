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

#ifndef EPIPHASE_DATES_HPP_
#define EPIPHASE_DATES_HPP_

#include <string>
#include <string_view>

namespace epiphase {

// Days since 1970-01-01 in the proleptic Gregorian calendar.
long days_from_civil(int year, int month, int day);

// Inverse of days_from_civil.
void civil_from_days(long days, int& year, int& month, int& day);

// Parses "YYYY-MM-DD"; throws ConfigError on malformed or impossible dates.
long parse_iso_date(std::string_view text);

std::string format_iso_date(long days);

}  // namespace epiphase

#endif  // EPIPHASE_DATES_HPP_
