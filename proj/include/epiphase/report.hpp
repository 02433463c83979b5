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

#ifndef EPIPHASE_REPORT_HPP_
#define EPIPHASE_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "epiphase/epidemic.hpp"
#include "epiphase/scenario.hpp"

namespace epiphase {

// Reported epidemic statistics ingested from a two-column CSV
// (date,active_cases; ISO dates strictly increasing; counts >= 0).
struct ReportedSeries {
  std::vector<long> dates;  // days since 1970-01-01
  std::vector<double> active_cases;
};

ReportedSeries load_reported_csv(const std::filesystem::path& path);

struct ValidationRow {
  long date = 0;  // civil day
  int day = 0;    // simulation day
  double model = 0;
  double reported = 0;
  double residual = 0;      // model - reported
  double rel_residual = 0;  // |residual| / max(reported, 1)
};

struct ValidationSummary {
  long window_start = 0;  // civil days, inclusive
  long window_end = 0;
  int n_days = 0;
  double max_abs = 0;
  double mean_abs = 0;
  double max_rel = 0;
  double mean_rel = 0;
};

// Aligns model N*i(t) with the reported series by calendar date. Summary
// statistics are computed over `window` (civil-day interval), defaulting to
// the second half of the overlap. Throws on an empty date overlap.
std::pair<std::vector<ValidationRow>, ValidationSummary> validate_against_reported(
    const Trajectory& traj, const ReportedSeries& reported, long origin_date,
    std::optional<std::pair<long, long>> window = std::nullopt);

// Reproducibility record written next to every command's outputs. Embeds the
// fully resolved scenario, so a run can be replayed bit-identically from the
// manifest alone.
struct RunManifest {
  std::string command;
  std::string version;
  std::vector<std::string> argv;
  std::string scenario_json;
  std::uint64_t scenario_hash = 0;
  std::optional<std::uint64_t> seed;
  std::string started_at;   // ISO-8601 UTC
  std::string finished_at;  // ISO-8601 UTC
  std::vector<std::string> outputs;  // paths relative to the manifest
};

std::uint64_t fnv1a64(std::string_view text);

std::string utc_now_iso8601();

// Serializes the manifest and writes it atomically. Verifies that every
// listed output exists and is non-empty relative to dir.
void write_manifest(const RunManifest& manifest, const std::filesystem::path& dir);

}  // namespace epiphase

#endif  // EPIPHASE_REPORT_HPP_
