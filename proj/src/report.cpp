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

#include "epiphase/report.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>

#include "json.hpp"

#include "epiphase/csv.hpp"
#include "epiphase/dates.hpp"

namespace epiphase {

ReportedSeries load_reported_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open reported-data file " + path.string());

  ReportedSeries series;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    const auto fields = split_csv_line(line);
    if (line_no == 1) {
      if (fields.size() != 2 || fields[0] != "date" || fields[1] != "active_cases") {
        throw ConfigError(path.string() + ":1: expected header 'date,active_cases'");
      }
      continue;
    }
    if (fields.size() != 2) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected 2 columns, got " +
                        std::to_string(fields.size()));
    }
    long date;
    try {
      date = parse_iso_date(fields[0]);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": column 1: " + e.what());
    }
    double count;
    const auto res = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), count);
    if (res.ec != std::errc{} || res.ptr != fields[1].data() + fields[1].size() ||
        !std::isfinite(count)) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": column 2: invalid count '" + fields[1] + "'");
    }
    if (count < 0) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": column 2: count must be >= 0");
    }
    if (!series.dates.empty() && date <= series.dates.back()) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": dates must be strictly increasing");
    }
    series.dates.push_back(date);
    series.active_cases.push_back(count);
  }
  if (series.dates.empty()) {
    throw ConfigError(path.string() + ": no data rows");
  }
  return series;
}

std::pair<std::vector<ValidationRow>, ValidationSummary> validate_against_reported(
    const Trajectory& traj, const ReportedSeries& reported, long origin_date,
    std::optional<std::pair<long, long>> window) {
  std::vector<ValidationRow> rows;
  for (std::size_t k = 0; k < reported.dates.size(); ++k) {
    const long date = reported.dates[k];
    const long day = date - origin_date;
    if (day < 0 || day > traj.horizon()) continue;
    ValidationRow row;
    row.date = date;
    row.day = static_cast<int>(day);
    row.model = traj.population * traj.i[day];
    row.reported = reported.active_cases[k];
    row.residual = row.model - row.reported;
    row.rel_residual = std::abs(row.residual) / std::max(row.reported, 1.0);
    rows.push_back(row);
  }
  if (rows.empty()) {
    throw ConfigError("validate: reported dates do not overlap the simulation window");
  }

  std::pair<long, long> w;
  if (window) {
    w = *window;
  } else {
    // Default: the second half of the overlap.
    const long lo = rows.front().date;
    const long hi = rows.back().date;
    w = {lo + (hi - lo + 1) / 2, hi};
  }

  ValidationSummary summary;
  summary.window_start = w.first;
  summary.window_end = w.second;
  double sum_abs = 0, sum_rel = 0;
  for (const auto& row : rows) {
    if (row.date < w.first || row.date > w.second) continue;
    ++summary.n_days;
    const double a = std::abs(row.residual);
    sum_abs += a;
    sum_rel += row.rel_residual;
    if (a > summary.max_abs) summary.max_abs = a;
    if (row.rel_residual > summary.max_rel) summary.max_rel = row.rel_residual;
  }
  if (summary.n_days > 0) {
    summary.mean_abs = sum_abs / summary.n_days;
    summary.mean_rel = sum_rel / summary.n_days;
  }
  return {std::move(rows), summary};
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string utc_now_iso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& dir) {
  for (const std::string& out : manifest.outputs) {
    const std::filesystem::path p = dir / out;
    std::error_code ec;
    const auto size = std::filesystem::file_size(p, ec);
    if (ec || size == 0) {
      throw IoError("manifest: output " + p.string() + " is missing or empty");
    }
  }
  nlohmann::ordered_json doc;
  doc["command"] = manifest.command;
  doc["version"] = manifest.version;
  doc["argv"] = manifest.argv;
  char hash_hex[24];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(manifest.scenario_hash));
  doc["scenario_hash"] = hash_hex;
  if (manifest.seed) doc["seed"] = *manifest.seed;
  doc["started_at"] = manifest.started_at;
  doc["finished_at"] = manifest.finished_at;
  doc["outputs"] = manifest.outputs;
  doc["scenario"] = nlohmann::ordered_json::parse(manifest.scenario_json);
  write_file_atomic(dir / "manifest.json", doc.dump(2) + "\n");
}

}  // namespace epiphase
