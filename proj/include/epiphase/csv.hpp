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

#ifndef EPIPHASE_CSV_HPP_
#define EPIPHASE_CSV_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace epiphase {

// Shortest decimal representation that round-trips the exact double. Locale
// independent, so emitted files are byte-stable across runs and machines.
std::string format_double(double v);

std::string csv_escape(const std::string& field);

// Accumulates rows and writes them atomically (temp file + rename), LF line
// endings, UTF-8.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::size_t row_count() const { return rows_.size(); }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes arbitrary text atomically (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Splits one CSV record; handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace epiphase

#endif  // EPIPHASE_CSV_HPP_
