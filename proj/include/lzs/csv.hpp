// Copyright 2026 The lzs-search-sim Authors
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

// Self-describing CSV:
//
//   # lzs-search-sim v1
//   # params: a1=0 amplitude_a=1 ... (alphabetical key=value, no spaces in values)
//   # results: ...                       (optional, derived scalars)
//   col0,col1,...
//   <rows, 17 significant digits>
//
// Numbers are written with std::to_chars and read with std::from_chars, so
// the format is locale-independent and every double round-trips exactly.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lzs/experiments.hpp"

namespace lzs {

inline constexpr std::string_view kCsvMagic = "# lzs-search-sim v1";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_number(double v);
// Whole-token parse; throws InvalidArgument naming `what` on failure.
double parse_number(std::string_view text, std::string_view what);

struct CsvTable {
  std::map<std::string, std::string> params;
  std::map<std::string, std::string> results;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// DriveParams fields as params entries ("n" is "none" when unset).
std::map<std::string, std::string> params_entries(const DriveParams& p);
DriveParams drive_params_from(const std::map<std::string, std::string>& entries);

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

/// One column per axis, then one per observable. `axes` in params lists
/// the axis columns so the grid can be rebuilt.
CsvTable grid_table(const SweepGrid& grid);
SweepGrid grid_from_table(const CsvTable& table);

/// Columns time, p0, p1[, p2]; every `stride`-th row (the last row always).
CsvTable trajectory_table(const Trajectory& traj, const DriveParams& params,
                          const std::map<std::string, std::string>& metadata = {},
                          std::size_t stride = 1);

void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace lzs
