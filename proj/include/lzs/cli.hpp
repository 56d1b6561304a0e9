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

#pragma once

#include <iosfwd>
#include <string>

#include "lzs/config.hpp"
#include "lzs/csv.hpp"

namespace lzs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitSelftest = 3;

/// The CSV a subcommand would write (selftest has none). The params line
/// carries every key needed to rerun it, including resolved defaults.
CsvTable run_experiment(const RunConfig& cfg);

/// Runs one subcommand: writes the CSV to `out` (default
/// lzs-<subcommand>.csv) and prints a one-line summary to `summary`.
/// Returns an exit code; errors go to `errors`.
int dispatch(const RunConfig& cfg, std::ostream& summary, std::ostream& errors);

/// Config that regenerates a CSV from its params line.
RunConfig replay_config(const CsvTable& table);

/// Command-line entry point.
int cli_main(int argc, char** argv);

}  // namespace lzs
