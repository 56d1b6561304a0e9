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

// Run configuration: flat `key = value` lines with `#` comments, overridden
// by command-line flags (--amplitude-a maps to amplitude_a).

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lzs/experiments.hpp"

namespace lzs {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string_view>& subcommands() {
  static const std::vector<std::string_view> names{
      "double-crossing", "grover-run",    "runtime-scaling", "noise-map",
      "three-level-scan", "rwa-table", "rwa-vs-exact",    "selftest"};
  return names;
}

/// Keys accepted by a subcommand (DriveParams fields, step control, `out`
/// and the subcommand's own keys).
std::vector<std::string> allowed_keys(std::string_view subcommand);

struct ConfigValue {
  std::string text;
  int line = 0;  // 0 for command-line flags
};

struct RunConfig {
  std::string subcommand;
  std::map<std::string, ConfigValue> values;

  bool has(const std::string& key) const { return values.contains(key); }
  // Typed access; errors name the key and its source line.
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer_or(const std::string& key, int fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;
  std::string text_or(const std::string& key, std::string fallback) const;
  Axis axis(const std::string& key) const;
  std::vector<int> integer_list(const std::string& key) const;  // "8:20" or "8,10,12"

  void require(const std::string& key) const;

  /// DriveParams from the scalar keys; `delta` falls back to gap(n).
  DriveParams drive_params() const;
  StepControl step_control() const;
  ExperimentControl experiment_control() const;
};

/// Parses `file_text` for `subcommand`, then applies `flags` (dashes already
/// mapped to underscores or not; both accepted) on top.
RunConfig parse_config(std::string_view subcommand, std::string_view file_text,
                       std::span<const std::pair<std::string, std::string>> flags = {});

/// "min:max:points[:log]".
Axis parse_axis(std::string_view name, std::string_view text);

}  // namespace lzs
