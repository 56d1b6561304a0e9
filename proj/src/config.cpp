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

#include "lzs/config.hpp"

#include <algorithm>
#include <cmath>

#include "lzs/csv.hpp"
#include "lzs/errors.hpp"

namespace lzs {

namespace {

const std::vector<std::string> kCommonKeys{
    "a1",    "amplitude_a", "amplitude_b", "delta", "epsilon",         "eta",
    "n",     "omega",       "omega1",      "phi",   "t_end",           "out",
    "order", "execution",   "max_phase",   "steps_per_period"};

const std::map<std::string_view, std::vector<std::string>> kSubcommandKeys{
    {"double-crossing", {"omega_axis"}},
    {"grover-run", {"max_rows"}},
    {"runtime-scaling", {"n_list", "a_over_omega", "horizon"}},
    {"noise-map", {"omega1_axis", "t_axis", "algorithm", "projection", "average_phase"}},
    {"three-level-scan", {"omega_axis", "window", "refine_peaks", "refine_evaluations"}},
    {"rwa-table", {"b_axis", "omega_axis"}},
    {"rwa-vs-exact", {"omega_over_delta_axis", "a_over_omega_axis", "delta_ref"}},
    {"selftest", {}},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string_view key) {
  std::string k(key);
  while (!k.empty() && k.front() == '-') k.erase(k.begin());
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

std::string source(const std::string& key, const ConfigValue& v) {
  return v.line > 0 ? "line " + std::to_string(v.line) + ": key '" + key + "'"
                    : "flag --" + key;
}

}  // namespace

std::vector<std::string> allowed_keys(std::string_view subcommand) {
  const auto it = kSubcommandKeys.find(subcommand);
  if (it == kSubcommandKeys.end()) {
    throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
  }
  std::vector<std::string> keys = kCommonKeys;
  keys.insert(keys.end(), it->second.begin(), it->second.end());
  std::sort(keys.begin(), keys.end());
  return keys;
}

Axis parse_axis(std::string_view name, std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(':', start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  const std::string what = "axis '" + std::string(name) + "'";
  if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log")) {
    throw ConfigError(what + ": expected min:max:points[:log], got '" + std::string(text) + "'");
  }
  Axis a;
  a.name = std::string(name);
  try {
    a.min = parse_number(parts[0], what);
    a.max = parse_number(parts[1], what);
    const double points = parse_number(parts[2], what);
    if (points != std::floor(points) || points < 1 || points > 1e7) {
      throw ConfigError(what + ": point count must be a positive integer");
    }
    a.points = static_cast<int>(points);
    a.log = parts.size() == 4;
    a.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return a;
}

double RunConfig::number(const std::string& key) const {
  require(key);
  const auto& v = values.at(key);
  try {
    return parse_number(v.text, source(key, v));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

double RunConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int RunConfig::integer_or(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError(source(key, values.at(key)) + ": expected an integer, got '" +
                      values.at(key).text + "'");
  }
  return static_cast<int>(v);
}

bool RunConfig::flag_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto& t = values.at(key).text;
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw ConfigError(source(key, values.at(key)) + ": expected true/false, got '" + t + "'");
}

std::string RunConfig::text_or(const std::string& key, std::string fallback) const {
  return has(key) ? values.at(key).text : fallback;
}

Axis RunConfig::axis(const std::string& key) const {
  require(key);
  try {
    return parse_axis(key, values.at(key).text);
  } catch (const ConfigError& e) {
    throw ConfigError(source(key, values.at(key)) + ": " + e.what());
  }
}

std::vector<int> RunConfig::integer_list(const std::string& key) const {
  require(key);
  const auto& v = values.at(key);
  const std::string what = source(key, v);
  std::vector<int> out;
  auto to_int = [&](std::string_view s) {
    double d = 0.0;
    try {
      d = parse_number(s, what);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (d != std::floor(d) || std::abs(d) > 1e6) throw ConfigError(what + ": expected integers");
    return static_cast<int>(d);
  };
  const std::string_view t = v.text;
  if (const auto colon = t.find(':'); colon != std::string_view::npos) {
    const int lo = to_int(t.substr(0, colon));
    const int hi = to_int(t.substr(colon + 1));
    if (hi < lo) throw ConfigError(what + ": range end below start");
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    const auto comma = t.find(',', start);
    out.push_back(to_int(t.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void RunConfig::require(const std::string& key) const {
  if (!has(key)) {
    throw ConfigError("missing required key '" + key + "' for " + subcommand);
  }
}

DriveParams RunConfig::drive_params() const {
  DriveParams p;
  if (has("n")) p.n = integer_or("n", 0);
  if (has("delta")) {
    p.delta = number("delta");
    if (p.n && p.delta != gap(*p.n)) {
      throw ConfigError(source("delta", values.at("delta")) + ": delta must equal 2^(-n/2) when n is given");
    }
  } else if (p.n) {
    try {
      p.delta = gap(*p.n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source("n", values.at("n")) + ": " + e.what());
    }
  }
  p.epsilon = number_or("epsilon", p.epsilon);
  p.amplitude_a = number_or("amplitude_a", p.amplitude_a);
  p.amplitude_b = number_or("amplitude_b", p.amplitude_b);
  p.omega = number_or("omega", p.omega);
  p.a1 = number_or("a1", p.a1);
  p.omega1 = number_or("omega1", p.omega1);
  p.phi = number_or("phi", p.phi);
  p.eta = number_or("eta", p.eta);
  return p;
}

StepControl RunConfig::step_control() const {
  StepControl s;
  s.steps_per_drive_period = integer_or("steps_per_period", s.steps_per_drive_period);
  s.max_phase_per_step = number_or("max_phase", s.max_phase_per_step);
  const int order = integer_or("order", 2);
  if (order != 2 && order != 4) {
    throw ConfigError(source("order", values.at("order")) + ": order must be 2 or 4");
  }
  s.order = order == 4 ? MagnusOrder::fourth : MagnusOrder::second;
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

ExperimentControl RunConfig::experiment_control() const {
  ExperimentControl c;
  c.steps = step_control();
  const std::string ex = text_or("execution", "serial");
  if (ex == "parallel") {
    c.execution = kernels::Execution::parallel;
  } else if (ex != "serial") {
    throw ConfigError(source("execution", values.at("execution")) +
                      ": expected serial or parallel, got '" + ex + "'");
  }
  return c;
}

RunConfig parse_config(std::string_view subcommand, std::string_view file_text,
                       std::span<const std::pair<std::string, std::string>> flags) {
  RunConfig cfg;
  cfg.subcommand = std::string(subcommand);
  const auto allowed = allowed_keys(subcommand);
  auto known = [&](const std::string& k) {
    return std::binary_search(allowed.begin(), allowed.end(), k);
  };

  int lineno = 0;
  std::size_t start = 0;
  while (start <= file_text.size()) {
    const auto nl = file_text.find('\n', start);
    std::string_view line =
        file_text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? file_text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                        std::string(line) + "'");
    }
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known(key)) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "' for " +
                        cfg.subcommand);
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": key '" + key + "' has no value");
    }
    cfg.values[key] = ConfigValue{value, lineno};
  }
  for (const auto& [raw, value] : flags) {
    const std::string key = normalize_key(raw);
    if (!known(key)) throw ConfigError("unknown flag --" + raw + " for " + cfg.subcommand);
    cfg.values[key] = ConfigValue{value, 0};
  }
  return cfg;
}

}  // namespace lzs
