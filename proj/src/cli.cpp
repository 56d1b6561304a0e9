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

#include "lzs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <ostream>

#include <CLI11.hpp>

#include "lzs/errors.hpp"
#include "lzs/rwa.hpp"
#include "lzs/selftest.hpp"

namespace lzs {

namespace {

// Keys that describe DriveParams; they are emitted through params_entries.
bool is_param_field(const std::string& key) {
  static const auto fields = params_entries(DriveParams{});
  return fields.contains(key);
}

void set_default(DriveParams& p, const RunConfig& cfg, const std::string& key, double v) {
  if (cfg.has(key)) return;
  if (key == "amplitude_a") p.amplitude_a = v;
  if (key == "amplitude_b") p.amplitude_b = v;
  if (key == "omega") p.omega = v;
}

// Records the config keys the run used, so the CSV reruns itself.
void record_config(CsvTable& t, const RunConfig& cfg,
                   const std::map<std::string, std::string>& resolved = {}) {
  t.params["command"] = cfg.subcommand;
  const StepControl s = cfg.step_control();
  t.params["steps_per_period"] = std::to_string(s.steps_per_drive_period);
  t.params["max_phase"] = format_number(s.max_phase_per_step);
  t.params["order"] = s.order == MagnusOrder::fourth ? "4" : "2";
  t.params["execution"] = cfg.text_or("execution", "serial");
  for (const auto& [k, v] : resolved) t.params.try_emplace(k, v);
  for (const auto& [k, v] : cfg.values) {
    if (k == "out" || is_param_field(k)) continue;
    t.params.try_emplace(k, v.text);
  }
}

double max_finite(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) {
    if (std::isfinite(x)) m = std::max(m, x);
  }
  return m;
}

CsvTable double_crossing_cmd(const RunConfig& cfg) {
  cfg.require("delta");
  DriveParams p = cfg.drive_params();
  set_default(p, cfg, "amplitude_a", 1.0);
  const SweepGrid g =
      double_crossing_scan(p.delta, p.amplitude_a, cfg.axis("omega_axis"), cfg.experiment_control());
  CsvTable t = grid_table(g);
  record_config(t, cfg);
  t.results["points"] = std::to_string(g.size());
  t.results["max_p_plus2"] = format_number(max_finite(g.observable("p_plus2").values));
  return t;
}

CsvTable grover_run_cmd(const RunConfig& cfg) {
  cfg.require("omega");
  const int n = cfg.integer_or("n", 15);
  const double a = cfg.number_or("amplitude_a", 1.0);
  const double b = cfg.number_or("amplitude_b", 0.0);
  const double omega = cfg.number("omega");
  const double delta = gap(n);
  const double rate = rabi_frequency_alg_b(delta, a, b, omega);
  if (!cfg.has("t_end") && !(rate > 0.0)) {
    throw InvalidArgument("predicted Rabi rate vanishes; set t_end explicitly");
  }
  const double t_end = cfg.number_or("t_end", 4.0 * std::numbers::pi / rate);
  const int max_rows = cfg.integer_or("max_rows", 4096);
  if (max_rows < 2) throw ConfigError("max_rows must be >= 2");
  const GroverRun run = grover_run(n, a, omega, b, t_end, cfg.step_control());
  const std::size_t rows = run.trajectory.size();
  const std::size_t stride = std::max<std::size_t>(1, (rows + max_rows - 2) / (max_rows - 1));
  CsvTable t = trajectory_table(run.trajectory, run.params, {{"experiment", "grover-run"}}, stride);
  record_config(t, cfg,
                {{"t_end", format_number(t_end)}, {"max_rows", std::to_string(max_rows)}});
  t.results["success_time"] = run.success_time ? format_number(*run.success_time) : "none";
  t.results["max_p1"] = format_number(max_population(run.trajectory, 1).probability);
  return t;
}

CsvTable runtime_scaling_cmd(const RunConfig& cfg) {
  const std::vector<int> ns =
      cfg.has("n_list") ? cfg.integer_list("n_list") : std::vector<int>{8, 9, 10, 11, 12, 13, 14,
                                                                         15, 16, 17, 18, 19, 20};
  const double a = cfg.number_or("amplitude_a", 1.0);
  const double ratio = cfg.number_or("a_over_omega", 1.0);
  const double horizon = cfg.number_or("horizon", 2.0);
  const ScalingFit fit = runtime_scaling(ns, a, ratio, cfg.experiment_control(), horizon);
  CsvTable t;
  DriveParams p;
  p.amplitude_a = a;
  p.omega = a > 0.0 ? a / ratio : 1.0;
  t.params = params_entries(p);
  t.params["experiment"] = "runtime-scaling";
  std::string list;
  for (int n : ns) list += (list.empty() ? "" : ",") + std::to_string(n);
  record_config(t, cfg,
                {{"n_list", list}, {"a_over_omega", format_number(ratio)},
                 {"horizon", format_number(horizon)}});
  t.columns = {"n", "success_time"};
  for (std::size_t i = 0; i < fit.n.size(); ++i) t.rows.push_back({double(fit.n[i]), fit.times[i]});
  t.results["exponent"] = format_number(fit.exponent);
  t.results["intercept"] = format_number(fit.intercept);
  t.results["residual"] = format_number(fit.residual);
  std::string excluded;
  for (int n : fit.excluded) excluded += (excluded.empty() ? "" : ",") + std::to_string(n);
  t.results["excluded"] = excluded.empty() ? "none" : excluded;
  return t;
}

CsvTable noise_map_cmd(const RunConfig& cfg) {
  cfg.require("delta");
  cfg.require("a1");
  NoiseMapConfig nm;
  nm.params = cfg.drive_params();
  set_default(nm.params, cfg, "amplitude_a", 1.0);
  set_default(nm.params, cfg, "amplitude_b", 9.12);
  set_default(nm.params, cfg, "omega", 3.67);
  const std::string alg = cfg.text_or("algorithm", "alg_b");
  if (alg == "h_half") {
    nm.algorithm = Algorithm::h_half;
  } else if (alg != "alg_b") {
    throw ConfigError("algorithm must be alg_b or h_half, got '" + alg + "'");
  }
  const std::string proj = cfg.text_or("projection", "exact");
  if (proj == "truncated") {
    nm.projection = Projection::truncated;
  } else if (proj != "exact") {
    throw ConfigError("projection must be exact or truncated, got '" + proj + "'");
  }
  nm.average_phase = cfg.flag_or("average_phase", false);
  const SweepGrid g =
      noise_map(nm, cfg.axis("omega1_axis"), cfg.axis("t_axis"), cfg.experiment_control());
  CsvTable t = grid_table(g);
  record_config(t, cfg);
  t.results["points"] = std::to_string(g.size());
  t.results["max_p1"] = format_number(max_finite(g.observable("p1").values));
  return t;
}

CsvTable three_level_cmd(const RunConfig& cfg) {
  if (!cfg.has("delta") && !cfg.has("n")) cfg.require("delta");
  cfg.require("eta");
  DriveParams p = cfg.drive_params();
  set_default(p, cfg, "amplitude_a", 1.0);
  set_default(p, cfg, "amplitude_b", 9.12);
  const double window = cfg.number_or("window", 150.0 / p.delta);
  ScanRefinement refine;
  refine.max_peaks = cfg.integer_or("refine_peaks", 0);
  refine.evaluations_per_peak = cfg.integer_or("refine_evaluations", refine.evaluations_per_peak);
  const SweepGrid g =
      three_level_scan(p, cfg.axis("omega_axis"), window, cfg.experiment_control(), refine);
  CsvTable t = grid_table(g);
  record_config(t, cfg);
  const auto& m1 = g.observable("max_p1").values;
  const auto best = static_cast<std::size_t>(std::max_element(m1.begin(), m1.end()) - m1.begin());
  t.results["best_omega"] = format_number(g.coordinates(best)[0]);
  t.results["best_max_p1"] = format_number(m1[best]);
  t.results["baseline_max_p1"] = format_number(g.observable("baseline_max_p1").values[0]);
  return t;
}

CsvTable rwa_table_cmd(const RunConfig& cfg) {
  cfg.require("delta");
  DriveParams p = cfg.drive_params();
  set_default(p, cfg, "amplitude_a", 1.0);
  const Axis b_axis = cfg.axis("b_axis");
  const Axis w_axis = cfg.axis("omega_axis");
  SweepGrid g;
  g.axes = {b_axis, w_axis};
  g.axes[0].name = "amplitude_b";
  g.axes[1].name = "omega";
  g.params = p;
  g.metadata["experiment"] = "rwa-table";
  g.metadata["b_axis"] = b_axis.spec();
  g.metadata["omega_axis"] = w_axis.spec();
  Observable rabi{"rabi_alg_b", {}, false}, rel{"rabi_over_delta", {}, false},
      leak{"leakage_coupling", {}, false}, cdt{"leakage_argument", {}, false};
  for (double b : b_axis.values()) {
    for (double w : w_axis.values()) {
      DriveParams q = p;
      q.amplitude_b = b;
      q.omega = w;
      const double r = rabi_frequency_alg_b(q.delta, q.amplitude_a, b, w, q.epsilon);
      rabi.values.push_back(r);
      rel.values.push_back(r / (q.epsilon * q.delta));
      leak.values.push_back(leakage_coupling(q));
      cdt.values.push_back(q.epsilon * (b + 0.5 * q.amplitude_a) / w);
    }
  }
  g.observables = {std::move(rabi), std::move(rel), std::move(leak), std::move(cdt)};
  CsvTable t = grid_table(g);
  record_config(t, cfg);
  t.results["points"] = std::to_string(g.size());
  return t;
}

CsvTable rwa_vs_exact_cmd(const RunConfig& cfg) {
  const double delta_ref = cfg.number_or("delta_ref", 1.0 / 32.0);
  const SweepGrid g = rwa_vs_exact_report(cfg.axis("omega_over_delta_axis"),
                                          cfg.axis("a_over_omega_axis"),
                                          cfg.experiment_control(), delta_ref);
  CsvTable t = grid_table(g);
  record_config(t, cfg);
  const auto& err = g.observable("relative_error").values;
  t.results["max_relative_error"] = format_number(max_finite(err));
  t.results["nodes"] = std::to_string(std::count_if(err.begin(), err.end(),
                                                    [](double e) { return std::isnan(e); }));
  return t;
}

}  // namespace

CsvTable run_experiment(const RunConfig& cfg) {
  const std::string& c = cfg.subcommand;
  if (c == "double-crossing") return double_crossing_cmd(cfg);
  if (c == "grover-run") return grover_run_cmd(cfg);
  if (c == "runtime-scaling") return runtime_scaling_cmd(cfg);
  if (c == "noise-map") return noise_map_cmd(cfg);
  if (c == "three-level-scan") return three_level_cmd(cfg);
  if (c == "rwa-table") return rwa_table_cmd(cfg);
  if (c == "rwa-vs-exact") return rwa_vs_exact_cmd(cfg);
  throw ConfigError("subcommand '" + c + "' writes no CSV");
}

int dispatch(const RunConfig& cfg, std::ostream& summary, std::ostream& errors) {
  const auto start = std::chrono::steady_clock::now();
  if (cfg.subcommand == "selftest") {
    const bool ok = run_selftest(summary);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    summary << "selftest " << (ok ? "passed" : "FAILED") << " elapsed_s=" << s << '\n';
    return ok ? kExitOk : kExitSelftest;
  }
  CsvTable table;
  try {
    // Resolve every typed value first so config mistakes exit 1, not 2.
    (void)cfg.experiment_control();
    (void)cfg.drive_params();
  } catch (const std::exception& e) {
    errors << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const std::string path = cfg.text_or("out", "lzs-" + cfg.subcommand + ".csv");
  try {
    table = run_experiment(cfg);
    write_text_file(path, to_csv(table));
  } catch (const ConfigError& e) {
    errors << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    errors << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  summary << cfg.subcommand;
  for (const auto& [k, v] : table.results) summary << ' ' << k << '=' << v;
  summary << " elapsed_s=" << s << " out=" << path << '\n';
  return kExitOk;
}

RunConfig replay_config(const CsvTable& table) {
  const auto it = table.params.find("command");
  if (it == table.params.end()) throw ConfigError("csv params lack 'command'; cannot replay");
  const auto allowed = allowed_keys(it->second);
  std::vector<std::pair<std::string, std::string>> flags;
  for (const auto& [k, v] : table.params) {
    if (k == "out" || (k == "n" && v == "none")) continue;
    if (std::binary_search(allowed.begin(), allowed.end(), k)) flags.emplace_back(k, v);
  }
  return parse_config(it->second, "", flags);
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Driven-search (LZS) simulator: exact propagation, RWA predictors, sweeps"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::map<std::string, std::string>> flag_values;
  std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> flag_options;
  std::map<std::string, CLI::App*> subs;
  for (auto name : subcommands()) {
    const std::string sub_name(name);
    CLI::App* sub = app.add_subcommand(sub_name);
    sub->add_option("--config", config_path, "key = value config file");
    for (const auto& key : allowed_keys(name)) {
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      flag_options[sub_name].emplace_back(key,
                                          sub->add_option("--" + flag, flag_values[sub_name][key]));
    }
    subs[sub_name] = sub;
  }
  std::string replay_path;
  std::string replay_out;
  CLI::App* replay = app.add_subcommand("replay", "rerun the command recorded in a CSV");
  replay->add_option("csv", replay_path)->required();
  replay->add_option("--out", replay_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitConfig;
  }

  try {
    RunConfig cfg;
    if (replay->parsed()) {
      cfg = replay_config(parse_csv(read_text_file(replay_path)));
      if (!replay_out.empty()) cfg.values["out"] = ConfigValue{replay_out, 0};
    } else {
      for (const auto& [name, sub] : subs) {
        if (!sub->parsed()) continue;
        std::vector<std::pair<std::string, std::string>> flags;
        for (const auto& [key, option] : flag_options[name]) {
          if (option->count() > 0) flags.emplace_back(key, flag_values[name][key]);
        }
        const std::string text = config_path.empty() ? "" : read_text_file(config_path);
        cfg = parse_config(name, text, flags);
      }
    }
    return dispatch(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace lzs
