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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include <doctest.h>

#include "lzs/cli.hpp"
#include "lzs/config.hpp"
#include "lzs/csv.hpp"
#include "lzs/errors.hpp"

using namespace lzs;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("lzs-test-" + name)).string();
}

RunConfig config(std::string_view sub, std::string_view text) { return parse_config(sub, text); }

}  // namespace

TEST_CASE("numbers round-trip bit-exactly") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 20000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    const double back = parse_number(format_number(v), "v");
    CHECK(std::memcmp(&back, &v, sizeof v) == 0);
    ++checked;
  }
  for (double v : {0.0, -0.0, 1.0 / 3.0, 5e-324, std::numeric_limits<double>::max(), 1e17}) {
    CHECK(parse_number(format_number(v), "v") == v);
  }
  CHECK(parse_number("+2.5", "x") == 2.5);
  CHECK(parse_number("1e-3", "x") == 1e-3);
  CHECK_THROWS_AS(parse_number("1.5x", "x"), InvalidArgument);
  CHECK_THROWS_AS(parse_number("", "x"), InvalidArgument);
  CHECK_THROWS_AS(parse_number("1,5", "x"), InvalidArgument);
}

TEST_CASE("drive params entries") {
  DriveParams p = DriveParams::for_qubits(8);
  p.amplitude_a = 0.7;
  p.amplitude_b = 9.12;
  p.omega = 3.67;
  p.a1 = 0.05;
  p.omega1 = 2.5;
  p.phi = 0.1;
  p.eta = 0.3;
  const auto e = params_entries(p);
  CHECK(e.at("n") == "8");
  const DriveParams back = drive_params_from(e);
  CHECK(back.n == 8);
  CHECK(back.delta == p.delta);
  CHECK(back.omega1 == p.omega1);
  CHECK(back.eta == p.eta);
  DriveParams free;
  free.delta = 0.1;
  CHECK(params_entries(free).at("n") == "none");
  CHECK_FALSE(drive_params_from(params_entries(free)).n);
}

TEST_CASE("csv format") {
  CsvTable t;
  t.params = {{"delta", "0.25"}, {"command", "double-crossing"}};
  t.results = {{"points", "2"}};
  t.columns = {"omega", "p"};
  t.rows = {{0.5, 0.25}, {1.0, 1.0 / 3.0}};
  const std::string text = to_csv(t);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == kCsvMagic);
  std::getline(lines, line);
  CHECK(line == "# params: command=double-crossing delta=0.25");
  std::getline(lines, line);
  CHECK(line == "# results: points=2");
  std::getline(lines, line);
  CHECK(line == "omega,p");
  std::getline(lines, line);
  CHECK(line == "0.5,0.25");
  const CsvTable back = parse_csv(text);
  CHECK(back.params == t.params);
  CHECK(back.results == t.results);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK(to_csv(back) == text);

  CHECK_THROWS_AS(parse_csv("omega,p\n1,2\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_csv(std::string(kCsvMagic) + "\nomega,p\n1,2,3\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_csv(std::string(kCsvMagic) + "\nomega,p\n1,abc\n"), InvalidArgument);
  CsvTable bad = t;
  bad.params["note"] = "two words";
  CHECK_THROWS_AS(to_csv(bad), InvalidArgument);
}

TEST_CASE("grid tables rebuild the grid") {
  SweepGrid g;
  g.axes = {Axis::logarithmic("omega1", 0.01, 10.0, 3), Axis::linear("t", 0.0, 5.0, 4)};
  g.params.delta = 0.125;
  g.params.amplitude_a = 1.0;
  g.observables = {Observable{"p1", std::vector<double>(12, 0.125), true}};
  g.observables[0].values[7] = 0.75;
  const CsvTable t = grid_table(g);
  CHECK(t.columns == std::vector<std::string>{"omega1", "t", "p1"});
  CHECK(t.rows.size() == 12);
  CHECK(t.rows[7][0] == g.coordinates(7)[0]);
  CHECK(t.rows[7][1] == g.coordinates(7)[1]);
  const SweepGrid back = grid_from_table(parse_csv(to_csv(t)));
  CHECK(back.size() == 12);
  CHECK(back.axes[0].values() == g.axes[0].values());
  CHECK(back.axes[1].values() == g.axes[1].values());
  CHECK(back.observable("p1").values == g.observable("p1").values);

  // An irregular axis (refined scans) comes back as explicit values.
  SweepGrid irregular;
  irregular.axes = {Axis::linear("omega", 1.0, 2.0, 2)};
  irregular.axes[0].explicit_values = {1.0, 1.37, 1.4, 2.0};
  irregular.observables = {Observable{"max_p1", {0.1, 0.9, 0.8, 0.2}, true}};
  const SweepGrid ib = grid_from_table(parse_csv(to_csv(grid_table(irregular))));
  CHECK(ib.axes[0].values() == irregular.axes[0].values());

  CsvTable broken = t;
  broken.rows.pop_back();
  CHECK_THROWS_AS(grid_from_table(broken), InvalidArgument);
}

TEST_CASE("trajectory tables") {
  Trajectory traj;
  traj.columns = 2;
  for (int i = 0; i < 10; ++i) {
    traj.times.push_back(i);
    traj.populations.push_back(1.0 - 0.1 * i);
    traj.populations.push_back(0.1 * i);
  }
  DriveParams p;
  p.delta = 0.5;
  const CsvTable all = trajectory_table(traj, p, {{"experiment", "grover-run"}});
  CHECK(all.columns == std::vector<std::string>{"time", "p0", "p1"});
  CHECK(all.rows.size() == 10);
  CHECK(all.params.at("experiment") == "grover-run");
  const CsvTable thin = trajectory_table(traj, p, {}, 4);
  REQUIRE(thin.rows.size() == 4);
  CHECK(thin.rows[1][0] == 4.0);
  CHECK(thin.rows.back()[0] == 9.0);
  CHECK_THROWS_AS(trajectory_table(traj, p, {}, 0), InvalidArgument);
}

TEST_CASE("text files") {
  const std::string path = temp_path("file.txt");
  write_text_file(path, "abc\n");
  CHECK(read_text_file(path) == "abc\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_text_file(path), IoError);
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.csv", "x"), IoError);
}

TEST_CASE("config parsing") {
  const RunConfig cfg = config("noise-map",
                               "# control error map\n"
                               "delta = 0.125   # n unset\n"
                               "\n"
                               "amplitude-a = 1\n"
                               "omega1_axis = 0.01:10:200:log\n"
                               "t_axis = 0:100:11\n"
                               "average_phase = true\n");
  CHECK(cfg.number("delta") == 0.125);
  CHECK(cfg.number("amplitude_a") == 1.0);
  CHECK(cfg.values.at("amplitude_a").line == 4);
  CHECK(cfg.flag_or("average_phase", false));
  CHECK(cfg.axis("t_axis").values()[1] == 10.0);
  CHECK(cfg.number_or("omega", 3.67) == 3.67);
  CHECK(cfg.text_or("algorithm", "alg_b") == "alg_b");
  CHECK(cfg.drive_params().delta == 0.125);

  try {
    (void)config("noise-map", "delta = 0.1\nbogus = 3\n");
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(config("noise-map", "delta 0.1\n"), ConfigError);
  CHECK_THROWS_AS(config("noise-map", "delta =\n"), ConfigError);
  CHECK_THROWS_AS(config("frobnicate", ""), ConfigError);
  try {
    (void)config("grover-run", "\n\nomega = fast\n").number("omega");
    FAIL("bad number accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  const std::pair<std::string, std::string> flags[] = {{"amplitude-b", "2"}, {"delta", "0.5"}};
  const RunConfig over = parse_config("grover-run", "delta = 0.25\n", flags);
  CHECK(over.number("delta") == 0.5);
  CHECK(over.number("amplitude_b") == 2.0);
  const std::pair<std::string, std::string> unknown[] = {{"colour", "red"}};
  CHECK_THROWS_AS(parse_config("grover-run", "", unknown), ConfigError);

  CHECK(config("runtime-scaling", "n_list = 8:12\n").integer_list("n_list") ==
        std::vector<int>{8, 9, 10, 11, 12});
  CHECK(config("runtime-scaling", "n_list = 8,10,14\n").integer_list("n_list") ==
        std::vector<int>{8, 10, 14});
  CHECK_THROWS_AS(config("runtime-scaling", "n_list = 12:8\n").integer_list("n_list"), ConfigError);
  CHECK_THROWS_AS(config("runtime-scaling", "n_list = 8.5,9\n").integer_list("n_list"), ConfigError);

  CHECK(config("grover-run", "n = 10\n").drive_params().delta == gap(10));
  CHECK_THROWS_AS(config("grover-run", "n = 10\ndelta = 0.5\n").drive_params(), ConfigError);
  CHECK(config("grover-run", "order = 4\n").step_control().order == MagnusOrder::fourth);
  CHECK_THROWS_AS(config("grover-run", "order = 3\n").step_control(), ConfigError);
  CHECK_THROWS_AS(config("grover-run", "execution = gpu\n").experiment_control(), ConfigError);
  CHECK_THROWS_AS(config("grover-run", "").require("omega"), ConfigError);

  CHECK_THROWS_AS(parse_axis("a", "1:2"), ConfigError);
  CHECK_THROWS_AS(parse_axis("a", "1:2:0"), ConfigError);
  CHECK_THROWS_AS(parse_axis("a", "0:2:5:log"), ConfigError);
  CHECK(parse_axis("a", "1:2:3").values() == std::vector<double>{1.0, 1.5, 2.0});
}

TEST_CASE("every subcommand's keys are accepted") {
  for (auto sub : subcommands()) {
    const auto keys = allowed_keys(sub);
    if (sub != "selftest") CHECK(std::is_sorted(keys.begin(), keys.end()));
  }
  const auto nm = allowed_keys("noise-map");
  CHECK(std::binary_search(nm.begin(), nm.end(), "omega1_axis"));
  CHECK(std::binary_search(nm.begin(), nm.end(), "out"));
  const auto gr = allowed_keys("grover-run");
  CHECK_FALSE(std::binary_search(gr.begin(), gr.end(), "omega1_axis"));
}

TEST_CASE("experiments write the csv columns downstream plots read") {
  struct Case {
    std::string sub;
    std::string text;
    std::vector<std::string> columns;
  };
  const std::vector<Case> cases{
      {"double-crossing", "delta = 0.25\namplitude_a = 1\nomega_axis = 0.1:10:5:log\n",
       {"omega", "p_plus2", "one_minus_p_plus2", "p1_bare"}},
      {"grover-run", "n = 8\namplitude_a = 1\nomega = 2\nmax_rows = 50\n", {"time", "p0", "p1"}},
      {"runtime-scaling", "n_list = 8:10\namplitude_a = 1\na_over_omega = 0.5\n",
       {"n", "success_time"}},
      {"noise-map",
       "delta = 0.125\nalgorithm = h_half\na1 = 0.05\nomega1_axis = 0.5:5:3\nt_axis = 0:50:6\n",
       {"omega1", "t", "p1"}},
      {"three-level-scan", "n = 8\neta = 0.3\nomega_axis = 3:4.5:4\nwindow = 400\n",
       {"omega", "max_p1", "t_at_p1", "max_p2", "t_at_p2", "baseline_max_p1"}},
      {"rwa-table", "delta = 0.001\nb_axis = 0:10:3\nomega_axis = 1:5:3\neta = 0.3\n",
       {"amplitude_b", "omega", "rabi_alg_b", "rabi_over_delta", "leakage_coupling",
        "leakage_argument"}},
      {"rwa-vs-exact", "omega_over_delta_axis = 10:100:2:log\na_over_omega_axis = 0.5:1:2\n",
       {"omega_over_delta", "a_over_omega", "delta", "amplitude_a", "omega_measured", "omega_rwa",
        "relative_error"}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.sub);
    const CsvTable t = run_experiment(config(c.sub, c.text));
    CHECK(t.columns == c.columns);
    CHECK(t.params.at("command") == c.sub);
    CHECK_FALSE(t.rows.empty());
    CHECK_FALSE(t.results.empty());
    // The params line alone reproduces the file.
    const CsvTable again = run_experiment(replay_config(parse_csv(to_csv(t))));
    CHECK(to_csv(again) == to_csv(t));
  }
}

TEST_CASE("dispatch exit codes and output") {
  const std::string out = temp_path("dispatch.csv");
  std::ostringstream summary, errors;
  RunConfig ok = config("double-crossing", "delta = 0.25\namplitude_a = 1\nomega_axis = 1:2:2\n");
  ok.values["out"] = ConfigValue{out, 0};
  CHECK(dispatch(ok, summary, errors) == kExitOk);
  CHECK(summary.str().starts_with("double-crossing "));
  CHECK(summary.str().find("out=" + out) != std::string::npos);
  const CsvTable written = parse_csv(read_text_file(out));
  CHECK(written.rows.size() == 2);
  std::filesystem::remove(out);

  RunConfig missing = config("grover-run", "n = 8\n");
  CHECK(dispatch(missing, summary, errors) == kExitConfig);
  CHECK(errors.str().find("omega") != std::string::npos);

  // Valid config, impossible physics: A above 1 is caught by the model.
  RunConfig bad = config("grover-run", "n = 8\nomega = 1\namplitude_a = 2\n");
  CHECK(dispatch(bad, summary, errors) != kExitOk);

  RunConfig unwritable = ok;
  unwritable.values["out"] = ConfigValue{"/nonexistent-dir/x.csv", 0};
  CHECK(dispatch(unwritable, summary, errors) == kExitRuntime);

  CHECK_THROWS_AS(replay_config(CsvTable{}), ConfigError);
}

TEST_CASE("command line") {
  const std::string out = temp_path("cli.csv");
  const std::string replayed = temp_path("cli-replay.csv");
  auto run = [](std::vector<std::string> args) {
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    argv.push_back(nullptr);
    return cli_main(static_cast<int>(args.size()), argv.data());
  };
  CHECK(run({"lzs-sim", "double-crossing", "--delta", "0.25", "--amplitude-a", "1",
             "--omega-axis", "0.5:2:3", "--out", out}) == kExitOk);
  CHECK(run({"lzs-sim", "replay", out, "--out", replayed}) == kExitOk);
  CHECK(read_text_file(out) == read_text_file(replayed));
  CHECK(run({"lzs-sim", "double-crossing", "--no-such-flag", "1"}) == kExitConfig);
  CHECK(run({"lzs-sim"}) == kExitConfig);
  CHECK(run({"lzs-sim", "grover-run", "--n", "8", "--omega", "abc", "--out", out}) == kExitConfig);
  std::filesystem::remove(out);
  std::filesystem::remove(replayed);
}
