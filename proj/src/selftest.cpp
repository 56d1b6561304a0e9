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

#include "lzs/selftest.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <ostream>
#include <sstream>

#include "lzs/bessel.hpp"
#include "lzs/cli.hpp"
#include "lzs/errors.hpp"
#include "lzs/experiments.hpp"
#include "lzs/rwa.hpp"

namespace lzs {

namespace {

constexpr double kPi = std::numbers::pi;

// Accumulates failed expectations into one detail string.
class Checks {
 public:
  void near(std::string_view what, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream s;
      s.precision(12);
      s << what << " = " << got << ", want " << want << " +- " << tol;
      fail(s.str());
    }
  }
  void that(std::string_view what, bool ok) {
    if (!ok) fail(std::string(what));
  }
  template <class E, class F>
  void throws(std::string_view what, F&& f) {
    try {
      f();
    } catch (const E&) {
      return;
    } catch (const std::exception& e) {
      fail(std::string(what) + ": wrong exception: " + e.what());
      return;
    }
    fail(std::string(what) + ": no exception");
  }
  std::string result() const { return detail_; }

 private:
  void fail(const std::string& s) {
    if (!detail_.empty()) detail_ += "; ";
    detail_ += s;
  }
  std::string detail_;
};

DriveParams drive(double delta, double a, double b, double omega) {
  DriveParams p;
  p.delta = delta;
  p.amplitude_a = a;
  p.amplitude_b = b;
  p.omega = omega;
  return p;
}

std::vector<SelftestCase> build_cases() {
  std::vector<SelftestCase> cases;
  auto add = [&](std::string name, auto body) {
    cases.push_back({std::move(name), [body] {
                       Checks c;
                       body(c);
                       return c.result();
                     }});
  };

  add("bessel special values", [](Checks& c) {
    c.near("J0(0)", bessel_j(0, 0.0), 1.0, 0.0);
    c.near("J1(0)", bessel_j(1, 0.0), 0.0, 0.0);
    c.near("J0(2.404826)", bessel_j(0, 2.404826), 0.0, 1e-6);
    c.near("J_-3(1.7) + J_3(1.7)", bessel_j(-3, 1.7) + bessel_j(3, 1.7), 0.0, 1e-15);
    c.throws<UnsupportedRange>("J0(1e4)", [] { bessel_j(0, 1e4); });
  });
  add("bessel roots", [](Checks& c) {
    const auto r = j0_roots(10);
    c.near("root 1", r[0], 2.404826, 1e-6);
    c.near("root 2", r[1], 5.520078, 1e-6);
    c.that("root10 - root9 in [3.13, 3.15]", r[9] - r[8] >= 3.13 && r[9] - r[8] <= 3.15);
    const auto j1 = bessel_roots(1, 9);
    for (std::size_t i = 0; i < j1.size(); ++i) {
      c.that("J0/J1 roots interlace", r[i] < j1[i] && j1[i] < r[i + 1]);
    }
  });
  add("bessel identity", [](Checks& c) {
    double worst = 0.0;
    for (double z = 0.0; z <= 10.0; z += 0.5) {
      for (double g = 0.0; g < 2.0 * kPi; g += 0.3) {
        Complex s = 0.0;
        for (int k = -40; k <= 40; ++k) s += bessel_j(k, z) * std::polar(1.0, k * g);
        worst = std::max(worst, std::abs(s - std::polar(1.0, z * std::sin(g))));
      }
    }
    c.near("max |sum - exp(i z sin g)|", worst, 0.0, 1e-8);
  });
  add("rabi predictors", [](Checks& c) {
    c.near("lzs A=0", rabi_frequency_lzs(0.01, 0.0, 1.0, 2.0), 0.02, 1e-15);
    c.near("lzs at the J0 root", rabi_frequency_lzs(1e-6, 2.404826, 1.0), 0.0, 1e-11);
    const double d = std::ldexp(1.0, -5);
    c.near("lzs delta=2^-5 A=1 omega=0.5", rabi_frequency_lzs(d, 1.0, 0.5) / d,
           std::abs(bessel_j(0, std::sqrt(1 - d * d) * 2.0)), 1e-15);
    c.near("alg_b B=0", rabi_frequency_alg_b(d, 0.7, 0.0, 2.0), rabi_frequency_lzs(d, 0.7, 2.0),
           1e-15);
    c.near("alg_b at root", rabi_frequency_alg_b(1e-6, 1.0, 1.404826, 1.0), 0.0, 1e-11);
    c.near("alg_b A=1 B=9.12 omega=4", rabi_frequency_alg_b(1e-6, 1.0, 9.12, 4.0) / 1e-6,
           0.063184, 1e-5);
    c.near("design root 1", cdt_design_omega(1.0, 9.1193, 1), 4.0000, 1e-4);
    c.near("design root 2", cdt_design_omega(1.0, 9.12, 2), 1.7427, 1e-4);
    c.near("design A=0", cdt_design_omega(0.0, 2.404826, 1), 1.0, 1e-6);
    c.near("noisy half A1=0", rabi_frequency_noisy_half(0.125, 0.0, 1.0), 0.125, 0.0);
    c.near("noisy half at root", rabi_frequency_noisy_half(0.125, 2.404826 / 2.0, 1.0), 0.0, 1e-7);
    c.near("noisy half 0.05/1", rabi_frequency_noisy_half(0.125, 0.05, 1.0) / 0.125,
           bessel_j(0, 0.1), 1e-15);
  });
  add("rabi law vs propagation", [](Checks& c) {
    const RabiComparison r = rabi_comparison(drive(std::ldexp(1.0, -5), 1.0, 0.0, 0.5));
    c.near("relative error", r.relative_error, 0.0, 0.02);
  });
  add("effective hamiltonians", [](Checks& c) {
    const double d = std::ldexp(1.0, -10);
    const auto single = effective_h_noisy_alg_b(drive(d, 1.0, 9.12, 3.67));
    c.near("A1=0 rate", single.rabi_frequency(), d * std::abs(bessel_j(0, 10.12 / 3.67)), 1e-12 * d);
    c.near("A1=0 rate vs xi form", single.rabi_frequency() / rabi_frequency_alg_b(d, 1.0, 9.12, 3.67),
           1.0, 1e-5);
    DriveParams p = drive(d, 1.0, 9.12, 3.67);
    p.a1 = 0.05;
    p.omega1 = 3.67 * std::numbers::sqrt2 * 3.1;
    const auto noisy = effective_h_noisy_alg_b(p);
    c.near("k=k1=0 coefficient", std::abs(noisy.static_part(0, 1)) / (0.5 * d),
           std::abs(bessel_j(0, 10.12 / 3.67) * bessel_j(0, 0.1 / p.omega1)), 1e-12);
    p.omega1 = 3.67 / 2.0;
    const auto resonant = effective_h_noisy_alg_b(p);
    c.that("omega1 = omega/2 reports non-averaging terms", !resonant.resonances.empty());
    c.that("omega1 = omega/2 ratio is 1/2",
           resonant.harmonic_ratio && resonant.harmonic_ratio->p == 1 &&
               resonant.harmonic_ratio->q == 2);
    DriveParams q = drive(d, 1.0, 9.12, 4.0);
    q.eta = 0.3;
    c.that("leak coupling near root < 3e-4", std::abs(effective_h_three_level(q).static_part(0, 2)) <
                                                 0.3 * 1e-3);
    q.omega = cdt_design_omega(1.0, 9.12, 1);
    c.near("leak coupling at root", std::abs(effective_h_three_level(q).static_part(0, 2)), 0.0,
           1e-10);
    q.eta = 0.0;
    const auto decoupled = effective_h_three_level(q);
    c.that("eta=0 decouples |2bar>",
           decoupled.static_part(0, 2) == 0.0 && decoupled.static_part(2, 2) == 0.5);
  });
  add("grover reduction n=4", [](Checks& c) {
    // Full 16-dim propagation vs the exact 2-level image.
    DriveParams p = DriveParams::for_qubits(4);
    p.amplitude_a = 1.0;
    p.omega = 2.0;
    const std::size_t y = 5;
    StepControl ctl;
    ctl.steps_per_drive_period = 128;
    const HermitianOperator full = h_grover_full_driven(4, y, p);
    const HermitianOperator two = h_alg_b_projected(p, Projection::exact);
    const CVector target = basis_state(4, y);
    const CVector full_y = bar_coordinates_of_y(p.delta);
    const Trajectory tf = propagate(full, StateVector{uniform_state(4), Basis::computational}, 0.0,
                                    10.0 / p.delta, ctl, std::span(&target, 1));
    const Trajectory tp = propagate(two, StateVector{bar_coordinates_of_u(p.delta), Basis::bar},
                                    0.0, 10.0 / p.delta, ctl, std::span(&full_y, 1));
    double worst = 0.0;
    for (std::size_t i = 0; i < tf.size(); ++i) worst = std::max(worst, std::abs(tf.at(i, 0) - tp.at(i, 0)));
    c.that("same step grid", tf.size() == tp.size());
    c.near("max |P_y full - P_y projected|", worst, 0.0, 1e-6);
  });
  add("search runs", [](Checks& c) {
    const GroverRun run = grover_run(10, 0.0, 1.0, 0.0, 100.0);
    c.near("A=0 success time", *run.success_time, kPi / (2.0 * gap(10)), 1e-3);
    c.throws<std::invalid_argument>("single n fit", [] { runtime_scaling({10}, 1.0, 1.0); });
  });
  add("double crossing limits", [](Checks& c) {
    c.that("fast limit 1-P > 0.99", 1.0 - double_crossing(0.25, 1.0, 100.0).p_plus2 > 0.99);
    c.that("adiabatic limit 1-P > 0.98",
           1.0 - double_crossing(0.25, 1.0, 0.01 * 0.0625).p_plus2 > 0.98);
  });
  add("noise map", [](Checks& c) {
    NoiseMapConfig cfg;
    cfg.params = drive(0.125, 1.0, 9.12, 3.67);
    const SweepGrid g = noise_map(cfg, Axis::logarithmic("omega1", 0.1, 10.0, 3),
                                  Axis::linear("t", 0.0, 20.0, 5));
    const auto& v = g.observable("p1").values;
    bool same = true;
    for (std::size_t i = 5; i < v.size(); ++i) same = same && v[i] == v[i % 5];
    c.that("A1=0 rows identical", same);
    NoiseMapConfig frozen;
    frozen.algorithm = Algorithm::h_half;
    frozen.params = drive(0.125, 0.0, 0.0, 1.0);
    frozen.params.a1 = 0.125;
    const SweepGrid f = noise_map(frozen, Axis::linear("omega1", 0.0, 0.0, 1),
                                  Axis::linear("t", 0.0, 80.0, 801));
    const auto& fv = f.observable("p1").values;
    c.that("static error keeps p1 < 0.5", *std::max_element(fv.begin(), fv.end()) < 0.5);
  });
  add("three-level decoupled", [](Checks& c) {
    DriveParams p = drive(std::ldexp(1.0, -5), 1.0, 9.12, 4.0);
    const LeakageResult r = three_level_run(p, ThreeLevelVariant::alg_b, 200.0);
    c.near("eta=0 max p2", r.max_p2.probability, 0.0, 0.0);
  });
  add("rwa vs exact", [](Checks& c) {
    const SweepGrid g = rwa_vs_exact_report(Axis::linear("omega_over_delta", 100.0, 100.0, 1),
                                            Axis::linear("a_over_omega", 0.5, 0.5, 1));
    c.near("omega/delta=100 A/omega=0.5", g.observable("relative_error").values[0], 0.0, 0.03);
    const SweepGrid node = rwa_vs_exact_report(Axis::linear("omega_over_delta", 100.0, 100.0, 1),
                                               Axis::linear("a_over_omega", 2.404826, 2.404826, 1));
    c.that("node sentinel", std::isnan(node.observable("relative_error").values[0]));
  });
  add("csv round trip", [](Checks& c) {
    SweepGrid g;
    g.axes = {Axis::linear("omega", 0.1, 0.7, 3), Axis::linear("t", 0.0, 1.0, 2)};
    g.params = drive(0.1, 1.0, 2.0, 3.0);
    g.metadata["experiment"] = "check";
    g.observables = {Observable{"v", {0.1, 1.0 / 3.0, 2e-300, -0.0, 1.0 / 7.0, 5e17}, false}};
    const std::string text = to_csv(grid_table(g));
    const SweepGrid back = grid_from_table(parse_csv(text));
    c.that("values bit-exact", back.observables[0].values == g.observables[0].values);
    c.that("text stable", to_csv(grid_table(back)) == text);
    const std::string empty = to_csv(trajectory_table(Trajectory{}, DriveParams{}));
    c.that("empty trajectory header only", std::count(empty.begin(), empty.end(), '\n') == 3);
  });
  add("config", [](Checks& c) {
    const std::pair<std::string, std::string> flag{"delta", "0.25"};
    const RunConfig cfg = parse_config("double-crossing", "delta = 0.125\n", std::span(&flag, 1));
    c.near("flag wins", cfg.drive_params().delta, 0.25, 0.0);
    try {
      (void)run_experiment(parse_config("grover-run", "n = 15\n"));
      c.that("missing omega rejected", false);
    } catch (const ConfigError& e) {
      c.that("error names omega", std::string(e.what()).find("omega") != std::string::npos);
    }
    const Axis a = parse_axis("omega1_axis", "0.01:10:200:log");
    c.that("log axis", a.log && a.points == 200 && a.values().front() == 0.01 &&
                           a.values().back() == 10.0);
  });
  return cases;
}

}  // namespace

const std::vector<SelftestCase>& selftest_cases() {
  static const std::vector<SelftestCase> cases = build_cases();
  return cases;
}

bool run_selftest(std::ostream& out) {
  bool ok = true;
  for (const auto& c : selftest_cases()) {
    std::string detail;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      out << "PASS " << c.name << '\n';
    } else {
      out << "FAIL " << c.name << ": " << detail << '\n';
      ok = false;
    }
  }
  return ok;
}

}  // namespace lzs
