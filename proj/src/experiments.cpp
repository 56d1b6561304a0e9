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

#include "lzs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "lzs/errors.hpp"
#include "lzs/rwa.hpp"

namespace lzs {

namespace {

using kernels::Execution;
using kernels::for_each_index;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

StepControl point_control(const ExperimentControl& ctl) {
  StepControl s = ctl.steps;
  // Sweep points already run in parallel; keep each propagation serial.
  if (ctl.execution == Execution::parallel) s.execution = Execution::serial;
  s.snapshot_every = 0;
  return s;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

StateVector bar_ground(Eigen::Index dim) {
  return StateVector::basis_state(dim, 0, dim == 3 ? Basis::three_level : Basis::bar);
}

}  // namespace

// -- Axis / SweepGrid ----------------------------------------------------------

Axis Axis::linear(std::string name, double min, double max, int points) {
  Axis a{std::move(name), min, max, points, false, {}};
  a.validate();
  return a;
}

Axis Axis::logarithmic(std::string name, double min, double max, int points) {
  Axis a{std::move(name), min, max, points, true, {}};
  a.validate();
  return a;
}

void Axis::validate() const {
  if (name.empty()) throw InvalidArgument("axis needs a name");
  if (!explicit_values.empty()) return;
  if (points < 1) throw InvalidArgument("axis " + name + " needs at least one point");
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw InvalidArgument("axis " + name + " bounds must be finite");
  }
  if (points > 1 && !(max > min)) throw InvalidArgument("axis " + name + " needs max > min");
  if (log && !(min > 0.0)) throw InvalidArgument("log axis " + name + " needs min > 0");
}

std::size_t Axis::size() const {
  return explicit_values.empty() ? static_cast<std::size_t>(points) : explicit_values.size();
}

std::vector<double> Axis::values() const {
  if (!explicit_values.empty()) return explicit_values;
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = min;
    return out;
  }
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(points - 1);
    out[static_cast<std::size_t>(i)] =
        log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
            : min + f * (max - min);
  }
  // Pin the end points exactly.
  out.front() = min;
  out.back() = max;
  return out;
}

std::string Axis::spec() const {
  if (!explicit_values.empty()) return "explicit:" + std::to_string(explicit_values.size());
  std::string s = format_double(min) + ":" + format_double(max) + ":" + std::to_string(points);
  if (log) s += ":log";
  return s;
}

std::size_t SweepGrid::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

const Observable& SweepGrid::observable(const std::string& name) const {
  for (const auto& o : observables) {
    if (o.name == name) return o;
  }
  throw InvalidArgument("grid has no observable '" + name + "'");
}

std::vector<double> SweepGrid::coordinates(std::size_t index) const {
  std::vector<double> c(axes.size());
  for (std::size_t a = axes.size(); a-- > 0;) {
    const auto vals = axes[a].values();
    c[a] = vals[index % vals.size()];
    index /= vals.size();
  }
  return c;
}

void SweepGrid::validate() const {
  const std::size_t n = size();
  for (const auto& o : observables) {
    if (o.values.size() != n) {
      throw InvalidArgument("observable " + o.name + " has " + std::to_string(o.values.size()) +
                            " values for " + std::to_string(n) + " grid points");
    }
    if (!o.probability) continue;
    for (double v : o.values) {
      // Unitary rounding can leave probabilities a few ulp outside [0, 1].
      if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
        throw InvalidArgument("observable " + o.name + " leaves [0, 1]: " + format_double(v));
      }
    }
  }
}

// -- double crossing -------------------------------------------------------------

DoubleCrossing double_crossing(double delta, double a, double omega, const StepControl& ctl) {
  if (!(a > 0.0 && a <= 1.0)) throw InvalidArgument("double crossing needs A in (0, 1]");
  DriveParams p;
  p.delta = delta;
  p.amplitude_a = a;
  p.omega = omega;
  const HermitianOperator h = h_lzs(p);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h.entries(0.0));
  const CVector ground = eig.eigenvectors().col(0);
  const CVector excited = eig.eigenvectors().col(1);
  // H(2 pi / omega) = H(0), so its instantaneous eigenbasis is the initial one.
  const CVector psi = propagate_state(h, StateVector{ground, Basis::bar}, 0.0, kTwoPi / omega, ctl);
  return {std::norm(excited.dot(psi)), std::norm(psi[1])};
}

SweepGrid double_crossing_scan(double delta, double a, const Axis& omega_axis,
                               const ExperimentControl& ctl) {
  omega_axis.validate();
  const auto omegas = omega_axis.values();
  const StepControl steps = point_control(ctl);
  std::vector<DoubleCrossing> results(omegas.size());
  for_each_index(ctl.execution, omegas.size(),
                 [&](std::size_t i) { results[i] = double_crossing(delta, a, omegas[i], steps); });

  SweepGrid g;
  g.axes = {omega_axis};
  g.axes[0].name = "omega";
  g.params.delta = delta;
  g.params.amplitude_a = a;
  g.metadata["experiment"] = "double-crossing";
  g.metadata["omega_axis"] = omega_axis.spec();
  Observable p2{"p_plus2", {}, true}, q2{"one_minus_p_plus2", {}, true}, p1{"p1_bare", {}, true};
  for (const auto& r : results) {
    p2.values.push_back(r.p_plus2);
    q2.values.push_back(1.0 - r.p_plus2);
    p1.values.push_back(r.p1_bare);
  }
  g.observables = {std::move(p2), std::move(q2), std::move(p1)};
  g.validate();
  return g;
}

// -- search runs -----------------------------------------------------------------

std::optional<double> first_success_time(const HermitianOperator& h, const StateVector& psi0,
                                         double t_end, const StepControl& ctl,
                                         Eigen::Index state_index, double threshold) {
  if (state_index < 0 || state_index >= h.dim()) {
    throw InvalidArgument("state index out of range");
  }
  std::optional<double> hit;
  double prev_t = 0.0;
  double prev_p = 0.0;
  bool first = true;
  propagate_state(h, psi0, 0.0, t_end, ctl, [&](double t, const CVector& psi) {
    if (hit) return;
    const double p = std::norm(psi[state_index]);
    if (p >= threshold) {
      hit = first ? t : prev_t + (t - prev_t) * (threshold - prev_p) / (p - prev_p);
    }
    prev_t = t;
    prev_p = p;
    first = false;
  });
  return hit;
}

GroverRun grover_run(int n, double a, double omega, double b, double t_end,
                     const StepControl& ctl) {
  if (n < 2) throw InvalidArgument("grover_run needs n >= 2");
  DriveParams p = DriveParams::for_qubits(n);
  p.amplitude_a = a;
  p.amplitude_b = b;
  p.omega = omega;
  const HermitianOperator h = h_alg_b_projected(p, Projection::exact);
  GroverRun run{p, propagate(h, bar_ground(2), 0.0, t_end, ctl), std::nullopt};
  run.success_time = first_passage_time(run.trajectory, 1, kSuccessThreshold);
  return run;
}

ScalingFit runtime_scaling(const std::vector<int>& n_list, double a, double a_over_omega,
                           const ExperimentControl& ctl, double horizon) {
  if (n_list.size() < 3) throw InvalidArgument("runtime scaling fit needs at least 3 values of n");
  for (int n : n_list) {
    if (n < 6 || n > 24) throw InvalidArgument("runtime scaling supports 6 <= n <= 24");
  }
  if (a > 0.0 && !(a_over_omega > 0.0)) throw InvalidArgument("A/omega must be > 0");
  const double omega = a > 0.0 ? a / a_over_omega : 1.0;
  const StepControl steps = point_control(ctl);
  std::vector<std::optional<double>> times(n_list.size());
  for_each_index(ctl.execution, n_list.size(), [&](std::size_t i) {
    DriveParams p = DriveParams::for_qubits(n_list[i]);
    p.amplitude_a = a;
    p.omega = omega;
    const double rate = rabi_frequency_lzs(p.delta, a, omega);
    const HermitianOperator h = h_alg_b_projected(p, Projection::exact);
    times[i] = first_success_time(h, bar_ground(2), horizon * kTwoPi / rate, steps);
  });

  ScalingFit fit;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (times[i]) {
      fit.n.push_back(n_list[i]);
      fit.times.push_back(*times[i]);
    } else {
      fit.excluded.push_back(n_list[i]);
    }
  }
  if (fit.n.size() < 3) {
    throw InsufficientData("fewer than 3 runs reached the success threshold");
  }
  // Least squares log2(t) = exponent * n + intercept.
  const auto m = static_cast<double>(fit.n.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < fit.n.size(); ++i) {
    const double x = fit.n[i];
    const double y = std::log2(fit.times[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.exponent * sx) / m;
  double ss = 0.0;
  for (std::size_t i = 0; i < fit.n.size(); ++i) {
    const double r = std::log2(fit.times[i]) - (fit.exponent * fit.n[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

// -- control errors --------------------------------------------------------------

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::alg_b ? "alg_b" : "h_half";
}

HermitianOperator noisy_operator(const NoiseMapConfig& cfg, double omega1, double phi) {
  const DriveParams& p = cfg.params;
  HermitianOperator h = cfg.algorithm == Algorithm::alg_b
                            ? h_alg_b_projected(p, cfg.projection)
                            : h_grover_projected(0.5, p.delta, p.epsilon);
  return add_sigma_z_error(std::move(h), p.a1, omega1, phi);
}

SweepGrid noise_map(const NoiseMapConfig& cfg, const Axis& omega1_axis, const Axis& t_axis,
                    const ExperimentControl& ctl) {
  cfg.params.validate();
  omega1_axis.validate();
  t_axis.validate();
  const auto omega1s = omega1_axis.values();
  const auto ts = t_axis.values();
  if (ts.front() < 0.0) throw InvalidArgument("t axis must start at t >= 0");
  const double t_end = *std::max_element(ts.begin(), ts.end());
  const StepControl steps = point_control(ctl);

  std::vector<double> phases{cfg.params.phi};
  if (cfg.average_phase) {
    phases = {0.0, 0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi};
  }
  std::vector<double> values(omega1s.size() * ts.size(), 0.0);
  for_each_index(ctl.execution, omega1s.size(), [&](std::size_t row) {
    for (double phi : phases) {
      const HermitianOperator h = noisy_operator(cfg, omega1s[row], phi);
      const Trajectory traj = t_end > 0.0 ? propagate(h, bar_ground(2), 0.0, t_end, steps)
                                          : Trajectory{};
      for (std::size_t j = 0; j < ts.size(); ++j) {
        const double p1 = ts[j] > 0.0 ? population(traj, 1, ts[j]) : 0.0;
        values[row * ts.size() + j] += p1 / static_cast<double>(phases.size());
      }
    }
  });

  SweepGrid g;
  g.axes = {omega1_axis, t_axis};
  g.axes[0].name = "omega1";
  g.axes[1].name = "t";
  g.params = cfg.params;
  g.metadata["experiment"] = "noise-map";
  g.metadata["algorithm"] = std::string(to_string(cfg.algorithm));
  g.metadata["projection"] = cfg.projection == Projection::exact ? "exact" : "truncated";
  g.metadata["average_phase"] = cfg.average_phase ? "1" : "0";
  g.metadata["omega1_axis"] = omega1_axis.spec();
  g.metadata["t_axis"] = t_axis.spec();
  g.observables = {Observable{"p1", std::move(values), true}};
  g.validate();
  return g;
}

// -- three-level leakage ---------------------------------------------------------

LeakageResult three_level_run(const DriveParams& params, ThreeLevelVariant variant,
                              double window, const StepControl& ctl, int samples_per_period) {
  if (!(window > 0.0)) throw InvalidArgument("window must be > 0");
  const HermitianOperator h = h_three_level(params, variant);
  LeakageResult r;
  auto observe = [&](double t, const CVector& psi) {
    const double p1 = std::norm(psi[1]);
    const double p2 = std::norm(psi[2]);
    if (p1 > r.max_p1.probability) r.max_p1 = {p1, t};
    if (p2 > r.max_p2.probability) r.max_p2 = {p2, t};
  };
  if (h.is_static()) {
    propagate_state(h, bar_ground(3), 0.0, window, ctl, observe);
  } else {
    propagate_periodic(h, bar_ground(3), 0.0, window, kTwoPi / params.omega, ctl,
                       samples_per_period, observe);
  }
  return r;
}

SweepGrid three_level_scan(const DriveParams& params, const Axis& omega_axis, double window,
                           const ExperimentControl& ctl, const ScanRefinement& refine) {
  params.validate();
  omega_axis.validate();
  if (!(params.eta > 0.0)) throw InvalidArgument("three_level_scan needs eta > 0");
  const StepControl steps = point_control(ctl);

  auto run_at = [&](double omega) {
    DriveParams p = params;
    p.omega = omega;
    return three_level_run(p, ThreeLevelVariant::alg_b, window, steps);
  };

  std::vector<double> omegas = omega_axis.values();
  std::vector<LeakageResult> results(omegas.size());
  for_each_index(ctl.execution, omegas.size(), [&](std::size_t i) { results[i] = run_at(omegas[i]); });

  // Golden-section refinement of the highest interior local maxima of max_p1.
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < omegas.size(); ++i) {
    const double v = results[i].max_p1.probability;
    if (v > results[i - 1].max_p1.probability && v >= results[i + 1].max_p1.probability) {
      peaks.push_back(i);
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t x, std::size_t y) {
    return results[x].max_p1.probability > results[y].max_p1.probability;
  });
  if (peaks.size() > static_cast<std::size_t>(std::max(0, refine.max_peaks))) {
    peaks.resize(static_cast<std::size_t>(std::max(0, refine.max_peaks)));
  }
  std::vector<std::vector<std::pair<double, LeakageResult>>> refined(peaks.size());
  for_each_index(ctl.execution, peaks.size(), [&](std::size_t k) {
    const std::size_t i = peaks[k];
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = omegas[i - 1];
    double hi = omegas[i + 1];
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    auto& out = refined[k];
    auto eval = [&](double w) {
      out.emplace_back(w, run_at(w));
      return out.back().second.max_p1.probability;
    };
    int budget = refine.evaluations_per_peak;
    if (budget <= 0) return;
    double f1 = eval(x1);
    double f2 = --budget > 0 ? eval(x2) : -1.0;
    while (--budget > 0) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = eval(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = eval(x2);
      }
    }
  });

  std::vector<std::pair<double, LeakageResult>> rows;
  for (std::size_t i = 0; i < omegas.size(); ++i) rows.emplace_back(omegas[i], results[i]);
  for (auto& r : refined) rows.insert(rows.end(), r.begin(), r.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  const LeakageResult baseline = three_level_run(params, ThreeLevelVariant::h_half, window, steps);

  SweepGrid g;
  g.axes = {omega_axis};
  g.axes[0].name = "omega";
  if (!refined.empty()) {
    g.axes[0].explicit_values.clear();
    for (const auto& r : rows) g.axes[0].explicit_values.push_back(r.first);
  }
  g.params = params;
  g.metadata["experiment"] = "three-level-scan";
  g.metadata["window"] = format_double(window);
  g.metadata["omega_axis"] = omega_axis.spec();
  g.metadata["refine_peaks"] = std::to_string(refine.max_peaks);
  g.metadata["refine_evaluations"] = std::to_string(refine.evaluations_per_peak);
  Observable m1{"max_p1", {}, true}, t1{"t_at_p1", {}, false}, m2{"max_p2", {}, true},
      t2{"t_at_p2", {}, false}, base{"baseline_max_p1", {}, true};
  for (const auto& [w, r] : rows) {
    m1.values.push_back(r.max_p1.probability);
    t1.values.push_back(r.max_p1.time);
    m2.values.push_back(r.max_p2.probability);
    t2.values.push_back(r.max_p2.time);
    base.values.push_back(baseline.max_p1.probability);
  }
  g.observables = {std::move(m1), std::move(t1), std::move(m2), std::move(t2), std::move(base)};
  g.validate();
  return g;
}

// -- RWA versus exact ------------------------------------------------------------

RabiComparison rabi_comparison(const DriveParams& params, const StepControl& ctl,
                               double periods) {
  params.validate();
  RabiComparison c;
  const double eps = params.epsilon;
  c.predicted = rabi_frequency_lzs(params.delta, params.amplitude_a, params.omega, eps);
  const double bare = eps * params.delta;
  const bool node = c.predicted < 1e-2 * bare;
  // Near a node the prediction gives no time scale; fall back to the bare rate.
  const double rate = node ? bare : c.predicted;
  DriveParams p = params;
  p.amplitude_b = 0.0;
  const HermitianOperator h = h_alg_b_projected(p, Projection::exact);
  const double t_end = (periods + 0.5) * kTwoPi / rate;
  StepControl steps = ctl;
  steps.snapshot_every = 0;
  const Trajectory traj = propagate(h, bar_ground(2), 0.0, t_end, steps);
  try {
    c.measured = measure_rabi_frequency(traj, 1);
  } catch (const InsufficientData&) {
    c.measured = kNaN;
  }
  if (node) {
    c.relative_error = kNaN;
  } else if (std::isnan(c.measured)) {
    c.relative_error = std::numeric_limits<double>::infinity();
  } else {
    c.relative_error = std::abs(c.measured - c.predicted) / c.predicted;
  }
  return c;
}

SweepGrid rwa_vs_exact_report(const Axis& omega_over_delta, const Axis& a_over_omega,
                              const ExperimentControl& ctl, double delta_ref) {
  omega_over_delta.validate();
  a_over_omega.validate();
  if (!(delta_ref > 0.0 && delta_ref <= 1.0)) throw InvalidArgument("delta_ref must lie in (0, 1]");
  const auto rw = omega_over_delta.values();
  const auto ra = a_over_omega.values();
  const StepControl steps = point_control(ctl);
  const std::size_t n = rw.size() * ra.size();
  std::vector<RabiComparison> out(n);
  std::vector<DriveParams> used(n);
  for_each_index(ctl.execution, n, [&](std::size_t idx) {
    const double w_over_d = rw[idx / ra.size()];
    const double a_over_w = ra[idx % ra.size()];
    const double product = w_over_d * a_over_w;  // = A / delta
    DriveParams p;
    if (1.0 / product <= delta_ref) {
      p.amplitude_a = 1.0;
      p.delta = 1.0 / product;
    } else {
      p.delta = delta_ref;
      p.amplitude_a = product * delta_ref;
    }
    p.omega = p.amplitude_a / a_over_w;
    used[idx] = p;
    out[idx] = rabi_comparison(p, steps);
  });

  SweepGrid g;
  g.axes = {omega_over_delta, a_over_omega};
  g.axes[0].name = "omega_over_delta";
  g.axes[1].name = "a_over_omega";
  g.metadata["experiment"] = "rwa-vs-exact";
  g.metadata["delta_ref"] = format_double(delta_ref);
  g.metadata["omega_over_delta_axis"] = omega_over_delta.spec();
  g.metadata["a_over_omega_axis"] = a_over_omega.spec();
  Observable d{"delta", {}, false}, a{"amplitude_a", {}, false}, m{"omega_measured", {}, false},
      r{"omega_rwa", {}, false}, e{"relative_error", {}, false};
  for (std::size_t i = 0; i < n; ++i) {
    d.values.push_back(used[i].delta);
    a.values.push_back(used[i].amplitude_a);
    m.values.push_back(out[i].measured);
    r.values.push_back(out[i].predicted);
    e.values.push_back(out[i].relative_error);
  }
  g.observables = {std::move(d), std::move(a), std::move(m), std::move(r), std::move(e)};
  g.validate();
  return g;
}

}  // namespace lzs
