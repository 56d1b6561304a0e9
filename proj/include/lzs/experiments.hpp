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

// Scenario runners: double-crossing maps, search runs and their runtime
// scaling, control-error maps, the 3-level leakage scan and the RWA error map.
// Sweep points are independent; with Execution::parallel they run on the
// OpenMP pool and are gathered in grid order.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lzs/hamiltonians.hpp"
#include "lzs/propagator.hpp"

namespace lzs {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int points = 1;
  bool log = false;
  // Non-empty for irregular axes (refined scans, round-tripped CSVs).
  std::vector<double> explicit_values;

  static Axis linear(std::string name, double min, double max, int points);
  static Axis logarithmic(std::string name, double min, double max, int points);

  void validate() const;
  std::size_t size() const;
  std::vector<double> values() const;
  std::string spec() const;  // "min:max:points[:log]"
};

struct Observable {
  std::string name;
  std::vector<double> values;
  bool probability = false;  // values must lie in [0, 1]
};

/// Dense values over the Cartesian product of the axes (last axis fastest).
struct SweepGrid {
  std::vector<Axis> axes;
  std::vector<Observable> observables;
  DriveParams params;
  std::map<std::string, std::string> metadata;

  std::size_t size() const;  // product of the axis sizes
  const Observable& observable(const std::string& name) const;
  // Axis coordinates of flat point `index`.
  std::vector<double> coordinates(std::size_t index) const;
  void validate() const;
};

struct ExperimentControl {
  StepControl steps;
  // Sweep-level execution; single runs ignore it.
  kernels::Execution execution = kernels::Execution::serial;
};

// -- double crossing ---------------------------------------------------------

struct DoubleCrossing {
  double p_plus2 = 0.0;   // instantaneous excited-state population after one period
  double p1_bare = 0.0;   // |<1bar|psi>|^2 after one period
};

/// One drive period of h_lzs from the instantaneous ground state of H(0).
DoubleCrossing double_crossing(double delta, double a, double omega,
                               const StepControl& ctl = {});

/// Columns omega, p_plus2, one_minus_p_plus2, p1_bare.
SweepGrid double_crossing_scan(double delta, double a, const Axis& omega_axis,
                               const ExperimentControl& ctl = {});

// -- search runs -------------------------------------------------------------

inline constexpr double kSuccessThreshold = 0.5;

/// First time the population of `state_index` reaches `threshold`, linear
/// interpolation between steps; nullopt if it never does before t_end.
std::optional<double> first_success_time(const HermitianOperator& h, const StateVector& psi0,
                                         double t_end, const StepControl& ctl,
                                         Eigen::Index state_index = 1,
                                         double threshold = kSuccessThreshold);

struct GroverRun {
  DriveParams params;
  Trajectory trajectory;
  std::optional<double> success_time;
};

/// Algorithm A (B = 0) or B on the exact 2-level projection, from |0bar>.
GroverRun grover_run(int n, double a, double omega, double b, double t_end,
                     const StepControl& ctl = {});

struct ScalingFit {
  std::vector<int> n;
  std::vector<double> times;
  std::vector<int> excluded;  // runs that never reached the threshold
  double exponent = 0.0;      // slope of log2(time) vs n
  double intercept = 0.0;
  double residual = 0.0;      // RMS of the log2 fit
};

/// Success time vs n at fixed A/omega (omega = A / a_over_omega; omega = 1
/// when A = 0). Each run lasts `horizon` predicted Rabi periods.
ScalingFit runtime_scaling(const std::vector<int>& n_list, double a, double a_over_omega,
                           const ExperimentControl& ctl = {}, double horizon = 2.0);

// -- control errors ----------------------------------------------------------

enum class Algorithm { alg_b, h_half };

std::string_view to_string(Algorithm algorithm);

struct NoiseMapConfig {
  Algorithm algorithm = Algorithm::alg_b;
  DriveParams params;  // delta, A, B, omega, a1, phi; omega1 comes from the axis
  Projection projection = Projection::exact;
  bool average_phase = false;  // mean over phi in {0, pi/2, pi, 3pi/2}
};

/// The operator noise_map propagates for one omega1 (and phase).
HermitianOperator noisy_operator(const NoiseMapConfig& cfg, double omega1, double phi);

/// |1bar> population over (omega1, t) from |0bar>.
SweepGrid noise_map(const NoiseMapConfig& cfg, const Axis& omega1_axis, const Axis& t_axis,
                    const ExperimentControl& ctl = {});

// -- three-level leakage -----------------------------------------------------

struct LeakageResult {
  PopulationPeak max_p1;
  PopulationPeak max_p2;
};

/// Max |1bar> and |2bar> populations of the 3-level model from |0bar> on
/// [0, window], sampled `samples_per_period` times per drive period.
LeakageResult three_level_run(const DriveParams& params, ThreeLevelVariant variant,
                              double window, const StepControl& ctl = {},
                              int samples_per_period = 32);

struct ScanRefinement {
  int max_peaks = 0;            // local maxima of max_p1 refined, by coarse height
  int evaluations_per_peak = 10;  // golden-section evaluations per peak
};

/// Columns omega, max_p1, t_at_p1, max_p2, t_at_p2, baseline_max_p1. The
/// h_half baseline is run once and repeated in every row. Refined points are
/// merged into the omega axis in sorted order.
SweepGrid three_level_scan(const DriveParams& params, const Axis& omega_axis, double window,
                           const ExperimentControl& ctl = {}, const ScanRefinement& refine = {});

// -- RWA versus exact --------------------------------------------------------

struct RabiComparison {
  double measured = 0.0;  // NaN when the signal is too short to measure
  double predicted = 0.0;
  double relative_error = 0.0;  // NaN at J0 nodes
};

/// Algorithm A on the exact projection from |0bar>, over `periods`
/// predicted Rabi periods (capped where the prediction vanishes).
RabiComparison rabi_comparison(const DriveParams& params, const StepControl& ctl = {},
                               double periods = 3.0);

/// Relative Rabi-rate error over (omega/delta, A/omega). The product of the
/// two ratios is A/delta: A = 1 and delta = 1/product when that keeps
/// delta <= delta_ref, else delta = delta_ref and A = product * delta_ref.
SweepGrid rwa_vs_exact_report(const Axis& omega_over_delta, const Axis& a_over_omega,
                              const ExperimentControl& ctl = {}, double delta_ref = 1.0 / 32.0);

}  // namespace lzs
