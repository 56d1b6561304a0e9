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

// Unitary integration of i d/dt psi = H(t) psi.
//
// Each step applies the exponential of H sampled inside the step (Magnus
// integrators), so every step is unitary to the accuracy of the matrix
// exponential:
//   * dim 2: axis-angle closed form,
//   * dim 3 .. 64: Hermitian eigendecomposition,
//   * larger: Lanczos on the term-wise matvec (OpenMP kernel).

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lzs/hamiltonians.hpp"

namespace lzs {

struct StateVector {
  CVector amplitudes;
  Basis basis = Basis::bar;

  static StateVector basis_state(Eigen::Index dim, Eigen::Index index, Basis basis);
  double norm() const { return amplitudes.norm(); }
};

enum class MagnusOrder { second = 2, fourth = 4 };

struct StepControl {
  int steps_per_drive_period = 512;
  MagnusOrder order = MagnusOrder::second;
  // Lanczos residual target for large operators.
  double tolerance = 1e-13;
  // Upper bound on h * spread(H); this bound, not the drive period, sets the
  // step when the drive is slow compared to the level splitting.
  double max_phase_per_step = 0.1;
  // Keep a full state copy every k steps (0 disables snapshots).
  int snapshot_every = 64;
  kernels::Execution execution = kernels::Execution::serial;

  void validate() const;
};

struct Snapshot {
  double time = 0.0;
  CVector state;
};

/// Time grid plus one row of probabilities per grid point. Columns are the
/// basis states, or the caller-supplied observed states.
struct Trajectory {
  std::vector<double> times;
  std::size_t columns = 0;
  std::vector<double> populations;  // row-major, times.size() x columns
  std::vector<Snapshot> snapshots;
  CVector final_state;
  Basis basis = Basis::bar;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  double at(std::size_t row, std::size_t column) const {
    return populations[row * columns + column];
  }
  std::vector<double> column(std::size_t index) const;
};

/// Number of steps propagate() takes on [t0, t1].
std::size_t step_count(const HermitianOperator& h, double t0, double t1,
                       const StepControl& ctl);

/// exp(-i H dt) for a dense Hermitian matrix: closed form at dim 2,
/// eigendecomposition otherwise.
CMatrix unitary_exponential(const CMatrix& h, double dt);

using StepObserver = std::function<void(double t, const CVector& psi)>;

/// Propagates without storing anything; `observer` (if set) sees the initial
/// state and the state after every step. Returns the state at t1.
CVector propagate_state(const HermitianOperator& h, const StateVector& psi0, double t0,
                        double t1, const StepControl& ctl = {},
                        const StepObserver& observer = {});

Trajectory propagate(const HermitianOperator& h, const StateVector& psi0, double t0,
                     double t1, const StepControl& ctl = {},
                     std::span<const CVector> observed = {});

/// Propagation of a periodic operator (every term frequency an integer
/// multiple of 2 pi / period). The one-period propagator, built with the
/// same steps propagate() would take on [t0, t0 + period], is applied
/// repeatedly; `observer` sees `samples_per_period` evenly spaced states in
/// each period, up to the last sample time <= t1. Returns that last state.
struct PeriodicRun {
  CVector final_state;
  double final_time = 0.0;
};

PeriodicRun propagate_periodic(const HermitianOperator& h, const StateVector& psi0,
                               double t0, double t1, double period,
                               const StepControl& ctl, int samples_per_period,
                               const StepObserver& observer);

/// Linear interpolation of one population column.
double population(const Trajectory& traj, std::size_t state_index, double t);

struct PopulationPeak {
  double probability = 0.0;
  double time = 0.0;
};

PopulationPeak max_population(const Trajectory& traj, std::size_t state_index);

/// Angular frequency of a sin^2(Omega t / 2)-like population signal from the
/// spacing of its upward mean crossings (with hysteresis against micromotion).
/// Throws InsufficientData below two full oscillations.
double measure_rabi_frequency(std::span<const double> times, std::span<const double> values);
double measure_rabi_frequency(const Trajectory& traj, std::size_t state_index);

/// First time the population crosses `threshold` (linear interpolation), if any.
std::optional<double> first_passage_time(const Trajectory& traj, std::size_t state_index,
                                         double threshold);

}  // namespace lzs
