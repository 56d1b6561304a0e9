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

// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to the
// core count; on one core the two columns should match.

#include <benchmark/benchmark.h>

#include "lzs/experiments.hpp"
#include "lzs/kernels.hpp"

namespace {

using lzs::kernels::Execution;

void matvec(benchmark::State& state, Execution ex) {
  const auto dim = static_cast<Eigen::Index>(state.range(0));
  const Eigen::MatrixXd m = Eigen::MatrixXd::Random(dim, dim);
  const Eigen::VectorXcd x = Eigen::VectorXcd::Random(dim);
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim);
  for (auto _ : state) {
    lzs::kernels::matvec_accumulate(ex, m, x, 0.5, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetBytesProcessed(state.iterations() * dim * dim * static_cast<int64_t>(sizeof(double)));
}

void full_space_propagation(benchmark::State& state, Execution ex) {
  const int n = static_cast<int>(state.range(0));
  lzs::DriveParams p = lzs::DriveParams::for_qubits(n);
  p.amplitude_a = 1.0;
  p.omega = 0.5;
  const lzs::HermitianOperator h = lzs::h_grover_full_driven(n, 3, p);
  lzs::StepControl ctl;
  ctl.steps_per_drive_period = 64;
  ctl.max_phase_per_step = 2.0;
  ctl.execution = ex;
  const lzs::StateVector psi0{lzs::uniform_state(n), lzs::Basis::computational};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lzs::propagate_state(h, psi0, 0.0, 50.0, ctl));
  }
}

void double_crossing_sweep(benchmark::State& state, Execution ex) {
  lzs::ExperimentControl ctl;
  ctl.execution = ex;
  const lzs::Axis axis = lzs::Axis::logarithmic("omega", 0.05, 50.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lzs::double_crossing_scan(0.25, 1.0, axis, ctl));
  }
}

BENCHMARK_CAPTURE(matvec, serial, Execution::serial)->RangeMultiplier(4)->Range(256, 4096);
BENCHMARK_CAPTURE(matvec, parallel, Execution::parallel)->RangeMultiplier(4)->Range(256, 4096);
BENCHMARK_CAPTURE(full_space_propagation, serial, Execution::serial)->DenseRange(8, 12, 2)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(full_space_propagation, parallel, Execution::parallel)->DenseRange(8, 12, 2)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(double_crossing_sweep, serial, Execution::serial)->Arg(32)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(double_crossing_sweep, parallel, Execution::parallel)->Arg(32)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
