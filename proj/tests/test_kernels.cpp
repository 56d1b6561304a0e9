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

#include <atomic>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include <doctest.h>

#include "lzs/experiments.hpp"
#include "lzs/kernels.hpp"
#include "lzs/propagator.hpp"

using namespace lzs;
using kernels::Execution;

TEST_CASE("omp matvec is bitwise equal to the serial reference") {
  const int saved = omp_get_max_threads();
  for (Eigen::Index dim : {1, 7, 256, 1000}) {
    const Eigen::MatrixXd real = Eigen::MatrixXd::Random(dim, dim);
    const Eigen::MatrixXcd cplx = Eigen::MatrixXcd::Random(dim, dim);
    const Eigen::VectorXcd x = Eigen::VectorXcd::Random(dim);
    const Eigen::VectorXcd y0 = Eigen::VectorXcd::Random(dim);
    Eigen::VectorXcd ref_r = y0, ref_c = y0;
    kernels::serial::matvec_accumulate(real, x, -0.75, ref_r);
    kernels::serial::matvec_accumulate(cplx, x, 1.25, ref_c);
    CHECK((ref_r - (y0 - 0.75 * (real.cast<std::complex<double>>() * x))).norm() <
          1e-12 * static_cast<double>(dim));
    for (int threads : {1, 2, 3, 5}) {
      omp_set_num_threads(threads);
      Eigen::VectorXcd got_r = y0, got_c = y0;
      kernels::omp::matvec_accumulate(real, x, -0.75, got_r);
      kernels::omp::matvec_accumulate(cplx, x, 1.25, got_c);
      CHECK(got_r == ref_r);
      CHECK(got_c == ref_c);
    }
  }
  omp_set_num_threads(saved);
}

TEST_CASE("for_each_index covers every index once and rethrows") {
  for (Execution ex : {Execution::serial, Execution::parallel}) {
    std::vector<int> hits(97, 0);
    kernels::for_each_index(ex, hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    std::atomic<int> ran{0};
    CHECK_THROWS_AS(kernels::for_each_index(ex, 10,
                                           [&](std::size_t i) {
                                             ++ran;
                                             if (i == 4) throw std::runtime_error("boom");
                                           }),
                    std::runtime_error);
    kernels::for_each_index(ex, 0, [](std::size_t) { FAIL("called for empty range"); });
  }
}

TEST_CASE("parallel full-space propagation matches serial bitwise") {
  omp_set_num_threads(2);
  DriveParams p = DriveParams::for_qubits(9);
  p.amplitude_a = 1.0;
  p.omega = 0.5;
  const HermitianOperator h = h_grover_full_driven(9, 17, p);
  StateVector psi0{uniform_state(9), Basis::computational};
  StepControl serial;
  serial.steps_per_drive_period = 64;
  serial.max_phase_per_step = 2.0;
  StepControl parallel = serial;
  parallel.execution = Execution::parallel;
  const CVector a = propagate_state(h, psi0, 0.0, 30.0, serial);
  const CVector b = propagate_state(h, psi0, 0.0, 30.0, parallel);
  CHECK(a == b);
}

TEST_CASE("parallel sweeps match serial sweeps bitwise") {
  omp_set_num_threads(3);
  ExperimentControl serial;
  ExperimentControl parallel;
  parallel.execution = Execution::parallel;
  const Axis omega = Axis::logarithmic("omega", 0.05, 20.0, 9);
  const SweepGrid a = double_crossing_scan(0.25, 1.0, omega, serial);
  const SweepGrid b = double_crossing_scan(0.25, 1.0, omega, parallel);
  REQUIRE(a.observables.size() == b.observables.size());
  for (std::size_t i = 0; i < a.observables.size(); ++i) {
    CHECK(a.observables[i].values == b.observables[i].values);
  }
}
