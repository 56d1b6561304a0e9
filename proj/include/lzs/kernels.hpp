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

// Data-parallel inner loops. Every kernel has a plain serial version and an
// OpenMP version; the serial one is the reference the tests compare against.

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include <Eigen/Dense>

namespace lzs::kernels {

enum class Execution { serial, parallel };

// Matrices below this dimension are never worth a parallel region.
inline constexpr Eigen::Index kParallelMatvecMinDim = 256;

namespace serial {

// y += scale * M x
void matvec_accumulate(const Eigen::MatrixXd& m, const Eigen::VectorXcd& x,
                       double scale, Eigen::VectorXcd& y);
void matvec_accumulate(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& x,
                       double scale, Eigen::VectorXcd& y);

}  // namespace serial

namespace omp {

void matvec_accumulate(const Eigen::MatrixXd& m, const Eigen::VectorXcd& x,
                       double scale, Eigen::VectorXcd& y);
void matvec_accumulate(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& x,
                       double scale, Eigen::VectorXcd& y);

}  // namespace omp

template <class Matrix>
void matvec_accumulate(Execution ex, const Matrix& m, const Eigen::VectorXcd& x,
                       double scale, Eigen::VectorXcd& y) {
  if (ex == Execution::parallel && m.rows() >= kParallelMatvecMinDim) {
    omp::matvec_accumulate(m, x, scale, y);
  } else {
    serial::matvec_accumulate(m, x, scale, y);
  }
}

/// Runs body(i) for i in [0, count). Each index writes only its own output
/// slot, so results are identical for both execution modes. The first
/// exception thrown by any index is rethrown on the calling thread.
template <class Body>
void for_each_index(Execution ex, std::size_t count, Body&& body) {
  if (ex == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lzs::kernels
