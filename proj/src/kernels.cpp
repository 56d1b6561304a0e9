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

#include "lzs/kernels.hpp"

#include <algorithm>
#include <complex>

#include <omp.h>

namespace lzs::kernels {

namespace {

// Column-major storage: walk columns so the inner loop is contiguous.
template <class Matrix>
void accumulate_columns(const Matrix& m, const Eigen::VectorXcd& x, double scale,
                        Eigen::VectorXcd& y, Eigen::Index row_begin,
                        Eigen::Index row_end) {
  const Eigen::Index cols = m.cols();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const std::complex<double> xj = scale * x[j];
    const auto* col = m.data() + j * m.rows();
    for (Eigen::Index i = row_begin; i < row_end; ++i) {
      y[i] += col[i] * xj;
    }
  }
}

template <class Matrix>
void accumulate_parallel(const Matrix& m, const Eigen::VectorXcd& x, double scale,
                         Eigen::VectorXcd& y) {
  const Eigen::Index rows = m.rows();
#pragma omp parallel
  {
    // Each thread owns a contiguous block of output rows.
    const int threads = omp_get_num_threads();
    const int id = omp_get_thread_num();
    const Eigen::Index chunk = (rows + threads - 1) / threads;
    const Eigen::Index begin = std::min<Eigen::Index>(rows, id * chunk);
    const Eigen::Index end = std::min<Eigen::Index>(rows, begin + chunk);
    if (begin < end) accumulate_columns(m, x, scale, y, begin, end);
  }
}

}  // namespace

namespace serial {

void matvec_accumulate(const Eigen::MatrixXd& m, const Eigen::VectorXcd& x,
                       double scale, Eigen::VectorXcd& y) {
  accumulate_columns(m, x, scale, y, 0, m.rows());
}

void matvec_accumulate(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& x,
                       double scale, Eigen::VectorXcd& y) {
  accumulate_columns(m, x, scale, y, 0, m.rows());
}

}  // namespace serial

namespace omp {

void matvec_accumulate(const Eigen::MatrixXd& m, const Eigen::VectorXcd& x,
                       double scale, Eigen::VectorXcd& y) {
  accumulate_parallel(m, x, scale, y);
}

void matvec_accumulate(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& x,
                       double scale, Eigen::VectorXcd& y) {
  accumulate_parallel(m, x, scale, y);
}

}  // namespace omp

}  // namespace lzs::kernels
