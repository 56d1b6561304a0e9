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

#pragma once

#include <vector>

namespace lzs {

inline constexpr double kBesselMaxArgument = 1e4;
inline constexpr double kBesselSeriesLimit = 12.0;

/// Bessel function of the first kind J_k(z) for integer k, |z| < 1e4.
/// Ascending series (extended precision) for |z| <= 12, normalized downward
/// (Miller) recurrence above. Absolute error below 1e-12.
double bessel_j(int k, double z);

/// First `count` positive zeros of J_order, by bracketing and bisection
/// on bessel_j. count <= 20.
std::vector<double> bessel_roots(int order, int count);

inline std::vector<double> j0_roots(int count) { return bessel_roots(0, count); }

/// Smallest K >= |z| such that |J_k(z)| < cutoff for every |k| > K.
int bessel_truncation(double z, double cutoff = 1e-8);

}  // namespace lzs
