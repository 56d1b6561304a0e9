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

#include "lzs/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "lzs/errors.hpp"

namespace lzs {

namespace {

constexpr int kMaxRoots = 20;

long double series(int k, long double z) {
  const long double half = z / 2.0L;
  // First term (z/2)^k / k! in log space so large k underflows quietly.
  long double term = std::exp(k * std::log(half) - std::lgamma(static_cast<long double>(k) + 1.0L));
  long double sum = term;
  const long double q = half * half;
  for (int m = 1; m < 500; ++m) {
    term *= -q / (static_cast<long double>(m) * static_cast<long double>(m + k));
    sum += term;
    if (m > half && std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

// Downward recurrence J_{m-1} = (2m/z) J_m - J_{m+1} from a start index far
// above max(k, z), normalized with J_0 + 2 sum J_{2m} = 1 (keeps the sign).
long double miller(int k, long double z) {
  const double top = std::max<double>(k, static_cast<double>(z));
  int start = static_cast<int>(top + 30.0 + 4.0 * std::sqrt(top));
  start += start % 2;  // even, so the normalization sum sees J_start
  long double next = 0.0L;
  long double current = 1e-300L;
  long double norm = 0.0L;
  long double wanted = 0.0L;
  for (int m = start; m >= 1; --m) {
    const long double previous = (2.0L * m / z) * current - next;
    next = current;
    current = previous;  // now J_{m-1}
    const int index = m - 1;
    if (index == k) wanted = current;
    if (index > 0 && index % 2 == 0) norm += 2.0L * current;
    if (std::abs(current) > 1e250L) {
      current *= 1e-250L;
      next *= 1e-250L;
      norm *= 1e-250L;
      wanted *= 1e-250L;
    }
  }
  norm += current;  // J_0
  return wanted / norm;
}

}  // namespace

double bessel_j(int k, double z) {
  if (!std::isfinite(z) || std::abs(z) >= kBesselMaxArgument) {
    throw UnsupportedRange("bessel_j supports |z| < 1e4, got " + std::to_string(z));
  }
  // J_{-k} = (-1)^k J_k and J_k(-z) = (-1)^k J_k(z).
  double sign = 1.0;
  if (k < 0) {
    k = -k;
    if (k % 2 != 0) sign = -sign;
  }
  if (z < 0.0) {
    z = -z;
    if (k % 2 != 0) sign = -sign;
  }
  if (z == 0.0) return k == 0 ? sign : 0.0;
  const long double value = z <= kBesselSeriesLimit ? series(k, z) : miller(k, z);
  return sign * static_cast<double>(value);
}

std::vector<double> bessel_roots(int order, int count) {
  if (count < 0 || count > kMaxRoots) {
    throw InvalidArgument("bessel_roots supports up to 20 roots, got " + std::to_string(count));
  }
  std::vector<double> roots;
  // Zeros are spaced by about pi, so this scan cannot jump over one.
  constexpr double kScanStep = 0.25;
  double a = 1e-3;
  double fa = bessel_j(order, a);
  while (static_cast<int>(roots.size()) < count) {
    const double b = a + kScanStep;
    const double fb = bessel_j(order, b);
    if (fa == 0.0 || (fa < 0.0) != (fb < 0.0)) {
      double lo = a;
      double hi = b;
      double flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_j(order, mid);
        if ((fm < 0.0) == (flo < 0.0) && fm != 0.0) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

int bessel_truncation(double z, double cutoff) {
  int k = static_cast<int>(std::ceil(std::abs(z)));
  // Beyond |z| the magnitudes decay monotonically in k.
  while (std::abs(bessel_j(k + 1, z)) >= cutoff) ++k;
  return k;
}

}  // namespace lzs
