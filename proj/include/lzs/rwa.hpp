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

// Rotating-wave predictors for the driven search Hamiltonians. They hold in
// the regime omega >> delta and are cross-checked against exact propagation
// in the tests.

#pragma once

#include <optional>
#include <vector>

#include "lzs/hamiltonians.hpp"

namespace lzs {

/// Rabi rate of the driven Grover problem (Algorithm A):
/// eps * delta * |J0(A eps xi / omega)| with xi = sqrt(1 - delta^2).
double rabi_frequency_lzs(double delta, double a, double omega, double epsilon = 1.0);

/// |0bar> <-> |1bar> rate under Algorithm B:
/// eps * delta * |J0((A + B) eps xi / omega)|.
double rabi_frequency_alg_b(double delta, double a, double b, double omega,
                            double epsilon = 1.0);

/// Drive frequency that puts (B + A/2) / omega on the given J0 root (1-based).
double cdt_design_omega(double a, double b, int root_index);

/// Effective |0bar> <-> |2bar> coupling eps * eta * |J0(eps (B + A/2) / omega)|.
double leakage_coupling(const DriveParams& params);

/// Rabi rate of I/2 - (delta/2) sigma_x + a1 cos(omega1 t) sigma_z:
/// delta * |J0(2 a1 / omega1)|.
double rabi_frequency_noisy_half(double delta, double a1, double omega1);

/// One (k, k1, m) term of the rotated-frame coupling; m = -1, 0, 1 picks the
/// e^{i m omega t} component of (B cos(omega t) + 1).
struct ResonantTerm {
  int k = 0;
  int k1 = 0;
  int m = 0;
  double frequency = 0.0;  // k1 omega1 - (k - m) omega
  Complex weight;          // contribution to <0bar|H'|1bar>
};

/// Best rational approximation p/q of omega1/omega with q <= 32.
struct HarmonicRatio {
  long p = 0;
  long q = 1;
  double error = 0.0;  // |omega1/omega - p/q|
};

struct EffectiveHamiltonian {
  HermitianOperator op;           // rotated-frame H'(t) (static for the 3-level model)
  int truncation = 0;             // max |k|, |k1| kept
  CMatrix static_part;            // RWA matrix: zero-frequency terms only
  double resonance_window = 0.0;  // |frequency| below this counts as non-averaging
  std::vector<ResonantTerm> resonances;  // k1 != 0 terms inside the window
  std::optional<HarmonicRatio> harmonic_ratio;

  double rabi_frequency() const;  // 2 |<0bar|static_part|1bar>|
};

/// Algorithm B (truncated projection) plus a1 cos(omega1 t + phi) sigma_z, in
/// the frame that removes the diagonal. Off-diagonal
/// -(eps delta / 2)(B cos(omega t) + 1) chi(t), with chi the double Bessel
/// sum. `truncation` < 0 picks K adaptively so dropped |J_k J_k1| < 1e-8.
/// Terms with |frequency| < `resonance_window` (default eps * delta) and
/// k1 != 0 are listed in `resonances`.
EffectiveHamiltonian effective_h_noisy_alg_b(const DriveParams& params, int truncation = -1,
                                             std::optional<double> resonance_window = {});

/// Static 3-level RWA matrix for Algorithm B with the eta leakage term.
EffectiveHamiltonian effective_h_three_level(const DriveParams& params);

}  // namespace lzs
