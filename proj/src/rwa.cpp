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

#include "lzs/rwa.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "lzs/bessel.hpp"
#include "lzs/errors.hpp"

namespace lzs {

namespace {

constexpr double kDroppedTermCutoff = 1e-8;
constexpr long kMaxRatioDenominator = 32;

double xi_of(double delta) { return std::sqrt((1.0 - delta) * (1.0 + delta)); }

HarmonicRatio rational_approximation(double x) {
  // Continued-fraction convergents; keep the last one with q <= 32.
  long p_prev = 1, q_prev = 0;
  long p = static_cast<long>(std::floor(x)), q = 1;
  double rest = x - std::floor(x);
  for (int it = 0; it < 64 && rest > 1e-15; ++it) {
    const double inv = 1.0 / rest;
    const long a = static_cast<long>(std::floor(inv));
    rest = inv - std::floor(inv);
    const long p_next = a * p + p_prev;
    const long q_next = a * q + q_prev;
    if (q_next > kMaxRatioDenominator) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  return {p, q, std::abs(x - static_cast<double>(p) / static_cast<double>(q))};
}

struct Harmonic {
  double frequency;
  Complex weight;
};

}  // namespace

double rabi_frequency_lzs(double delta, double a, double omega, double epsilon) {
  return epsilon * delta * std::abs(bessel_j(0, a * epsilon * xi_of(delta) / omega));
}

double rabi_frequency_alg_b(double delta, double a, double b, double omega, double epsilon) {
  return epsilon * delta * std::abs(bessel_j(0, (a + b) * epsilon * xi_of(delta) / omega));
}

double cdt_design_omega(double a, double b, int root_index) {
  if (root_index < 1) {
    throw InvalidArgument("root_index must be >= 1, got " + std::to_string(root_index));
  }
  return (b + 0.5 * a) / j0_roots(root_index).back();
}

double leakage_coupling(const DriveParams& params) {
  const double eps = params.epsilon;
  const double z = eps * (params.amplitude_b + 0.5 * params.amplitude_a) / params.omega;
  return eps * params.eta * std::abs(bessel_j(0, z));
}

double rabi_frequency_noisy_half(double delta, double a1, double omega1) {
  if (a1 == 0.0) return delta;
  if (!(omega1 > 0.0)) throw InvalidArgument("omega1 must be > 0 when a1 != 0");
  return delta * std::abs(bessel_j(0, 2.0 * a1 / omega1));
}

double EffectiveHamiltonian::rabi_frequency() const { return 2.0 * std::abs(static_part(0, 1)); }

EffectiveHamiltonian effective_h_noisy_alg_b(const DriveParams& params, int truncation,
                                             std::optional<double> resonance_window) {
  params.validate();
  const double eps = params.epsilon;
  const double w = params.omega;
  const double b = params.amplitude_b;
  const double a1 = params.a1;
  const double w1 = params.omega1;
  if (a1 != 0.0 && !(w1 > 0.0)) throw InvalidArgument("omega1 must be > 0 when a1 != 0");

  // Rotated frame: the diagonal a(t) = eps (A + B) cos(w t) - 2 a1 cos(w1 t + phi)
  // becomes the phase e^{-i z sin(w t) + i z1 sin(w1 t + phi)}.
  const double z = eps * (params.amplitude_a + b) / w;
  const double z1 = a1 != 0.0 ? 2.0 * a1 / w1 : 0.0;
  int k_max = truncation;
  int k1_max = truncation;
  if (truncation < 0) {
    k_max = bessel_truncation(z, kDroppedTermCutoff);
    k1_max = a1 != 0.0 ? bessel_truncation(z1, kDroppedTermCutoff) : 0;
    k_max = k1_max = std::max(k_max, k1_max);
  }
  const int k1_used = a1 != 0.0 ? k1_max : 0;
  const double window = resonance_window.value_or(eps * params.delta);
  const double prefactor = -0.5 * eps * params.delta;

  std::vector<double> jk(2 * k_max + 1);
  std::vector<double> jk1(2 * k1_used + 1);
  for (int k = -k_max; k <= k_max; ++k) jk[k + k_max] = bessel_j(k, z);
  for (int k1 = -k1_used; k1 <= k1_used; ++k1) jk1[k1 + k1_used] = bessel_j(k1, z1);

  EffectiveHamiltonian out{HermitianOperator(2, Basis::bar), std::max(k_max, k1_used),
                           CMatrix::Zero(2, 2), window, {}, {}};
  if (a1 != 0.0) out.harmonic_ratio = rational_approximation(w1 / w);

  // Group by (k1, k - m): equal pairs share a frequency.
  std::map<std::pair<int, int>, Complex> grouped;
  Complex static_coupling = 0.0;
  const double scale = std::max(w, w1);
  for (int k1 = -k1_used; k1 <= k1_used; ++k1) {
    const Complex phase = std::polar(1.0, k1 * params.phi);
    for (int k = -k_max; k <= k_max; ++k) {
      for (int m = -1; m <= 1; ++m) {
        const double mw = m == 0 ? 1.0 : 0.5 * b;
        const Complex weight = prefactor * mw * jk[k + k_max] * jk1[k1 + k1_used] * phase;
        if (weight == 0.0) continue;
        grouped[{k1, k - m}] += weight;
        const double f = k1 * w1 - (k - m) * w;
        const bool zero = std::abs(f) <= 1e-12 * scale;
        if (zero) static_coupling += weight;
        if (k1 != 0 && std::abs(f) < window &&
            std::abs(weight) >= std::abs(prefactor) * kDroppedTermCutoff) {
          out.resonances.push_back({k, k1, m, f, weight});
        }
      }
    }
  }
  out.static_part(0, 1) = static_coupling;
  out.static_part(1, 0) = std::conj(static_coupling);

  auto harmonics = std::make_shared<std::vector<Harmonic>>();
  double amplitude = 0.0;
  double max_frequency = 0.0;
  for (const auto& [key, weight] : grouped) {
    const double f = key.first * w1 - key.second * w;
    harmonics->push_back({f, weight});
    amplitude += std::abs(weight);
    max_frequency = std::max(max_frequency, std::abs(f));
  }
  // <0|H'|1> = c(t) = Re c sigma_x - Im c sigma_y.
  out.op.add_term(
      [harmonics](double t) {
        double s = 0.0;
        for (const auto& h : *harmonics) s += (h.weight * std::polar(1.0, h.frequency * t)).real();
        return s;
      },
      pauli_x(), amplitude, max_frequency);
  out.op.add_term(
      [harmonics](double t) {
        double s = 0.0;
        for (const auto& h : *harmonics) s -= (h.weight * std::polar(1.0, h.frequency * t)).imag();
        return s;
      },
      pauli_y(), amplitude, max_frequency);
  return out;
}

EffectiveHamiltonian effective_h_three_level(const DriveParams& params) {
  params.validate();
  const double eps = params.epsilon;
  const double a = params.amplitude_a;
  const double b = params.amplitude_b;
  const double w = params.omega;
  const double coupling = -0.5 * params.delta * bessel_j(0, eps * (b + a) / w);
  const double leak = params.eta * bessel_j(0, eps * (b + 0.5 * a) / w);
  CMatrix m(3, 3);
  m << 0.0, coupling, leak,
       coupling, 0.0, 0.0,
       leak, 0.0, 0.5;
  m *= eps;
  EffectiveHamiltonian out{HermitianOperator(3, Basis::three_level), 0, m, 0.0, {}, {}};
  out.op.add_static(m);
  return out;
}

}  // namespace lzs
