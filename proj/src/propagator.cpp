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

#include "lzs/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lzs/errors.hpp"

namespace lzs {

namespace {

constexpr Eigen::Index kDenseExponentialMaxDim = 64;
constexpr int kLanczosMaxDim = 40;

// Commutator-free fourth-order Magnus: Gauss nodes and the two exponent
// weight pairs.
const double kGaussOffset = std::sqrt(3.0) / 6.0;
const double kCf4Alpha1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
const double kCf4Alpha2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

std::size_t ceil_count(double x) {
  // Tolerate rounding noise just above an integer.
  return static_cast<std::size_t>(std::max(1.0, std::ceil(x - 1e-9)));
}

std::vector<double> combine(const std::vector<double>& a, double wa,
                            const std::vector<double>& b, double wb) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = wa * a[i] + wb * b[i];
  return out;
}

// exp(-i dt H) psi by Lanczos on a term-wise matvec. Falls back to halving
// dt when the Krylov space does not converge.
CVector lanczos_exponential(const HermitianOperator& h, std::span<const double> coeffs,
                            const CVector& psi, double dt, const StepControl& ctl) {
  const double beta0 = psi.norm();
  if (beta0 == 0.0) return psi;

  std::vector<CVector> basis;
  basis.reserve(kLanczosMaxDim + 1);
  basis.push_back(psi / beta0);
  std::vector<double> alpha;
  std::vector<double> beta;
  CVector w(h.dim());

  for (int j = 0; j < kLanczosMaxDim; ++j) {
    h.apply(coeffs, basis[j], w, ctl.execution);
    const double a = basis[j].dot(w).real();
    alpha.push_back(a);
    // Full reorthogonalization (two passes): the Krylov space stays tiny.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& v : basis) w -= v.dot(w) * v;
    }
    const double b = w.norm();

    const int m = j + 1;
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub(std::max(m - 1, 0));
    for (int k = 0; k + 1 < m; ++k) sub[k] = beta[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::MatrixXd& q = eig.eigenvectors();
    CVector phase(m);
    for (int k = 0; k < m; ++k) {
      phase[k] = std::exp(Complex(0.0, -dt * eig.eigenvalues()[k])) * q(0, k);
    }
    const CVector y = q.cast<Complex>() * phase;

    const double scale = std::max(1.0, std::abs(a));
    if (b <= 1e-12 * scale || b * std::abs(y[m - 1]) < ctl.tolerance) {
      CVector out = CVector::Zero(h.dim());
      for (int k = 0; k < m; ++k) out += y[k] * basis[k];
      return beta0 * out;
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  const CVector half = lanczos_exponential(h, coeffs, psi, 0.5 * dt, ctl);
  return lanczos_exponential(h, coeffs, half, 0.5 * dt, ctl);
}

// One Magnus step at a time; for small operators the step unitary can also
// be requested explicitly.
class Stepper {
 public:
  Stepper(const HermitianOperator& h, const StepControl& ctl) : h_(h), ctl_(ctl) {}

  bool dense() const { return h_.dim() <= kDenseExponentialMaxDim; }

  CMatrix step_unitary(double t, double dt) const {
    if (ctl_.order == MagnusOrder::second) {
      return unitary_exponential(h_.entries(t + 0.5 * dt), dt);
    }
    const auto [first, second] = cf4_exponents(t, dt);
    return unitary_exponential(h_.assemble(second), dt) *
           unitary_exponential(h_.assemble(first), dt);
  }

  void advance(CVector& psi, double t, double dt) const {
    if (dense()) {
      psi = step_unitary(t, dt) * psi;
      return;
    }
    if (ctl_.order == MagnusOrder::second) {
      psi = lanczos_exponential(h_, h_.coefficients(t + 0.5 * dt), psi, dt, ctl_);
      return;
    }
    const auto [first, second] = cf4_exponents(t, dt);
    psi = lanczos_exponential(h_, first, psi, dt, ctl_);
    psi = lanczos_exponential(h_, second, psi, dt, ctl_);
  }

 private:
  // Coefficients of the first- and second-applied CF4 exponents.
  std::pair<std::vector<double>, std::vector<double>> cf4_exponents(double t,
                                                                    double dt) const {
    const auto c1 = h_.coefficients(t + (0.5 - kGaussOffset) * dt);
    const auto c2 = h_.coefficients(t + (0.5 + kGaussOffset) * dt);
    return {combine(c1, kCf4Alpha2, c2, kCf4Alpha1), combine(c1, kCf4Alpha1, c2, kCf4Alpha2)};
  }

  const HermitianOperator& h_;
  const StepControl& ctl_;
};

void check_inputs(const HermitianOperator& h, const StateVector& psi0, double t0, double t1) {
  if (psi0.amplitudes.size() != h.dim()) {
    throw InvalidArgument("state dimension " + std::to_string(psi0.amplitudes.size()) +
                          " does not match operator dimension " + std::to_string(h.dim()));
  }
  if (psi0.basis != h.basis()) {
    throw InvalidArgument("state basis '" + std::string(to_string(psi0.basis)) +
                          "' does not match operator basis '" +
                          std::string(to_string(h.basis())) + "'");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("initial state is not normalized");
  }
  if (!(t1 > t0)) throw InvalidArgument("propagation needs t1 > t0");
}

}  // namespace

StateVector StateVector::basis_state(Eigen::Index dim, Eigen::Index index, Basis basis) {
  if (index < 0 || index >= dim) throw InvalidArgument("basis index out of range");
  StateVector s{CVector::Zero(dim), basis};
  s.amplitudes[index] = 1.0;
  return s;
}

void StepControl::validate() const {
  if (steps_per_drive_period < 64) {
    throw InvalidArgument("steps_per_drive_period must be >= 64");
  }
  if (!(max_phase_per_step > 0.0)) throw InvalidArgument("max_phase_per_step must be > 0");
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be > 0");
  if (snapshot_every < 0) throw InvalidArgument("snapshot_every must be >= 0");
}

std::vector<double> Trajectory::column(std::size_t index) const {
  std::vector<double> out(size());
  for (std::size_t r = 0; r < size(); ++r) out[r] = at(r, index);
  return out;
}

std::size_t step_count(const HermitianOperator& h, double t0, double t1,
                       const StepControl& ctl) {
  const double duration = t1 - t0;
  std::size_t n = 1;
  const double w = h.max_frequency();
  if (w > 0.0) {
    n = std::max(n, ceil_count(ctl.steps_per_drive_period * duration * w /
                               (2.0 * std::numbers::pi)));
  }
  n = std::max(n, ceil_count(duration * h.spread_bound() / ctl.max_phase_per_step));
  return n;
}

CMatrix unitary_exponential(const CMatrix& h, double dt) {
  if (h.rows() == 2) {
    const double h0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double hz = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double hx = h(0, 1).real();
    const double hy = -h(0, 1).imag();
    const double r = std::sqrt(hx * hx + hy * hy + hz * hz);
    const double angle = r * dt;
    const double c = std::cos(angle);
    // sin(angle)/r without dividing by a vanishing norm.
    const double s_over_r = r > 0.0 ? std::sin(angle) / r : dt;
    const Complex global = std::exp(Complex(0.0, -h0 * dt));
    const Complex i(0.0, 1.0);
    CMatrix u(2, 2);
    u(0, 0) = c - i * s_over_r * hz;
    u(1, 1) = c + i * s_over_r * hz;
    u(0, 1) = -i * s_over_r * Complex(hx, -hy);
    u(1, 0) = -i * s_over_r * Complex(hx, hy);
    return global * u;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  const CVector phases =
      (Complex(0.0, -dt) * eig.eigenvalues().cast<Complex>()).array().exp().matrix();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

CVector propagate_state(const HermitianOperator& h, const StateVector& psi0, double t0,
                        double t1, const StepControl& ctl, const StepObserver& observer) {
  ctl.validate();
  check_inputs(h, psi0, t0, t1);
  const std::size_t n = step_count(h, t0, t1, ctl);
  const double dt = (t1 - t0) / static_cast<double>(n);
  Stepper stepper(h, ctl);

  CVector psi = psi0.amplitudes;
  if (observer) observer(t0, psi);
  const bool reuse = h.is_static() && stepper.dense();
  const CMatrix fixed = reuse ? stepper.step_unitary(t0, dt) : CMatrix();
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    if (reuse) {
      psi = fixed * psi;
    } else {
      stepper.advance(psi, t, dt);
    }
    if (observer) observer(k + 1 == n ? t1 : t + dt, psi);
  }
  return psi;
}

Trajectory propagate(const HermitianOperator& h, const StateVector& psi0, double t0,
                     double t1, const StepControl& ctl, std::span<const CVector> observed) {
  for (const auto& v : observed) {
    if (v.size() != h.dim()) throw InvalidArgument("observed state has wrong dimension");
  }
  Trajectory traj;
  traj.basis = h.basis();
  traj.columns = observed.empty() ? static_cast<std::size_t>(h.dim()) : observed.size();
  std::size_t step = 0;
  auto record = [&](double t, const CVector& psi) {
    traj.times.push_back(t);
    if (observed.empty()) {
      for (Eigen::Index i = 0; i < psi.size(); ++i) traj.populations.push_back(std::norm(psi[i]));
    } else {
      for (const auto& v : observed) traj.populations.push_back(std::norm(v.dot(psi)));
    }
    if (ctl.snapshot_every > 0 && step % static_cast<std::size_t>(ctl.snapshot_every) == 0) {
      traj.snapshots.push_back(Snapshot{t, psi});
    }
    ++step;
  };
  traj.final_state = propagate_state(h, psi0, t0, t1, ctl, record);
  return traj;
}

PeriodicRun propagate_periodic(const HermitianOperator& h, const StateVector& psi0,
                               double t0, double t1, double period,
                               const StepControl& ctl, int samples_per_period,
                               const StepObserver& observer) {
  ctl.validate();
  check_inputs(h, psi0, t0, t1);
  if (!(period > 0.0)) throw InvalidArgument("period must be > 0");
  if (samples_per_period < 1) throw InvalidArgument("samples_per_period must be >= 1");
  if (h.dim() > kDenseExponentialMaxDim) {
    throw InvalidArgument("periodic propagation needs a dense-exponential operator");
  }
  for (const auto& term : h.terms()) {
    if (term.frequency == 0.0) continue;
    const double harmonics = term.frequency * period / (2.0 * std::numbers::pi);
    if (std::abs(harmonics - std::round(harmonics)) > 1e-9 * std::max(1.0, harmonics)) {
      throw InvalidArgument("operator is not periodic with the given period");
    }
  }

  const std::size_t n = step_count(h, t0, t0 + period, ctl);
  const double dt = period / static_cast<double>(n);
  const auto samples = static_cast<std::size_t>(samples_per_period);
  if (samples > n) throw InvalidArgument("more samples per period than steps");

  // Cumulative propagators from the period start to each sample point.
  Stepper stepper(h, ctl);
  std::vector<CMatrix> partial;
  std::vector<double> offsets;
  partial.reserve(samples);
  CMatrix u = CMatrix::Identity(h.dim(), h.dim());
  std::size_t next_sample = 0;
  for (std::size_t k = 0; k < n; ++k) {
    u = stepper.step_unitary(t0 + static_cast<double>(k) * dt, dt) * u;
    const std::size_t boundary = (next_sample + 1) * n / samples;
    if (k + 1 == boundary) {
      partial.push_back(u);
      offsets.push_back(k + 1 == n ? period : static_cast<double>(k + 1) * dt);
      ++next_sample;
    }
  }

  PeriodicRun run{psi0.amplitudes, t0};
  if (observer) observer(t0, run.final_state);
  CVector start = psi0.amplitudes;
  const double slack = 1e-12 * std::max(1.0, std::abs(t1));
  for (std::size_t p = 0;; ++p) {
    const double base = t0 + static_cast<double>(p) * period;
    for (std::size_t s = 0; s < samples; ++s) {
      const double t = base + offsets[s];
      if (t > t1 + slack) return run;
      run.final_state = partial[s] * start;
      run.final_time = t;
      if (observer) observer(t, run.final_state);
    }
    start = run.final_state;
  }
}

double population(const Trajectory& traj, std::size_t state_index, double t) {
  if (traj.empty()) throw InvalidArgument("empty trajectory");
  if (state_index >= traj.columns) throw InvalidArgument("state index out of range");
  if (t < traj.times.front() || t > traj.times.back()) {
    throw InvalidArgument("time outside trajectory range");
  }
  const auto it = std::lower_bound(traj.times.begin(), traj.times.end(), t);
  const auto hi = static_cast<std::size_t>(it - traj.times.begin());
  if (traj.times[hi] == t || hi == 0) return traj.at(hi, state_index);
  const std::size_t lo = hi - 1;
  const double f = (t - traj.times[lo]) / (traj.times[hi] - traj.times[lo]);
  return (1.0 - f) * traj.at(lo, state_index) + f * traj.at(hi, state_index);
}

PopulationPeak max_population(const Trajectory& traj, std::size_t state_index) {
  if (traj.empty()) throw InvalidArgument("empty trajectory");
  if (state_index >= traj.columns) throw InvalidArgument("state index out of range");
  PopulationPeak peak{traj.at(0, state_index), traj.times[0]};
  for (std::size_t r = 1; r < traj.size(); ++r) {
    if (traj.at(r, state_index) > peak.probability) {
      peak = {traj.at(r, state_index), traj.times[r]};
    }
  }
  return peak;
}

double measure_rabi_frequency(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 3) {
    throw InsufficientData("need at least three samples to measure a frequency");
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double band = 0.25 * (*hi - *lo);
  if (!(band > 1e-9)) throw InsufficientData("population does not oscillate");

  // Schmitt trigger: an upward crossing of the mean only counts once the
  // signal has been below mean - band and then reaches mean + band.
  std::vector<double> crossings;
  bool armed = values[0] < mean - band;
  double candidate = 0.0;
  bool have_candidate = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double a = values[i - 1] - mean;
    const double b = values[i] - mean;
    if (a < 0.0 && b >= 0.0) {
      candidate = times[i - 1] + (times[i] - times[i - 1]) * (-a / (b - a));
      have_candidate = true;
    }
    if (values[i] < mean - band) {
      armed = true;
      have_candidate = false;
    } else if (armed && have_candidate && values[i] > mean + band) {
      crossings.push_back(candidate);
      armed = false;
      have_candidate = false;
    }
  }
  if (crossings.size() < 3) {
    throw InsufficientData("fewer than two full oscillations (" +
                           std::to_string(crossings.size()) + " upward crossings)");
  }
  const double period =
      (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  return 2.0 * std::numbers::pi / period;
}

double measure_rabi_frequency(const Trajectory& traj, std::size_t state_index) {
  if (state_index >= traj.columns) throw InvalidArgument("state index out of range");
  const auto values = traj.column(state_index);
  return measure_rabi_frequency(traj.times, values);
}

std::optional<double> first_passage_time(const Trajectory& traj, std::size_t state_index,
                                         double threshold) {
  if (state_index >= traj.columns) throw InvalidArgument("state index out of range");
  for (std::size_t r = 0; r < traj.size(); ++r) {
    const double v = traj.at(r, state_index);
    if (v < threshold) continue;
    if (r == 0) return traj.times[0];
    const double prev = traj.at(r - 1, state_index);
    const double f = (threshold - prev) / (v - prev);
    return traj.times[r - 1] + f * (traj.times[r] - traj.times[r - 1]);
  }
  return std::nullopt;
}

}  // namespace lzs
