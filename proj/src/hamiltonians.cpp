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

#include "lzs/hamiltonians.hpp"

#include <cmath>
#include <string>

#include "lzs/errors.hpp"

namespace lzs {

namespace {

constexpr Eigen::Index kMaxEigenSpreadDim = 64;

double spectral_spread(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return ev.maxCoeff() - ev.minCoeff();
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw InvalidArgument("delta must lie in (0, 1], got " + std::to_string(delta));
  }
}

void require_full_qubits(int n) {
  if (n < 1) throw InvalidArgument("qubit count must be >= 1");
  if (n > kMaxFullQubits) {
    throw ResourceLimit("dense 2^n builders are capped at n = " +
                        std::to_string(kMaxFullQubits) + ", got " + std::to_string(n));
  }
}

std::shared_ptr<const HermitianOperator::Storage> real_storage(Eigen::MatrixXd m) {
  return std::make_shared<const HermitianOperator::Storage>(std::move(m));
}

// I - |u><u| and I - |y><y| on the full space.
Eigen::MatrixXd uniform_complement(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(dim, dim, -1.0 / static_cast<double>(dim));
  m.diagonal().array() += 1.0;
  return m;
}

Eigen::MatrixXd marked_complement(int n, std::size_t y) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (y >= static_cast<std::size_t>(dim)) {
    throw InvalidArgument("marked index out of range for n = " + std::to_string(n));
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim, dim);
  m(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(y)) = 0.0;
  return m;
}

CMatrix outer(const CVector& v) { return v * v.adjoint(); }

}  // namespace

std::string_view to_string(Basis basis) {
  switch (basis) {
    case Basis::computational: return "computational";
    case Basis::bar: return "bar";
    case Basis::three_level: return "three-level";
  }
  return "unknown";
}

DriveParams DriveParams::for_qubits(int n) {
  DriveParams p;
  p.n = n;
  p.delta = gap(n);
  return p;
}

void DriveParams::validate() const {
  if (n) {
    if (*n < 1) throw InvalidArgument("n must be >= 1");
    if (delta != gap(*n)) {
      throw InvalidArgument("delta must equal 2^(-n/2) when n is given");
    }
  }
  require_delta(delta);
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (!(omega > 0.0)) throw InvalidArgument("omega must be > 0");
  if (!(amplitude_a >= 0.0 && amplitude_a <= 1.0)) {
    throw InvalidArgument("amplitude A must lie in [0, 1]");
  }
  if (!std::isfinite(amplitude_b) || !std::isfinite(a1) || !std::isfinite(phi) ||
      !std::isfinite(eta)) {
    throw InvalidArgument("drive parameters must be finite");
  }
  if (a1 != 0.0 && !(omega1 >= 0.0)) throw InvalidArgument("omega1 must be >= 0");
}

double gap(int n) {
  if (n < 1) throw InvalidArgument("gap(n) needs n >= 1, got " + std::to_string(n));
  // 2^(-n/2) in binary floating point: exact for even n, correctly rounded for odd.
  return n % 2 == 0 ? std::ldexp(1.0, -n / 2) : std::ldexp(std::sqrt(0.5), -(n - 1) / 2);
}

double control_s(double t, double amplitude, double omega) {
  if (!(amplitude >= 0.0 && amplitude <= 1.0)) {
    throw InvalidArgument("control amplitude must lie in [0, 1]");
  }
  return 0.5 * (1.0 - amplitude * std::cos(omega * t));
}

BarBasis bar_basis(double delta) {
  require_delta(delta);
  const double xi = std::sqrt((1.0 - delta) * (1.0 + delta));
  const double big = std::sqrt(0.5 * (1.0 + xi));
  // (1 - xi)/2 = delta^2 / (2 (1 + xi)) avoids cancellation at small delta.
  const double small = std::sqrt(0.5 * delta * delta / (1.0 + xi));
  return BarBasis{big, -small, small, big};
}

CVector bar_coordinates_of_u(double delta) {
  const BarBasis b = bar_basis(delta);
  CVector v(2);
  v << b.c0u, b.c1u;
  return v;
}

CVector bar_coordinates_of_y(double delta) {
  // |y> = delta |u> + xi |u_perp>
  const BarBasis b = bar_basis(delta);
  const double xi = std::sqrt((1.0 - delta) * (1.0 + delta));
  CVector v(2);
  v << b.c0u * delta + b.c0p * xi, b.c1u * delta + b.c1p * xi;
  return v;
}

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(Eigen::Index dim, Basis basis)
    : dim_(dim), basis_(basis) {
  if (dim < 1) throw InvalidArgument("operator dimension must be >= 1");
}

HermitianOperator& HermitianOperator::add_static(const CMatrix& m) {
  return add_term({}, m, 1.0, 0.0);
}

HermitianOperator& HermitianOperator::add_term(Coefficient f, const CMatrix& m,
                                               double amplitude, double frequency) {
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw InvalidArgument("term dimension does not match operator");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("term matrix is not Hermitian");
  }
  if (dim_ > kMaxEigenSpreadDim) {
    throw InvalidArgument("large terms need an explicit spectral spread");
  }
  const double spread = spectral_spread(m);
  std::shared_ptr<const Storage> storage;
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    storage = real_storage(m.real());
  } else {
    storage = std::make_shared<const Storage>(m);
  }
  return add_term(std::move(f), std::move(storage), amplitude, frequency, spread);
}

HermitianOperator& HermitianOperator::add_term(Coefficient f,
                                               std::shared_ptr<const Storage> m,
                                               double amplitude, double frequency,
                                               double spread) {
  const auto rows = std::visit([](const auto& s) { return s.rows(); }, *m);
  if (rows != dim_) throw InvalidArgument("term dimension does not match operator");
  terms_.push_back(Term{std::move(f), std::move(m), std::abs(amplitude),
                        std::abs(frequency), spread});
  return *this;
}

bool HermitianOperator::is_static() const {
  for (const auto& term : terms_) {
    if (term.coefficient && term.frequency != 0.0) return false;
  }
  return true;
}

double HermitianOperator::max_frequency() const {
  double w = 0.0;
  for (const auto& term : terms_) w = std::max(w, term.frequency);
  return w;
}

double HermitianOperator::spread_bound() const {
  double s = 0.0;
  for (const auto& term : terms_) s += term.amplitude * term.spread;
  return s;
}

std::vector<double> HermitianOperator::coefficients(double t) const {
  std::vector<double> c(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    c[i] = terms_[i].coefficient ? terms_[i].coefficient(t) : 1.0;
  }
  return c;
}

CMatrix HermitianOperator::assemble(std::span<const double> coefficients) const {
  CMatrix h = CMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const double c = coefficients[i];
    if (c == 0.0) continue;
    std::visit([&](const auto& m) { h += c * m.template cast<Complex>(); },
               *terms_[i].matrix);
  }
  return h;
}

void HermitianOperator::apply(std::span<const double> coefficients, const CVector& x,
                              CVector& y, kernels::Execution ex) const {
  y.setZero(dim_);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const double c = coefficients[i];
    if (c == 0.0) continue;
    std::visit([&](const auto& m) { kernels::matvec_accumulate(ex, m, x, c, y); },
               *terms_[i].matrix);
  }
}

// ---------------------------------------------------------------------------
// Builders

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

CMatrix identity(Eigen::Index dim) { return CMatrix::Identity(dim, dim); }

HermitianOperator h_grover_full(int n, std::size_t y, double s, double epsilon) {
  require_full_qubits(n);
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("s must lie in [0, 1]");
  const Eigen::Index dim = Eigen::Index{1} << n;
  HermitianOperator h(dim, Basis::computational);
  Eigen::MatrixXd m = epsilon * ((1.0 - s) * uniform_complement(n) + s * marked_complement(n, y));
  // Spectrum of the static operator lies in [0, epsilon].
  h.add_term({}, real_storage(std::move(m)), 1.0, 0.0, epsilon);
  return h;
}

HermitianOperator h_grover_full_driven(int n, std::size_t y, const DriveParams& params) {
  require_full_qubits(n);
  params.validate();
  const Eigen::Index dim = Eigen::Index{1} << n;
  const double a = params.amplitude_a;
  const double w = params.omega;
  const double eps = params.epsilon;
  HermitianOperator h(dim, Basis::computational);
  const double amp = eps * 0.5 * (1.0 + a);
  h.add_term([=](double t) { return eps * (1.0 - control_s(t, a, w)); },
             real_storage(uniform_complement(n)), amp, w, 1.0);
  h.add_term([=](double t) { return eps * control_s(t, a, w); },
             real_storage(marked_complement(n, y)), amp, w, 1.0);
  return h;
}

HermitianOperator h_grover_projected(double s, double delta, double epsilon) {
  require_delta(delta);
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("s must lie in [0, 1]");
  const double xi = std::sqrt((1.0 - delta) * (1.0 + delta));
  HermitianOperator h(2, Basis::bar);
  h.add_static(epsilon * (0.5 * identity(2) + (s - 0.5) * xi * pauli_z() -
                          0.5 * delta * pauli_x()));
  return h;
}

HermitianOperator h_lzs(const DriveParams& params) {
  params.validate();
  const double w = params.omega;
  const double eps = params.epsilon;
  HermitianOperator h(2, Basis::bar);
  h.add_static(-0.5 * eps * params.delta * pauli_x());
  if (params.amplitude_a != 0.0) {
    h.add_term([=](double t) { return std::cos(w * t); },
               -0.5 * eps * params.amplitude_a * pauli_z(), 1.0, w);
  }
  return h;
}

HermitianOperator h_alg_b_projected(const DriveParams& params, Projection mode) {
  params.validate();
  const double a = params.amplitude_a;
  const double b = params.amplitude_b;
  const double d = params.delta;
  const double w = params.omega;
  const double eps = params.epsilon;
  auto cos_wt = [w](double t) { return std::cos(w * t); };

  HermitianOperator h(2, Basis::bar);
  if (mode == Projection::truncated) {
    CMatrix constant(2, 2);
    constant << 0.5, -0.5 * d, -0.5 * d, 0.5;
    CMatrix modulated(2, 2);
    modulated << -(b + 0.5 * a), -0.5 * d * b, -0.5 * d * b, 0.5 * a;
    h.add_static(eps * constant);
    h.add_term(cos_wt, eps * modulated, 1.0, w);
    return h;
  }

  // Project I - |u><u|, I - |y><y| and |u><u| with the bar coordinates of u, y.
  const CMatrix pu = outer(bar_coordinates_of_u(d));
  const CMatrix py = outer(bar_coordinates_of_y(d));
  const CMatrix i2 = identity(2);
  // (I-uu)(1 + A c)/2 + (I-yy)(1 - A c)/2 - B c uu
  const CMatrix constant = 0.5 * ((i2 - pu) + (i2 - py));
  const CMatrix modulated = 0.5 * a * ((i2 - pu) - (i2 - py)) - b * pu;
  h.add_static(eps * constant);
  h.add_term(cos_wt, eps * modulated, 1.0, w);
  return h;
}

HermitianOperator h_three_level(const DriveParams& params, ThreeLevelVariant variant) {
  params.validate();
  const double a = params.amplitude_a;
  const double b = params.amplitude_b;
  const double d = params.delta;
  const double w = params.omega;
  const double eps = params.epsilon;
  const double eta = params.eta;

  CMatrix constant(3, 3);
  constant << 0.5, -0.5 * d, eta,
              -0.5 * d, 0.5, 0.0,
              eta, 0.0, 1.0;
  HermitianOperator h(3, Basis::three_level);
  h.add_static(eps * constant);
  if (variant == ThreeLevelVariant::alg_b) {
    CMatrix modulated = CMatrix::Zero(3, 3);
    modulated(0, 0) = -(b + 0.5 * a);
    modulated(0, 1) = modulated(1, 0) = -0.5 * d * b;
    modulated(1, 1) = 0.5 * a;
    h.add_term([w](double t) { return std::cos(w * t); }, eps * modulated, 1.0, w);
  }
  return h;
}

HermitianOperator add_sigma_z_error(HermitianOperator h, double a1, double omega1,
                                    double phi) {
  if (h.dim() != 2 || h.basis() != Basis::bar) {
    throw InvalidArgument("sigma_z error needs a 2-level bar-basis operator");
  }
  if (a1 == 0.0) return h;
  if (omega1 == 0.0) {
    h.add_static(a1 * std::cos(phi) * pauli_z());
  } else {
    h.add_term([=](double t) { return std::cos(omega1 * t + phi); }, a1 * pauli_z(), 1.0,
               omega1);
  }
  return h;
}

CVector uniform_state(int n) {
  require_full_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  return CVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
}

CVector basis_state(int n, std::size_t index) {
  require_full_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (index >= static_cast<std::size_t>(dim)) throw InvalidArgument("basis index out of range");
  CVector v = CVector::Zero(dim);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return v;
}

CVector bar_state_full(int n, std::size_t y, int which) {
  if (which != 0 && which != 1) throw InvalidArgument("bar state index must be 0 or 1");
  const double d = gap(n);
  const BarBasis b = bar_basis(d);
  const double xi = std::sqrt((1.0 - d) * (1.0 + d));
  const CVector u = uniform_state(n);
  const CVector u_perp = (basis_state(n, y) - d * u) / xi;
  return which == 0 ? CVector(b.c0u * u + b.c0p * u_perp) : CVector(b.c1u * u + b.c1p * u_perp);
}

}  // namespace lzs
