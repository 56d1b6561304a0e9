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

// Driven search Hamiltonians: the full 2^n Grover family, its exact 2-level
// reduction in the bar basis, the Algorithm-B modulation, and the 3-level
// leakage toy model. Units: hbar = 1, energies in multiples of epsilon.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "lzs/kernels.hpp"

namespace lzs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxFullQubits = 12;

enum class Basis { computational, bar, three_level };

std::string_view to_string(Basis basis);

/// All scalars that define one driven-Hamiltonian instance.
///
/// `delta` is the dimensionless overlap <y|u>; when `n` is set the two must
/// agree (delta == gap(n)). `amplitude_a` is the sweep amplitude of s(t),
/// `amplitude_b` the Algorithm-B modulation, (`a1`, `omega1`, `phi`) the
/// harmonic sigma_z control error and `eta` the coupling out of the
/// invariant subspace.
struct DriveParams {
  std::optional<int> n;
  double delta = 0.0;
  double epsilon = 1.0;
  double amplitude_a = 0.0;
  double amplitude_b = 0.0;
  double omega = 1.0;
  double a1 = 0.0;
  double omega1 = 0.0;
  double phi = 0.0;
  double eta = 0.0;

  static DriveParams for_qubits(int n);

  // Throws InvalidArgument on a violated invariant.
  void validate() const;
};

/// Minimal gap 2^(-n/2) of an n-qubit search problem.
double gap(int n);

/// s(t) = (1 - A cos(omega t)) / 2.
double control_s(double t, double amplitude, double omega);

/// Coefficients of |0bar>, |1bar> on {|u>, |u_perp>}, with
/// |u_perp> = (|y> - delta |u>) / xi. In this basis |u> = (c0u, c1u) and
/// |y> = (c1u, c0u), so H_G(s) restricted to span{u, y} is exactly
/// I/2 + (s - 1/2) xi sz - (delta/2) sx.
struct BarBasis {
  double c0u = 0.0;
  double c0p = 0.0;
  double c1u = 0.0;
  double c1p = 0.0;

  double xi() const { return c0u * c0u - c1u * c1u; }  // sqrt(1 - delta^2)
};

BarBasis bar_basis(double delta);

/// Bar-basis coordinates of |u> and |y>.
CVector bar_coordinates_of_u(double delta);
CVector bar_coordinates_of_y(double delta);

/// Hermitian operator of the form H(t) = sum_i f_i(t) M_i with real
/// coefficient functions and constant Hermitian matrices, so it is Hermitian
/// at every t by construction. Coefficient functions must be pure; copies
/// share the (immutable) term matrices.
class HermitianOperator {
 public:
  using Coefficient = std::function<double(double)>;
  using Storage = std::variant<Eigen::MatrixXd, Eigen::MatrixXcd>;

  struct Term {
    Coefficient coefficient;  // empty for static terms (coefficient 1)
    std::shared_ptr<const Storage> matrix;
    double amplitude = 1.0;   // sup |f_i|
    double frequency = 0.0;   // angular frequency of f_i, 0 if static
    double spread = 0.0;      // lambda_max - lambda_min of M_i
  };

  HermitianOperator(Eigen::Index dim, Basis basis);

  HermitianOperator& add_static(const CMatrix& m);
  HermitianOperator& add_term(Coefficient f, const CMatrix& m, double amplitude,
                              double frequency);
  // For large matrices where the spectrum is known analytically.
  HermitianOperator& add_term(Coefficient f, std::shared_ptr<const Storage> m,
                              double amplitude, double frequency, double spread);

  Eigen::Index dim() const { return dim_; }
  Basis basis() const { return basis_; }
  std::span<const Term> terms() const { return terms_; }

  bool is_static() const;
  double max_frequency() const;
  // Upper bound on lambda_max - lambda_min of H(t) over all t.
  double spread_bound() const;

  std::vector<double> coefficients(double t) const;
  CMatrix assemble(std::span<const double> coefficients) const;
  CMatrix entries(double t) const { return assemble(coefficients(t)); }

  // y = H(coefficients) x without forming the dense sum.
  void apply(std::span<const double> coefficients, const CVector& x, CVector& y,
             kernels::Execution ex = kernels::Execution::serial) const;

 private:
  Eigen::Index dim_;
  Basis basis_;
  std::vector<Term> terms_;
};

// Pauli matrices and identity on the 2-level space.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix identity(Eigen::Index dim);

/// Static H_G(s) on the full 2^n space, n <= kMaxFullQubits.
HermitianOperator h_grover_full(int n, std::size_t y, double s, double epsilon = 1.0);

/// H_G(s(t)) on the full space with s(t) = control_s(t, A, omega).
HermitianOperator h_grover_full_driven(int n, std::size_t y, const DriveParams& params);

/// Static H_G(s)|_V in the bar basis.
HermitianOperator h_grover_projected(double s, double delta, double epsilon = 1.0);

/// Two-level Landau-Zener-Stueckelberg Hamiltonian
/// (epsilon/2) (-A cos(omega t) sigma_z - delta sigma_x).
HermitianOperator h_lzs(const DriveParams& params);

enum class Projection { exact, truncated };

/// Algorithm-B Hamiltonian restricted to V, in the bar basis. `truncated`
/// is the O(delta^2)-dropped closed form; `exact` projects every term of the
/// full operator with the bar basis. B = 0 gives Algorithm A.
HermitianOperator h_alg_b_projected(const DriveParams& params, Projection mode);

enum class ThreeLevelVariant { alg_b, h_half };

/// Three-level leakage model on {|0bar>, |1bar>, |2bar>} with coupling
/// eta (|0bar><2bar| + h.c.); O(delta^2) terms dropped.
HermitianOperator h_three_level(const DriveParams& params, ThreeLevelVariant variant);

/// H + a1 cos(omega1 t + phi) sigma_z on a bar-basis 2-level operator.
HermitianOperator add_sigma_z_error(HermitianOperator h, double a1, double omega1,
                                    double phi);

// Full-space states.
CVector uniform_state(int n);
CVector basis_state(int n, std::size_t index);
// |0bar> (which = 0) or |1bar> (which = 1) expressed on the 2^n basis.
CVector bar_state_full(int n, std::size_t y, int which);

}  // namespace lzs
