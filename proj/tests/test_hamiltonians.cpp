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

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "lzs/errors.hpp"
#include "lzs/hamiltonians.hpp"

using namespace lzs;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix closed_form_projection(double s, double delta) {
  const double xi = std::sqrt(1.0 - delta * delta);
  return 0.5 * identity(2) + (s - 0.5) * xi * pauli_z() - 0.5 * delta * pauli_x();
}

DriveParams driven(int n, double a, double b, double omega) {
  DriveParams p = DriveParams::for_qubits(n);
  p.amplitude_a = a;
  p.amplitude_b = b;
  p.omega = omega;
  return p;
}

}  // namespace

TEST_CASE("gap and control function") {
  CHECK(gap(2) == 0.5);
  CHECK(gap(20) == std::ldexp(1.0, -10));
  CHECK(gap(7) == doctest::Approx(std::pow(2.0, -3.5)).epsilon(1e-15));
  CHECK_THROWS_AS(gap(0), InvalidArgument);
  CHECK(control_s(0.0, 1.0, 2.0) == 0.0);
  CHECK(control_s(kPi / 2.0, 1.0, 2.0) == doctest::Approx(1.0));
  CHECK(control_s(1.3, 0.0, 2.0) == 0.5);
  CHECK_THROWS_AS(control_s(0.0, 1.5, 1.0), InvalidArgument);
}

TEST_CASE("drive params validation") {
  DriveParams p = DriveParams::for_qubits(6);
  CHECK(p.delta == 0.125);
  CHECK_NOTHROW(p.validate());
  p.delta = 0.2;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  DriveParams q;
  q.delta = 0.1;
  CHECK_NOTHROW(q.validate());
  q.omega = 0.0;
  CHECK_THROWS_AS(q.validate(), InvalidArgument);
  q.omega = 1.0;
  q.amplitude_a = 1.2;
  CHECK_THROWS_AS(q.validate(), InvalidArgument);
  q.amplitude_a = 0.5;
  q.delta = 0.0;
  CHECK_THROWS_AS(q.validate(), InvalidArgument);
  q.delta = 0.1;
  q.eta = std::nan("");
  CHECK_THROWS_AS(q.validate(), InvalidArgument);
}

TEST_CASE("bar basis geometry") {
  for (int n = 2; n <= 30; n += 2) {
    const double d = gap(n);
    const BarBasis b = bar_basis(d);
    CHECK(b.c0u * b.c0u + b.c0p * b.c0p == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.c1u * b.c1u + b.c1p * b.c1p == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(b.c0u * b.c1u + b.c0p * b.c1p) < 1e-16);
    CHECK(b.xi() == doctest::Approx(std::sqrt(1.0 - d * d)).epsilon(1e-14));
    const CVector u = bar_coordinates_of_u(d);
    const CVector y = bar_coordinates_of_y(d);
    CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(y.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u.dot(y).real() == doctest::Approx(d).epsilon(1e-13));
    // |0bar> ~ |u> and |1bar> ~ |y> up to O(delta^2) in probability.
    CHECK(std::norm(u(0)) >= 1.0 - d * d);
    CHECK(std::norm(y(1)) >= 1.0 - d * d);
  }
}

TEST_CASE("projected grover operator is the closed form for every s") {
  for (double d : {0.5, 0.125, 1.0 / 32.0, std::ldexp(1.0, -10)}) {
    for (double s : {0.0, 0.2, 0.5, 0.77, 1.0}) {
      const CMatrix h = h_grover_projected(s, d).entries(0.0);
      CHECK(max_abs(h - closed_form_projection(s, d)) < 1e-15);
    }
  }
  CHECK(max_abs(h_grover_projected(0.5, 0.25, 3.0).entries(0.0) -
                3.0 * closed_form_projection(0.5, 0.25)) < 1e-15);
  CHECK_THROWS_AS(h_grover_projected(1.5, 0.25), InvalidArgument);
}

TEST_CASE("span{u, y} is invariant under the full operator") {
  for (int n : {3, 5, 8}) {
    const std::size_t y = (std::size_t{1} << n) - 2;
    const CVector b0 = bar_state_full(n, y, 0);
    const CVector b1 = bar_state_full(n, y, 1);
    CHECK(b0.norm() == doctest::Approx(1.0));
    CHECK(std::abs(b0.dot(b1)) < 1e-14);
    for (double s : {0.1, 0.5, 0.9}) {
      const CMatrix full = h_grover_full(n, y, s).entries(0.0);
      CMatrix reduced(2, 2);
      const CVector h0 = full * b0;
      const CVector h1 = full * b1;
      reduced << b0.dot(h0), b0.dot(h1), b1.dot(h0), b1.dot(h1);
      CHECK(max_abs(reduced - closed_form_projection(s, gap(n))) < 1e-13);
      // Nothing leaks out of V.
      CHECK((h0 - reduced(0, 0) * b0 - reduced(1, 0) * b1).norm() < 1e-13);
    }
    // Bar coordinates of the full-space u and y agree with the 2-level ones.
    const CVector u = uniform_state(n);
    const CVector yy = basis_state(n, y);
    CHECK(std::abs(b0.dot(u) - bar_coordinates_of_u(gap(n))(0)) < 1e-14);
    CHECK(std::abs(b1.dot(u) - bar_coordinates_of_u(gap(n))(1)) < 1e-14);
    CHECK(std::abs(b0.dot(yy) - bar_coordinates_of_y(gap(n))(0)) < 1e-14);
    CHECK(std::abs(b1.dot(yy) - bar_coordinates_of_y(gap(n))(1)) < 1e-14);
  }
}

TEST_CASE("full-space builders") {
  const HermitianOperator h = h_grover_full(3, 2, 0.3);
  const CMatrix m = h.entries(0.0);
  CHECK(h.dim() == 8);
  CHECK(h.basis() == Basis::computational);
  CHECK(h.is_static());
  CHECK(max_abs(m - m.adjoint()) == 0.0);
  // Spectrum: 1 with multiplicity 2^n - 2, plus the two levels in V.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const Eigen::VectorXd w = es.eigenvalues();
  Eigen::SelfAdjointEigenSolver<CMatrix> e2(closed_form_projection(0.3, gap(3)));
  CHECK(w(0) == doctest::Approx(e2.eigenvalues()(0)));
  CHECK(w(1) == doctest::Approx(e2.eigenvalues()(1)));
  for (int i = 2; i < 8; ++i) CHECK(w(i) == doctest::Approx(1.0));

  CHECK_THROWS_AS(h_grover_full(13, 0, 0.5), ResourceLimit);
  CHECK_THROWS_AS(h_grover_full(3, 8, 0.5), InvalidArgument);

  const DriveParams p = driven(4, 0.8, 0.0, 1.7);
  const HermitianOperator hd = h_grover_full_driven(4, 9, p);
  CHECK(hd.max_frequency() == 1.7);
  for (double t : {0.0, 0.4, 2.9}) {
    const CMatrix want = h_grover_full(4, 9, control_s(t, 0.8, 1.7)).entries(0.0);
    CHECK(max_abs(hd.entries(t) - want) < 1e-14);
  }
}

TEST_CASE("lzs operator") {
  DriveParams p;
  p.delta = 0.3;
  p.amplitude_a = 0.7;
  p.omega = 2.0;
  p.epsilon = 1.5;
  const HermitianOperator h = h_lzs(p);
  for (double t : {0.0, 0.3, 1.1}) {
    const CMatrix want =
        0.75 * (-0.7 * std::cos(2.0 * t) * pauli_z() - 0.3 * pauli_x());
    CHECK(max_abs(h.entries(t) - want) < 1e-15);
  }
  p.amplitude_a = 0.0;
  CHECK(h_lzs(p).is_static());
}

TEST_CASE("algorithm B projections") {
  for (int n : {6, 10, 16}) {
    const DriveParams p = driven(n, 1.0, 9.12, 3.67);
    const HermitianOperator exact = h_alg_b_projected(p, Projection::exact);
    const HermitianOperator trunc = h_alg_b_projected(p, Projection::truncated);
    const double d = p.delta;
    for (double t : {0.0, 0.5, 1.2}) {
      const double c = std::cos(3.67 * t);
      CMatrix want(2, 2);
      want << 0.5 - (9.12 + 0.5) * c, -0.5 * d * (9.12 * c + 1.0),
          -0.5 * d * (9.12 * c + 1.0), 0.5 + 0.5 * c;
      CHECK(max_abs(trunc.entries(t) - want) < 1e-14);
      // Dropped terms are O(delta^2) times the largest coefficient.
      CHECK(max_abs(exact.entries(t) - want) < 10.0 * 9.12 * d * d);
    }
  }
  // B = 0 and the exact projection is the driven closed form.
  const DriveParams a = driven(8, 0.6, 0.0, 0.9);
  const HermitianOperator h = h_alg_b_projected(a, Projection::exact);
  for (double t : {0.0, 1.0, 2.0}) {
    CHECK(max_abs(h.entries(t) - closed_form_projection(control_s(t, 0.6, 0.9), a.delta)) < 1e-15);
  }
}

TEST_CASE("three-level model") {
  DriveParams p = DriveParams::for_qubits(12);
  p.amplitude_a = 1.0;
  p.amplitude_b = 9.12;
  p.omega = 4.0;
  p.eta = 0.3;
  const double d = p.delta;
  const HermitianOperator half = h_three_level(p, ThreeLevelVariant::h_half);
  CHECK(half.is_static());
  CHECK(half.basis() == Basis::three_level);
  CMatrix want(3, 3);
  want << 0.5, -0.5 * d, 0.3, -0.5 * d, 0.5, 0.0, 0.3, 0.0, 1.0;
  CHECK(max_abs(half.entries(0.0) - want) == 0.0);

  const HermitianOperator b = h_three_level(p, ThreeLevelVariant::alg_b);
  const double t = 0.37;
  const double c = std::cos(4.0 * t);
  want(0, 0) = 0.5 - 9.62 * c;
  want(0, 1) = want(1, 0) = -0.5 * d * (9.12 * c + 1.0);
  want(1, 1) = 0.5 + 0.5 * c;
  CHECK(max_abs(b.entries(t) - want) < 1e-14);
}

TEST_CASE("sigma_z control error") {
  const HermitianOperator base = h_grover_projected(0.5, 0.125);
  const HermitianOperator noisy = add_sigma_z_error(base, 0.05, 2.5, 0.3);
  CHECK(noisy.max_frequency() == 2.5);
  const double t = 1.9;
  CHECK(max_abs(noisy.entries(t) - base.entries(t) - 0.05 * std::cos(2.5 * t + 0.3) * pauli_z()) <
        1e-15);
  const HermitianOperator frozen = add_sigma_z_error(base, 0.125, 0.0, 0.0);
  CHECK(frozen.is_static());
  CHECK(max_abs(frozen.entries(0.0) - base.entries(0.0) - 0.125 * pauli_z()) < 1e-15);
  DriveParams p;
  p.delta = 0.1;
  CHECK_THROWS_AS(add_sigma_z_error(h_three_level(p, ThreeLevelVariant::h_half), 0.1, 1.0, 0.0),
                  InvalidArgument);
}

TEST_CASE("hermitian operator bookkeeping") {
  HermitianOperator h(2, Basis::bar);
  CHECK_THROWS_AS(h.add_static(identity(3)), InvalidArgument);
  CMatrix bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(h.add_static(bad), InvalidArgument);
  h.add_static(pauli_x());
  h.add_term([](double t) { return std::sin(3.0 * t); }, pauli_z(), 1.0, 3.0);
  h.add_term([](double t) { return 2.0 * std::cos(t); }, pauli_y(), 2.0, 1.0);
  CHECK_FALSE(h.is_static());
  CHECK(h.max_frequency() == 3.0);
  CHECK(h.spread_bound() >= 2.0 + 2.0 + 4.0 - 1e-12);
  const double t = 0.81;
  const auto coeffs = h.coefficients(t);
  REQUIRE(coeffs.size() == 3);
  CVector x(2);
  x << Complex(0.3, -0.1), Complex(0.2, 0.9);
  CVector y(2);
  h.apply(coeffs, x, y);
  CHECK((y - h.entries(t) * x).norm() < 1e-15);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.entries(t));
  CHECK(es.eigenvalues()(1) - es.eigenvalues()(0) <= h.spread_bound());
  CHECK_THROWS_AS(HermitianOperator(0, Basis::bar), InvalidArgument);
}

TEST_CASE("state constructors") {
  const CVector u = uniform_state(5);
  CHECK(u.size() == 32);
  CHECK(u.norm() == doctest::Approx(1.0));
  CHECK(basis_state(3, 7)(7) == 1.0);
  CHECK_THROWS_AS(basis_state(3, 8), InvalidArgument);
  CHECK_THROWS_AS(bar_state_full(3, 0, 2), InvalidArgument);
  CHECK(to_string(Basis::bar) != to_string(Basis::computational));
}
