// Copyright 2026 The switchsim Authors
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

#include <doctest.h>

#include "switchsim/channels.hpp"
#include "switchsim/linalg.hpp"
#include "switchsim/rng.hpp"

using namespace switchsim;

namespace {

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = Complex(standard_normal(rng), standard_normal(rng));
  return m;
}

// Independent elementwise Kronecker oracle (scalar double loop).
ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace

TEST_CASE("tensor: identity case") {
  CHECK(approx_equal(tensor(identity_matrix(2), identity_matrix(2)),
                     identity_matrix(4), 0.0));
}

TEST_CASE("tensor: dimension arithmetic for rectangular operands") {
  Rng rng = make_rng(1);
  ComplexMatrix a = random_matrix(2, 3, rng);
  ComplexMatrix b = random_matrix(4, 5, rng);
  ComplexMatrix t = tensor(a, b);
  CHECK(t.rows() == 8);
  CHECK(t.cols() == 15);
}

TEST_CASE("tensor: X (x) Z matches the elementwise oracle") {
  ComplexMatrix x = gate_matrix("X");
  ComplexMatrix z = gate_matrix("Z");
  ComplexMatrix t = tensor(x, z);

  // Frozen from the scalar double-loop definition.
  ComplexMatrix expected(4, 4);
  expected << 0, 0, 1, 0,
              0, 0, 0, -1,
              1, 0, 0, 0,
              0, -1, 0, 0;
  CHECK(max_abs_diff(t, expected) == 0.0);
  CHECK(max_abs_diff(t, kron_oracle(x, z)) == 0.0);
}

TEST_CASE("tensor: associativity within 1e-12 on random matrices") {
  Rng rng = make_rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix a = random_matrix(2, 2, rng);
    ComplexMatrix b = random_matrix(3, 2, rng);
    ComplexMatrix c = random_matrix(2, 3, rng);
    CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) <=
          1e-12);
  }
}

TEST_CASE("tensor: random entries match the elementwise oracle") {
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a = random_matrix(3, 4, rng);
    ComplexMatrix b = random_matrix(2, 5, rng);
    CHECK(max_abs_diff(tensor(a, b), kron_oracle(a, b)) <= 1e-14);
  }
}

TEST_CASE("partial_trace: product state reduces to its factor") {
  Rng rng = make_rng(4);
  DensityMatrix rho_a = random_density(1, rng);
  DensityMatrix rho_b = random_density(1, rng);
  DensityMatrix joint =
      DensityMatrix{tensor(rho_a.matrix, rho_b.matrix), true};
  DensityMatrix reduced = partial_trace(joint, {2, 2}, {0});
  CHECK(max_abs_diff(reduced.matrix, rho_a.matrix) <= 1e-12);
}

TEST_CASE("partial_trace: Bell state reduces to I/2 on either side") {
  ComplexVector bell(4);
  const double s = 1.0 / std::sqrt(2.0);
  bell << Complex(s, 0), 0, 0, Complex(s, 0);
  DensityMatrix rho = density_from_pure(PureState::from_amplitudes(bell));
  ComplexMatrix half = 0.5 * identity_matrix(2);
  CHECK(max_abs_diff(partial_trace(rho, {2, 2}, {0}).matrix, half) <= 1e-12);
  CHECK(max_abs_diff(partial_trace(rho, {2, 2}, {1}).matrix, half) <= 1e-12);
}

TEST_CASE("partial_trace: keeping all subsystems is the identity") {
  Rng rng = make_rng(5);
  DensityMatrix rho = random_density(2, rng);
  CHECK(max_abs_diff(partial_trace(rho, {2, 2}, {0, 1}).matrix, rho.matrix) ==
        0.0);
}

TEST_CASE("partial_trace: preserves trace on random states up to dim 16") {
  Rng rng = make_rng(6);
  for (int qubits = 2; qubits <= 4; ++qubits) {
    DensityMatrix rho = random_density(qubits, rng);
    std::vector<int> dims(qubits, 2);
    DensityMatrix reduced = partial_trace(rho, dims, {0});
    CHECK(std::abs(reduced.matrix.trace().real() -
                   rho.matrix.trace().real()) <= 1e-12);
  }
}

TEST_CASE("partial_trace: dimension mismatch raises") {
  Rng rng = make_rng(7);
  DensityMatrix rho = random_density(2, rng);
  CHECK_THROWS_AS(partial_trace(rho, {2, 4}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {3}), std::invalid_argument);
}

TEST_CASE("trace_distance: coincident states give 0") {
  Rng rng = make_rng(8);
  DensityMatrix rho = random_density(2, rng);
  CHECK(trace_distance(rho, rho) == 0.0);
}

TEST_CASE("trace_distance: orthogonal pure states give 1") {
  DensityMatrix zero = density_from_pure(PureState::basis_state(1, 0));
  DensityMatrix one = density_from_pure(PureState::basis_state(1, 1));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace_distance: d(I/2, |0><0|) = 1/2") {
  // Hand oracle: I/2 - |0><0| = diag(-1/2, 1/2); eigenvalues +-1/2, so the
  // distance is (1/2)(1/2 + 1/2) = 0.5.
  DensityMatrix mixed = DensityMatrix{0.5 * identity_matrix(2), true};
  DensityMatrix zero = density_from_pure(PureState::basis_state(1, 0));
  CHECK(std::abs(trace_distance(mixed, zero) - 0.5) <= 1e-12);
}

TEST_CASE("trace_distance: dimension mismatch raises") {
  Rng rng = make_rng(12);
  CHECK_THROWS_AS(
      trace_distance(random_density(1, rng), random_density(2, rng)),
      std::invalid_argument);
}

TEST_CASE("trace_distance: symmetric and triangle inequality hold") {
  Rng rng = make_rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    DensityMatrix a = random_density(2, rng);
    DensityMatrix b = random_density(2, rng);
    DensityMatrix c = random_density(2, rng);
    double ab = trace_distance(a, b);
    double ba = trace_distance(b, a);
    CHECK(std::abs(ab - ba) <= 1e-10);
    CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-10);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-10);
  }
}

TEST_CASE("trace_distance: invariant under joint unitary conjugation") {
  Rng rng = make_rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    DensityMatrix a = random_density(2, rng);
    DensityMatrix b = random_density(2, rng);
    ComplexMatrix u = random_unitary(4, rng);
    DensityMatrix ua = DensityMatrix{u * a.matrix * u.adjoint(), true};
    DensityMatrix ub = DensityMatrix{u * b.matrix * u.adjoint(), true};
    CHECK(std::abs(trace_distance(ua, ub) - trace_distance(a, b)) <= 1e-10);
  }
}

TEST_CASE("is_unitary: identity passes, scaled identity fails") {
  CHECK(is_unitary(identity_matrix(4), 1e-10));
  CHECK_FALSE(is_unitary(ComplexMatrix(2.0 * identity_matrix(2)), 1e-10));
  CHECK(is_unitary(gate_matrix("H"), 1e-12));
  CHECK(is_unitary(gate_matrix("CNOT"), 0.0));
}

TEST_CASE("is_unitary: rejects non-square input") {
  Rng rng = make_rng(11);
  ComplexMatrix m = random_matrix(2, 3, rng);
  CHECK_THROWS_AS(is_unitary(m, 1e-10), std::invalid_argument);
}

TEST_CASE("PureState: norm is validated") {
  ComplexVector bad(2);
  bad << Complex(1, 0), Complex(0.5, 0);
  CHECK_THROWS_AS(PureState::from_amplitudes(bad), std::invalid_argument);
  ComplexVector good(2);
  good << Complex(std::sqrt(0.5), 0), Complex(0, std::sqrt(0.5));
  CHECK(PureState::from_amplitudes(good).qubit_count == 1);
}

TEST_CASE("DensityMatrix: invariants are validated") {
  ComplexMatrix not_hermitian(2, 2);
  not_hermitian << 1, 1, 0, 0;
  CHECK_THROWS_AS(make_density(not_hermitian), std::invalid_argument);

  ComplexMatrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(make_density(negative), std::invalid_argument);

  ComplexMatrix wrong_trace = identity_matrix(2);
  CHECK_THROWS_AS(make_density(wrong_trace, true), std::invalid_argument);

  // Subnormalized branches are allowed when flagged.
  ComplexMatrix branch = 0.25 * identity_matrix(2);
  DensityMatrix rho = make_density(branch, false);
  CHECK_FALSE(rho.normalized);
}

TEST_CASE("hermitian_eigenvalues: diagonal matrix returns its diagonal") {
  ComplexMatrix d = ComplexMatrix::Zero(4, 4);
  d(0, 0) = -2.0;
  d(1, 1) = 0.5;
  d(2, 2) = 1.0;
  d(3, 3) = 3.0;
  auto ev = hermitian_eigenvalues(d);
  REQUIRE(ev.size() == 4);
  CHECK(ev[0] == doctest::Approx(-2.0));
  CHECK(ev[3] == doctest::Approx(3.0));
}
