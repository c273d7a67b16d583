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
#include "switchsim/rng.hpp"

using namespace switchsim;

TEST_CASE("apply_channel: identity channel returns the input") {
  Rng rng = make_rng(20);
  DensityMatrix rho = random_density(2, rng);
  KrausChannel id = tensor_channels(named_channel("I"), named_channel("I"));
  CHECK(max_abs_diff(apply_channel(id, rho).matrix, rho.matrix) <= 1e-14);
}

TEST_CASE("apply_channel: unitary X maps |0><0| to |1><1|") {
  DensityMatrix zero = density_from_pure(PureState::basis_state(1, 0));
  DensityMatrix out = apply_channel(named_channel("X"), zero);
  CHECK(max_abs_diff(out.matrix,
                     density_from_pure(PureState::basis_state(1, 1)).matrix) ==
        0.0);
}

TEST_CASE("apply_channel: balanced bit-flip gives diag(1/2, 1/2)") {
  // Two-term hand expansion: (1/2) I|0><0|I + (1/2) X|0><0|X
  //   = (1/2)|0><0| + (1/2)|1><1|.
  DensityMatrix zero = density_from_pure(PureState::basis_state(1, 0));
  DensityMatrix out = apply_channel(bitflip_channel(0.5), zero);
  ComplexMatrix expected = 0.5 * identity_matrix(2);
  CHECK(max_abs_diff(out.matrix, expected) <= 1e-15);
}

TEST_CASE("apply_channel: CPTP channels map states to states") {
  Rng rng = make_rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    int qubits = 1 + static_cast<int>(trial % 3);  // dims 2, 4, 8
    KrausChannel ch = random_cptp_channel(qubits, rng);
    DensityMatrix rho = random_density(qubits, rng);
    DensityMatrix out = apply_channel(ch, rho);
    CHECK(is_hermitian(out.matrix, 1e-9));
    CHECK(min_hermitian_eigenvalue(out.matrix) >= -1e-9);
    CHECK(std::abs(out.matrix.trace().real() - 1.0) <= 1e-9);
  }
}

TEST_CASE("verify_cptp: single identity Kraus passes with zero deviation") {
  CptpReport report = verify_cptp(named_channel("I"));
  CHECK(report.pass);
  CHECK(report.completeness_deviation == 0.0);
  CHECK(report.choi_min_eigenvalue >= -1e-12);
}

TEST_CASE("verify_cptp: probabilistic flip family is complete by construction") {
  CptpReport report = verify_cptp(bitflip_channel(0.3));
  CHECK(report.pass);
  CHECK(report.completeness_deviation <= 1e-12);
}

TEST_CASE("verify_cptp: scaled operator fails") {
  KrausChannel bad;
  bad.kraus_ops = {ComplexMatrix(2.0 * gate_matrix("X"))};
  bad.input_qubits = bad.output_qubits = 1;
  bad.deterministic = false;
  CptpReport report = verify_cptp(bad);
  CHECK_FALSE(report.pass);
  CHECK(report.completeness_deviation == doctest::Approx(3.0));
}

TEST_CASE("verify_cptp: unitary Kraus channels sit at deviation < 1e-12") {
  Rng rng = make_rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    KrausChannel ch = channel_from_unitary(random_unitary_box(1, rng));
    CHECK(verify_cptp(ch).completeness_deviation < 1e-12);
  }
}

TEST_CASE("make_channel: rejects incomplete deterministic families") {
  CHECK_THROWS_AS(make_channel({ComplexMatrix(2.0 * gate_matrix("X"))}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_channel({}), std::invalid_argument);
}

TEST_CASE("instrument elements may be subnormalized but not exceed identity") {
  ComplexMatrix half = 0.5 * identity_matrix(2);
  KrausChannel element = make_channel({half}, false);
  CHECK_FALSE(element.deterministic);
  CHECK_THROWS_AS(make_channel({ComplexMatrix(1.5 * identity_matrix(2))}, false),
                  std::invalid_argument);
}

TEST_CASE("is_non_signaling: product boxes pass in both directions") {
  Rng rng = make_rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    KrausChannel a = random_cptp_channel(1, rng);
    KrausChannel b = random_cptp_channel(1, rng);
    BipartiteBox box{tensor_channels(a, b), 1, 1};
    NonSignalingReport report = check_non_signaling(box, 1e-9);
    CHECK(report.non_signaling);
  }
}

TEST_CASE("apply_channel: dimension mismatch raises") {
  Rng rng = make_rng(29);
  CHECK_THROWS_AS(apply_channel(named_channel("X"), random_density(2, rng)),
                  std::invalid_argument);
}

TEST_CASE("is_non_signaling: unequal part sizes are supported") {
  Rng rng = make_rng(19);
  BipartiteBox box{
      tensor_channels(random_cptp_channel(2, rng), random_cptp_channel(1, rng)),
      2, 1};
  CHECK(is_non_signaling(box, 1e-9));
}

TEST_CASE("is_non_signaling: identity on two qubits passes") {
  BipartiteBox box{tensor_channels(named_channel("I"), named_channel("I")), 1,
                   1};
  CHECK(is_non_signaling(box));
}

TEST_CASE("is_non_signaling: C-NOT signals, two-input oracle pins the deviation") {
  // Oracle: feed control |0><0| then |1><1| with target |0><0|; the reduced
  // target outputs are |0><0| and |1><1|, so the largest entry difference
  // is exactly 1.
  KrausChannel cnot = named_channel("CNOT");
  DensityMatrix t0 = density_from_pure(PureState::basis_state(1, 0));
  ComplexMatrix in0 = tensor(t0.matrix, t0.matrix);
  ComplexMatrix in1 =
      tensor(density_from_pure(PureState::basis_state(1, 1)).matrix, t0.matrix);
  ComplexMatrix out0 =
      partial_trace_matrix(apply_channel_matrix(cnot, in0), {2, 2}, {1});
  ComplexMatrix out1 =
      partial_trace_matrix(apply_channel_matrix(cnot, in1), {2, 2}, {1});
  double oracle_deviation = max_abs_diff(out0, out1);
  CHECK(oracle_deviation == doctest::Approx(1.0).epsilon(1e-12));

  BipartiteBox box{cnot, 1, 1};
  NonSignalingReport report = check_non_signaling(box);
  CHECK_FALSE(report.non_signaling);
  CHECK_FALSE(report.a_to_b_ok);  // control input steers the target output
  CHECK(report.a_to_b_deviation >= oracle_deviation - 1e-12);
}

TEST_CASE("dephase_qubit: |+><+| becomes I/2") {
  ComplexVector plus(2);
  const double s = 1.0 / std::sqrt(2.0);
  plus << Complex(s, 0), Complex(s, 0);
  DensityMatrix rho = density_from_pure(PureState::from_amplitudes(plus));
  CHECK(max_abs_diff(dephase_qubit(rho, 0).matrix,
                     ComplexMatrix(0.5 * identity_matrix(2))) <= 1e-15);
}

TEST_CASE("dephase_qubit: computational basis states are fixed points") {
  DensityMatrix one = density_from_pure(PureState::basis_state(1, 1));
  CHECK(max_abs_diff(dephase_qubit(one, 0).matrix, one.matrix) == 0.0);
}

TEST_CASE("dephase_qubit: control of the Bell state leaves the classical mix") {
  // 4x4 hand expansion: Phi+ has entries 1/2 at (0,0),(0,3),(3,0),(3,3);
  // killing the control coherences zeroes (0,3) and (3,0).
  ComplexVector bell(4);
  const double s = 1.0 / std::sqrt(2.0);
  bell << Complex(s, 0), 0, 0, Complex(s, 0);
  DensityMatrix rho = density_from_pure(PureState::from_amplitudes(bell));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK(max_abs_diff(dephase_qubit(rho, 0).matrix, expected) <= 1e-15);
}

TEST_CASE("dephase_qubit: idempotent and trace preserving") {
  Rng rng = make_rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    DensityMatrix rho = random_density(2, rng);
    for (int q = 0; q < 2; ++q) {
      DensityMatrix once = dephase_qubit(rho, q);
      DensityMatrix twice = dephase_qubit(once, q);
      CHECK(max_abs_diff(once.matrix, twice.matrix) <= 1e-12);
      CHECK(std::abs(once.matrix.trace().real() -
                     rho.matrix.trace().real()) <= 1e-12);
    }
  }
}

TEST_CASE("dephase_qubit: index out of range raises") {
  Rng rng = make_rng(25);
  DensityMatrix rho = random_density(1, rng);
  CHECK_THROWS_AS(dephase_qubit(rho, 1), std::out_of_range);
}

TEST_CASE("named_channel: parses the parameterized families") {
  CHECK(verify_cptp(named_channel("bitflip(0.3)")).pass);
  CHECK(verify_cptp(named_channel("phaseflip(0.4)")).pass);
  CHECK(verify_cptp(named_channel("depolarizing(1)")).pass);
  CHECK(named_channel("H").kraus_ops.size() == 1);
  CHECK_THROWS_AS(named_channel("frobnicate"), std::invalid_argument);
  CHECK_THROWS_AS(named_channel("bitflip(oops)"), std::invalid_argument);
  CHECK_THROWS_AS(named_channel("bitflip(1.5)"), std::invalid_argument);
}

TEST_CASE("depolarizing(1): fully mixes every input") {
  Rng rng = make_rng(26);
  KrausChannel dep = depolarizing_channel(1.0);
  DensityMatrix rho = random_density(1, rng);
  CHECK(max_abs_diff(apply_channel(dep, rho).matrix,
                     ComplexMatrix(0.5 * identity_matrix(2))) <= 1e-12);
}

TEST_CASE("random generators: unitaries and channels are well formed") {
  Rng rng = make_rng(27);
  for (int trial = 0; trial < 10; ++trial) {
    CHECK(is_unitary(random_unitary(4, rng), 1e-11));
    KrausChannel ch = random_cptp_channel(1, rng);
    CHECK(verify_cptp(ch).pass);
    DensityMatrix rho = random_density(2, rng);
    CHECK(is_hermitian(rho.matrix, 1e-12));
    CHECK(std::abs(rho.matrix.trace().real() - 1.0) <= 1e-12);
    CHECK(min_hermitian_eigenvalue(rho.matrix) >= -1e-12);
  }
}

TEST_CASE("mix_channels: acts as the convex mixture of the two channels") {
  Rng rng = make_rng(28);
  KrausChannel a = random_cptp_channel(1, rng);
  KrausChannel b = random_cptp_channel(1, rng);
  DensityMatrix rho = random_density(1, rng);
  double lambda = 0.3;
  ComplexMatrix mixed =
      apply_channel(mix_channels(a, b, lambda), rho).matrix;
  ComplexMatrix expected = lambda * apply_channel(a, rho).matrix +
                           (1.0 - lambda) * apply_channel(b, rho).matrix;
  CHECK(max_abs_diff(mixed, expected) <= 1e-12);
}

TEST_CASE("choi_matrix: identity channel gives the unnormalized Bell operator") {
  ComplexMatrix choi = choi_matrix(named_channel("I"));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 1.0;
  CHECK(max_abs_diff(choi, expected) == 0.0);
}
