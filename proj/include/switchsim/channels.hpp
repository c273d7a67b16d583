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

#pragma once

#include <string>
#include <vector>

#include "switchsim/linalg.hpp"
#include "switchsim/rng.hpp"

namespace switchsim {

// Tolerance for channel completeness sums; looser than kDefaultTol because
// random Stinespring constructions accumulate a little more error.
inline constexpr double kCptpTol = 1e-9;

// A black box given as a unitary on `qubit_count` qubits.
struct UnitaryBox {
  ComplexMatrix matrix;
  int qubit_count = 0;
};

UnitaryBox make_unitary_box(ComplexMatrix m, double tol = kDefaultTol);

// A black box given by Kraus operators. Deterministic channels (CPTP) have
// sum K^dag K = I; instrument elements (post-selected branches) only need
// sum K^dag K <= I and set deterministic = false.
struct KrausChannel {
  std::vector<ComplexMatrix> kraus_ops;
  int input_qubits = 0;
  int output_qubits = 0;
  bool deterministic = true;

  Eigen::Index input_dim() const { return Eigen::Index(1) << input_qubits; }
  Eigen::Index output_dim() const { return Eigen::Index(1) << output_qubits; }
};

KrausChannel make_channel(std::vector<ComplexMatrix> ops,
                          bool deterministic = true, double tol = kCptpTol);
KrausChannel channel_from_unitary(const UnitaryBox& u);

// sum_k K rho K^dag, as a linear map on arbitrary operators.
ComplexMatrix apply_channel_matrix(const KrausChannel& ch,
                                   const ComplexMatrix& m);
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

// Choi operator (ch (x) id) applied to sum_{ij} |ii><jj| (unnormalized, so
// complete positivity <=> PSD with no scale factors).
ComplexMatrix choi_matrix(const KrausChannel& ch);

struct CptpReport {
  bool pass = false;
  double completeness_deviation = 0.0;  // max |sum K^dag K - I| entrywise
  double choi_min_eigenvalue = 0.0;
};

CptpReport verify_cptp(const KrausChannel& ch, double tol = kCptpTol);

// A two-part box; part A holds the leading `qubits_a` qubits of the channel.
struct BipartiteBox {
  KrausChannel channel;
  int qubits_a = 0;
  int qubits_b = 0;
};

struct NonSignalingReport {
  bool non_signaling = false;
  bool a_to_b_ok = false;  // true when A's input cannot influence B's output
  bool b_to_a_ok = false;
  double a_to_b_deviation = 0.0;
  double b_to_a_deviation = 0.0;
};

// Exact channel-level check via reduced Choi blocks (the channel is applied
// to a complete matrix-unit basis of the far input).
NonSignalingReport check_non_signaling(const BipartiteBox& box,
                                       double tol = kDefaultTol);
bool is_non_signaling(const BipartiteBox& box, double tol = kDefaultTol);

// Zeroes the coherences of one qubit. Index 0 is the leftmost tensor factor.
ComplexMatrix dephase_qubit_matrix(const ComplexMatrix& m, int qubit_index);
DensityMatrix dephase_qubit(const DensityMatrix& rho, int qubit_index);

// Named gate library: I, X, Y, Z, H, S, CNOT, SWAP, CSWAP.
bool is_known_gate(const std::string& name);
int gate_arity(const std::string& name);
ComplexMatrix gate_matrix(const std::string& name);

// Named boxes addressable from fixtures: any gate name above, plus
// "bitflip(p)", "phaseflip(p)", "depolarizing(p)".
KrausChannel named_channel(const std::string& id);

KrausChannel bitflip_channel(double p);
KrausChannel phaseflip_channel(double p);
KrausChannel depolarizing_channel(double p);

// Haar-distributed unitary via QR of a complex Ginibre matrix.
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng);
UnitaryBox random_unitary_box(int qubits, Rng& rng);

// Random CPTP channel from a Stinespring dilation with a two-qubit
// environment (four Kraus operators).
KrausChannel random_cptp_channel(int qubits, Rng& rng);

// Random mixed state: a Haar-random pure state on twice the qubits with
// half of them traced out.
DensityMatrix random_density(int qubits, Rng& rng);

// Convex mixture lambda * a + (1 - lambda) * b as a Kraus family.
KrausChannel mix_channels(const KrausChannel& a, const KrausChannel& b,
                          double lambda);
KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b);

}  // namespace switchsim
