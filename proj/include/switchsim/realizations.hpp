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

#include <cstdint>
#include <map>
#include <string>

#include "switchsim/circuit.hpp"
#include "switchsim/higher_order.hpp"

namespace switchsim {

// Deterministic two-call realization: a controlled-swap sandwich with two
// N-qubit data registers. Wire 0 is the control, wires 1..N the middle
// register carrying the input, wires N+1..2N the companion register. Uses
// each oracle exactly twice.
CircuitDescription two_call_circuit(const std::string& f_id,
                                    const std::string& g_id, int qubits);

// Probabilistic single-call realization via teleportation: control, N data
// wires, and N entangled pairs whose second halves are Bell-measured.
// Oracle ids are "f" and "g"; outcome "E" post-selects the switch branch.
CircuitDescription teleport_circuit(int qubits);

struct PostselectedResult {
  double success_probability = 0.0;
  DensityMatrix conditional_state;  // on control (x) data, normalized
  std::map<std::string, long> shots_record;
  bool has_shots = false;
};

// Runs the teleport circuit on phi (x) psi. The success probability is
// 4^-N for any unitary boxes; the conditional state on success is
// proportional to alpha |0> (x) U_f U_g psi + beta |1> (x) U_g U_f psi.
// With shots > 0 the full Bell outcome distribution is also sampled.
PostselectedResult teleport_switch(const UnitaryBox& f, const UnitaryBox& g,
                                   const ControlState& phi,
                                   const PureState& psi, long shots = 0,
                                   std::uint64_t seed = 0);

// 4^-N, the teleport success probability for N-qubit boxes.
double success_probability(int qubits);

// The closed-loop network the no-switch proof rejects: a single-qubit data
// wire plus a backward wire realized as an entangled-pair preparation whose
// matching Bell projection is artificially scaled to weight 1.
// box_choice "identity" leaves the loop untouched; "swap_pair" routes the
// data through two swap gates spanning the loop.
CircuitDescription loop_witness_circuit(const std::string& box_choice);

struct WitnessReport {
  std::string construction;
  double max_trace_deviation = 0.0;  // max |tr(output) - 1| over probes
  std::string worst_probe;
  bool normalization_violated = false;
  // |sum of unscaled complete-outcome probabilities - 1|, worst probe.
  double unscaled_completeness_deviation = 0.0;
};

WitnessReport loop_contraction_witness(const std::string& box_choice,
                                       double tol = kDefaultTol);

struct SeparationReport {
  // Control measured in the +/- basis after quantum-controlled switching of
  // |+> (x) |0>.
  double quantum_p_minus = 0.0;
  double quantum_p_plus = 0.0;
  // Same measurement on the classical record left by the classically
  // controlled oracle (the control is read out, so no interference).
  double classical_p_minus = 0.0;
  double classical_p_plus = 0.0;
  // Distance between the quantum-control output state and the classical
  // construction's output (fresh uncorrelated |+> control (x) mixed target).
  double state_distance = 0.0;
  // Interference prediction (1/4) ||(U_g U_f - U_f U_g)|0>||^2.
  double predicted_quantum_p_minus = 0.0;
};

// Witness experiment for the classical/quantum control separation; for
// anticommuting boxes the quantum path gives P(-) = 1 against the classical
// 1/2, while commuting boxes make both paths coincide.
SeparationReport separation_experiment(const UnitaryBox& f,
                                       const UnitaryBox& g);

}  // namespace switchsim
