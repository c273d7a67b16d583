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

#include "switchsim/realizations.hpp"

#include <cmath>
#include <stdexcept>

namespace switchsim {

CircuitDescription two_call_circuit(const std::string& f_id,
                                    const std::string& g_id, int qubits) {
  if (qubits < 1)
    throw std::invalid_argument("two_call_circuit: qubit count must be >= 1");
  CircuitDescription c;
  c.wire_count = 2 * qubits + 1;

  std::vector<int> middle, bottom;
  for (int q = 0; q < qubits; ++q) {
    middle.push_back(1 + q);
    bottom.push_back(1 + qubits + q);
  }

  auto cswap_column = [&]() {
    for (int q = 0; q < qubits; ++q)
      c.nodes.push_back(gate_node("CSWAP", {0, middle[q], bottom[q]}));
  };

  cswap_column();
  c.nodes.push_back(oracle_node(g_id, middle));
  c.nodes.push_back(oracle_node(f_id, bottom));
  c.nodes.push_back(oracle_node(f_id, middle));
  c.nodes.push_back(oracle_node(g_id, bottom));
  cswap_column();
  return c;
}

CircuitDescription teleport_circuit(int qubits) {
  if (qubits < 1)
    throw std::invalid_argument("teleport_circuit: qubit count must be >= 1");
  CircuitDescription c;
  c.wire_count = 3 * qubits + 1;

  std::vector<int> data, pair_a, pair_b;
  for (int q = 0; q < qubits; ++q) {
    data.push_back(1 + q);
    pair_a.push_back(1 + qubits + q);
    pair_b.push_back(1 + 2 * qubits + q);
  }

  for (int q = 0; q < qubits; ++q)
    c.nodes.push_back(prep_node("PHI+", {pair_a[q], pair_b[q]}));
  for (int q = 0; q < qubits; ++q)
    c.nodes.push_back(gate_node("CSWAP", {0, data[q], pair_a[q]}));
  // The routing flip between the two controlled swaps; the trailing X
  // restores the control label so the branch markers match the input bit.
  c.nodes.push_back(gate_node("X", {0}));
  c.nodes.push_back(oracle_node("g", data));
  c.nodes.push_back(oracle_node("f", pair_a));
  for (int q = 0; q < qubits; ++q)
    c.nodes.push_back(gate_node("CSWAP", {0, data[q], pair_a[q]}));
  c.nodes.push_back(gate_node("X", {0}));

  std::vector<int> measured = pair_a;
  measured.insert(measured.end(), pair_b.begin(), pair_b.end());
  c.nodes.push_back(bell_measure_node(std::move(measured)));
  return c;
}

PostselectedResult teleport_switch(const UnitaryBox& f, const UnitaryBox& g,
                                   const ControlState& phi,
                                   const PureState& psi, long shots,
                                   std::uint64_t seed) {
  if (f.qubit_count != g.qubit_count)
    throw std::invalid_argument("teleport_switch: boxes of different size");
  if (psi.qubit_count != f.qubit_count)
    throw std::invalid_argument("teleport_switch: input state size mismatch");
  int n = f.qubit_count;

  CircuitDescription circuit = teleport_circuit(n);
  OracleBindings bindings{{"f", channel_from_unitary(f)},
                          {"g", channel_from_unitary(g)}};

  PureState ancilla = PureState::basis_state(2 * n, 0);
  PureState input = tensor(tensor(phi.to_state(), psi), ancilla);

  PurePostselection post = postselect_pure(circuit, input, "E", bindings);

  PostselectedResult result;
  result.success_probability = post.probability;
  if (!post.zero_probability)
    result.conditional_state = density_from_pure(post.state);

  if (shots > 0) {
    result.shots_record = sample_outcomes(circuit, input, shots, seed, bindings);
    result.has_shots = true;
  }
  return result;
}

double success_probability(int qubits) {
  if (qubits < 1)
    throw std::invalid_argument("success_probability: qubit count must be >= 1");
  return std::ldexp(1.0, -2 * qubits);  // 4^-N exactly
}

CircuitDescription loop_witness_circuit(const std::string& box_choice) {
  CircuitDescription c;
  c.wire_count = 3;  // 0 = data, 1 = loop (past end), 2 = anchor
  c.nodes.push_back(prep_node("PHI+", {1, 2}));
  if (box_choice == "swap_pair") {
    // The proof's two swap gates: the data wire crosses the loop wire going
    // in and coming back out.
    c.nodes.push_back(gate_node("SWAP", {0, 1}));
    c.nodes.push_back(gate_node("SWAP", {0, 1}));
  } else if (box_choice != "identity") {
    throw std::invalid_argument("loop_witness_circuit: unknown box choice \"" +
                                box_choice + "\"");
  }
  c.nodes.push_back(bell_measure_node({1, 2}));
  return c;
}

WitnessReport loop_contraction_witness(const std::string& box_choice,
                                       double tol) {
  CircuitDescription circuit = loop_witness_circuit(box_choice);
  const double loop_dim = 2.0;  // single-qubit backward wire

  struct Probe {
    const char* label;
    Complex a0, a1;
  };
  const double s = 1.0 / std::sqrt(2.0);
  const Probe probes[] = {
      {"|0>", {1, 0}, {0, 0}},
      {"|1>", {0, 0}, {1, 0}},
      {"|+>", {s, 0}, {s, 0}},
      {"|i>", {s, 0}, {0, s}},
  };

  WitnessReport report;
  report.construction = box_choice;
  for (const Probe& probe : probes) {
    ComplexVector amps(2);
    amps << probe.a0, probe.a1;
    PureState data = PureState::from_amplitudes(std::move(amps));
    PureState input = tensor(data, PureState::basis_state(2, 0));

    // Unscaled branch: normalized pair preparation with projection E.
    PurePostselection branch = postselect_pure(circuit, input, "E");
    // Scaling the projection E by the loop dimension multiplies the branch
    // amplitude by loop_dim, so the output trace picks up loop_dim^2.
    double scaled_trace = loop_dim * loop_dim * branch.probability;
    double deviation = std::abs(scaled_trace - 1.0);
    if (deviation >= report.max_trace_deviation) {
      report.max_trace_deviation = deviation;
      report.worst_probe = probe.label;
    }

    double total = 0.0;
    for (const auto& [label, p] : outcome_distribution(circuit, input))
      total += p;
    report.unscaled_completeness_deviation = std::max(
        report.unscaled_completeness_deviation, std::abs(total - 1.0));
  }
  report.normalization_violated = report.max_trace_deviation > tol;
  return report;
}

SeparationReport separation_experiment(const UnitaryBox& f,
                                       const UnitaryBox& g) {
  if (f.qubit_count != 1 || g.qubit_count != 1)
    throw std::invalid_argument(
        "separation_experiment: boxes must be single-qubit");

  ControlState phi = ControlState::plus();
  PureState target = PureState::basis_state(1, 0);
  ComplexMatrix v0 = f.matrix * g.matrix;  // x = 0: g then f
  ComplexMatrix v1 = g.matrix * f.matrix;  // x = 1: f then g

  // Quantum path: coherent switched unitary on |+> (x) |0>.
  UnitaryBox su = switched_unitary(f, g);
  PureState in = tensor(phi.to_state(), target);
  ComplexVector out = su.matrix * in.amplitudes;
  DensityMatrix rho_quantum = DensityMatrix{
      ComplexMatrix(out * out.adjoint()), true};

  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector minus(2), plus(2);
  minus << Complex(s, 0), Complex(-s, 0);
  plus << Complex(s, 0), Complex(s, 0);

  SeparationReport report;
  {
    ComplexVector branch = partial_inner(out, 2, {0}, minus);
    report.quantum_p_minus = branch.squaredNorm();
    branch = partial_inner(out, 2, {0}, plus);
    report.quantum_p_plus = branch.squaredNorm();
  }

  // Classical path: the oracle reads the control, so the record it leaves is
  // the dephased bit; measuring the record in the +/- basis gives 1/2 each.
  double w1 = phi.weight_one();
  double w0 = phi.weight_zero();
  report.classical_p_minus = 0.5 * (w0 + w1);
  report.classical_p_plus = 0.5 * (w0 + w1);

  // Classical construction output: the contracted oracle's target mixture
  // next to a fresh, uncorrelated |+> control.
  ComplexMatrix rho_t = target.amplitudes * target.amplitudes.adjoint();
  ComplexMatrix mixture = w1 * (v1 * rho_t * v1.adjoint()) +
                          w0 * (v0 * rho_t * v0.adjoint());
  ComplexMatrix fresh = phi.to_state().amplitudes *
                        phi.to_state().amplitudes.adjoint();
  DensityMatrix rho_classical =
      DensityMatrix{tensor(ComplexMatrix(fresh), mixture), true};

  report.state_distance = trace_distance(rho_quantum, rho_classical);
  ComplexVector diff = (v1 - v0) * target.amplitudes;
  report.predicted_quantum_p_minus = 0.25 * diff.squaredNorm();
  return report;
}

}  // namespace switchsim
