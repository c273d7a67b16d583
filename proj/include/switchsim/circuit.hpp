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
#include <vector>

#include "switchsim/channels.hpp"
#include "switchsim/linalg.hpp"

namespace switchsim {

enum class NodeKind { Gate, Oracle, Prep, Measure };

struct ProjectorOutcome {
  std::string label;
  ComplexVector basis_vector;  // projector is |v><v|
};

struct CircuitNode {
  NodeKind kind = NodeKind::Gate;
  std::string name;      // gate name, oracle id, or prep state name
  ComplexMatrix matrix;  // inline gate matrix when name is empty
  std::vector<int> wires;
  std::vector<ProjectorOutcome> outcomes;  // Measure nodes only
};

CircuitNode gate_node(const std::string& name, std::vector<int> wires);
CircuitNode gate_node(ComplexMatrix matrix, std::vector<int> wires);
CircuitNode oracle_node(const std::string& oracle_id, std::vector<int> wires);
CircuitNode prep_node(const std::string& state_name, std::vector<int> wires);
// Bell measurement on 2k wires: wire i is paired with wire k + i; outcomes
// are the 4^k products of {PHI+, PHI-, PSI+, PSI-} labels joined by commas.
CircuitNode bell_measure_node(std::vector<int> wires);

// A wire routed from one node's output back to an earlier node's input.
// Expressible so that rule 3 (no loops) has something to reject; circuits
// carrying one are not simulatable.
struct FeedbackEdge {
  int wire = 0;
  int from_node = 0;
  int to_node = 0;
};

// Node order fixes the topological (time) order; connectivity is by wire id.
struct CircuitDescription {
  int wire_count = 0;
  std::vector<CircuitNode> nodes;
  std::vector<FeedbackEdge> feedback_edges;
};

struct RuleViolation {
  int rule = 0;  // 1..4
  int node_index = -1;
  std::string message;
};

struct ValidationReport {
  bool pass = false;
  std::vector<RuleViolation> violations;
};

// Allowed call count per oracle id; ids not listed default to a single use.
struct OracleBudget {
  std::map<std::string, int> counts;
  static OracleBudget of(std::map<std::string, int> counts);
  int allowed(const std::string& id) const;
};

using OracleBindings = std::map<std::string, KrausChannel>;

ValidationReport validate_circuit(const CircuitDescription& c,
                                  const OracleBudget& budget);
std::map<std::string, int> oracle_use_counts(const CircuitDescription& c);

// Named preparation states: ZERO, ONE, PLUS, MINUS, PHI+, PHI-, PSI+, PSI-.
ComplexVector named_prep_state(const std::string& name);
bool is_known_prep_state(const std::string& name);
int prep_state_arity(const std::string& name);

// Lift an operator acting on `wires` to the full register. Wire 0 is the
// most significant (top) factor; wires[0] is the operator's leading factor.
ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<int>& wires, int wire_count);

// <chi|_wires |state>: contracts the listed wires with chi, returning the
// (unnormalized) amplitudes on the remaining wires in their original order.
ComplexVector partial_inner(const ComplexVector& state, int wire_count,
                            const std::vector<int>& wires,
                            const ComplexVector& chi);

// Sequential application of node unitaries; rejects measurement nodes and
// non-unitary oracles.
PureState simulate_pure(const CircuitDescription& c, const PureState& input,
                        const OracleBindings& bindings = {});

// Channel-level semantics; measurement nodes act as unselected projective
// channels (sum of all branches).
DensityMatrix simulate_density(const CircuitDescription& c,
                               const DensityMatrix& input,
                               const OracleBindings& bindings = {});

struct PostselectionResult {
  double probability = 0.0;
  DensityMatrix state;  // renormalized, on all wires
  bool zero_probability = false;
};

// Runs the circuit keeping only the branch with the given outcome label of
// the single measurement node ("E" is accepted for the all-PHI+ outcome).
PostselectionResult simulate_with_postselection(
    const CircuitDescription& c, const DensityMatrix& input,
    const std::string& outcome_label, const OracleBindings& bindings = {});

struct PurePostselection {
  double probability = 0.0;
  PureState state;  // renormalized, on the unmeasured wires
  std::vector<int> unmeasured_wires;
  bool zero_probability = false;
};

// Fast path for unitary circuits with one trailing measurement node: the
// selected outcome is contracted away and the conditional state is returned
// on the remaining wires.
PurePostselection postselect_pure(const CircuitDescription& c,
                                  const PureState& input,
                                  const std::string& outcome_label,
                                  const OracleBindings& bindings = {});

// Analytic outcome distribution of the single measurement node, in the
// node's outcome order.
std::vector<std::pair<std::string, double>> outcome_distribution(
    const CircuitDescription& c, const PureState& input,
    const OracleBindings& bindings = {});

// Multinomial sampling of the analytic distribution; shot i draws from
// mt19937_64 seeded with derive_seed(seed, i).
std::map<std::string, long> sample_outcomes(const CircuitDescription& c,
                                            const PureState& input, long shots,
                                            std::uint64_t seed,
                                            const OracleBindings& bindings = {});

}  // namespace switchsim
