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

#include "switchsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace switchsim {

namespace {

constexpr double kZeroProbabilityTol = 1e-20;

int bit_of(Eigen::Index index, int wire, int n) {
  return static_cast<int>((index >> (n - 1 - wire)) & 1);
}

Eigen::Index with_bit(Eigen::Index index, int wire, int b, int n) {
  Eigen::Index mask = Eigen::Index(1) << (n - 1 - wire);
  return b ? (index | mask) : (index & ~mask);
}

}  // namespace

CircuitNode gate_node(const std::string& name, std::vector<int> wires) {
  if (!is_known_gate(name))
    throw std::invalid_argument("unknown gate \"" + name + "\"");
  if (gate_arity(name) != static_cast<int>(wires.size()))
    throw std::invalid_argument("gate \"" + name + "\" expects " +
                                std::to_string(gate_arity(name)) + " wires");
  CircuitNode node;
  node.kind = NodeKind::Gate;
  node.name = name;
  node.wires = std::move(wires);
  return node;
}

CircuitNode gate_node(ComplexMatrix matrix, std::vector<int> wires) {
  Eigen::Index dim = Eigen::Index(1) << wires.size();
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw std::invalid_argument("inline gate dimension does not match wires");
  CircuitNode node;
  node.kind = NodeKind::Gate;
  node.matrix = std::move(matrix);
  node.wires = std::move(wires);
  return node;
}

CircuitNode oracle_node(const std::string& oracle_id, std::vector<int> wires) {
  CircuitNode node;
  node.kind = NodeKind::Oracle;
  node.name = oracle_id;
  node.wires = std::move(wires);
  return node;
}

CircuitNode prep_node(const std::string& state_name, std::vector<int> wires) {
  if (!is_known_prep_state(state_name))
    throw std::invalid_argument("unknown preparation \"" + state_name + "\"");
  if (prep_state_arity(state_name) != static_cast<int>(wires.size()))
    throw std::invalid_argument("preparation \"" + state_name +
                                "\" arity mismatch");
  CircuitNode node;
  node.kind = NodeKind::Prep;
  node.name = state_name;
  node.wires = std::move(wires);
  return node;
}

namespace {

Complex bell_pair_amplitude(const std::string& type, int a, int b) {
  const double s = 1.0 / std::sqrt(2.0);
  if (type == "PHI+") return (a == b) ? Complex(s, 0) : Complex(0, 0);
  if (type == "PHI-")
    return (a == b) ? Complex(a == 0 ? s : -s, 0) : Complex(0, 0);
  if (type == "PSI+") return (a != b) ? Complex(s, 0) : Complex(0, 0);
  if (type == "PSI-")
    return (a != b) ? Complex(a == 0 ? s : -s, 0) : Complex(0, 0);
  throw std::invalid_argument("unknown Bell label \"" + type + "\"");
}

const char* kBellTypes[4] = {"PHI+", "PHI-", "PSI+", "PSI-"};

}  // namespace

CircuitNode bell_measure_node(std::vector<int> wires) {
  if (wires.size() < 2 || wires.size() % 2 != 0)
    throw std::invalid_argument("Bell measurement needs an even wire count");
  int pairs = static_cast<int>(wires.size()) / 2;
  Eigen::Index dim = Eigen::Index(1) << wires.size();

  CircuitNode node;
  node.kind = NodeKind::Measure;
  node.name = "BELL";
  node.wires = std::move(wires);

  // 4^pairs outcomes; outcome digits select the Bell type of each pair.
  long outcome_count = 1;
  for (int p = 0; p < pairs; ++p) outcome_count *= 4;
  for (long oc = 0; oc < outcome_count; ++oc) {
    std::vector<int> type(pairs);
    long rest = oc;
    for (int p = pairs - 1; p >= 0; --p) {
      type[p] = static_cast<int>(rest % 4);
      rest /= 4;
    }
    std::string label;
    for (int p = 0; p < pairs; ++p) {
      if (p > 0) label += ",";
      label += kBellTypes[type[p]];
    }
    ComplexVector v(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      Complex amp(1.0, 0.0);
      for (int p = 0; p < pairs; ++p) {
        int a = static_cast<int>((idx >> (2 * pairs - 1 - p)) & 1);
        int b = static_cast<int>((idx >> (pairs - 1 - p)) & 1);
        amp *= bell_pair_amplitude(kBellTypes[type[p]], a, b);
        if (amp == Complex(0.0, 0.0)) break;
      }
      v(idx) = amp;
    }
    node.outcomes.push_back(ProjectorOutcome{label, std::move(v)});
  }
  return node;
}

OracleBudget OracleBudget::of(std::map<std::string, int> counts) {
  for (const auto& [id, count] : counts)
    if (count < 1)
      throw std::invalid_argument("OracleBudget: count for \"" + id +
                                  "\" must be positive");
  return OracleBudget{std::move(counts)};
}

int OracleBudget::allowed(const std::string& id) const {
  auto it = counts.find(id);
  return it == counts.end() ? 1 : it->second;
}

std::map<std::string, int> oracle_use_counts(const CircuitDescription& c) {
  std::map<std::string, int> uses;
  for (const auto& node : c.nodes)
    if (node.kind == NodeKind::Oracle) ++uses[node.name];
  return uses;
}

ComplexVector named_prep_state(const std::string& name) {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector v;
  if (name == "ZERO") {
    v = ComplexVector::Zero(2);
    v(0) = 1.0;
  } else if (name == "ONE") {
    v = ComplexVector::Zero(2);
    v(1) = 1.0;
  } else if (name == "PLUS") {
    v = ComplexVector::Constant(2, Complex(s, 0.0));
  } else if (name == "MINUS") {
    v = ComplexVector(2);
    v << Complex(s, 0), Complex(-s, 0);
  } else if (name == "PHI+" || name == "PHI-" || name == "PSI+" ||
             name == "PSI-") {
    v = ComplexVector::Zero(4);
    for (Eigen::Index idx = 0; idx < 4; ++idx)
      v(idx) = bell_pair_amplitude(name, static_cast<int>(idx >> 1),
                                   static_cast<int>(idx & 1));
  } else {
    throw std::invalid_argument("unknown preparation \"" + name + "\"");
  }
  return v;
}

bool is_known_prep_state(const std::string& name) {
  return name == "ZERO" || name == "ONE" || name == "PLUS" ||
         name == "MINUS" || name == "PHI+" || name == "PHI-" ||
         name == "PSI+" || name == "PSI-";
}

int prep_state_arity(const std::string& name) {
  return static_cast<int>(named_prep_state(name).size() == 4 ? 2 : 1);
}

namespace {

// Unitary whose first column is `target`; preparations then act as gates
// mapping |0...0> on their wires to the named state.
ComplexMatrix prep_unitary(const ComplexVector& target) {
  Eigen::Index d = target.size();
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  u.col(0) = target;
  Eigen::Index filled = 1;
  for (Eigen::Index j = 0; j < d && filled < d; ++j) {
    ComplexVector v = ComplexVector::Zero(d);
    v(j) = 1.0;
    for (Eigen::Index c = 0; c < filled; ++c)
      v -= ComplexVector(u.col(c)) * (u.col(c).dot(v));
    double norm = v.norm();
    if (norm > 1e-8) {
      u.col(filled) = v / norm;
      ++filled;
    }
  }
  return u;
}

std::vector<RuleViolation> structural_violations(const CircuitDescription& c) {
  std::vector<RuleViolation> out;
  if (c.wire_count <= 0)
    out.push_back({1, -1, "circuit declares no wires"});

  for (size_t idx = 0; idx < c.nodes.size(); ++idx) {
    const CircuitNode& node = c.nodes[idx];
    int i = static_cast<int>(idx);
    std::set<int> seen;
    bool wires_ok = true;
    for (int w : node.wires) {
      if (w < 0 || w >= c.wire_count) {
        out.push_back({1, i, "wire " + std::to_string(w) + " out of range"});
        wires_ok = false;
      } else if (!seen.insert(w).second) {
        out.push_back({1, i, "wire " + std::to_string(w) + " repeated"});
        wires_ok = false;
      }
    }
    if (!wires_ok) continue;

    Eigen::Index dim = Eigen::Index(1) << node.wires.size();
    switch (node.kind) {
      case NodeKind::Gate:
        if (!node.name.empty()) {
          if (!is_known_gate(node.name)) {
            out.push_back({2, i, "unknown gate \"" + node.name + "\""});
          } else if (gate_arity(node.name) !=
                     static_cast<int>(node.wires.size())) {
            out.push_back({2, i, "gate \"" + node.name + "\" arity mismatch"});
          }
        } else if (node.matrix.rows() != dim || node.matrix.cols() != dim) {
          out.push_back({2, i, "inline gate dimension mismatch"});
        }
        break;
      case NodeKind::Prep:
        if (!is_known_prep_state(node.name)) {
          out.push_back({2, i, "unknown preparation \"" + node.name + "\""});
        } else if (named_prep_state(node.name).size() != dim) {
          out.push_back({2, i, "preparation dimension mismatch"});
        }
        break;
      case NodeKind::Measure: {
        if (node.outcomes.empty()) {
          out.push_back({2, i, "measurement without outcomes"});
          break;
        }
        ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
        bool dims_ok = true;
        for (const auto& outcome : node.outcomes) {
          if (outcome.basis_vector.size() != dim) {
            out.push_back({2, i, "outcome \"" + outcome.label +
                                     "\" dimension mismatch"});
            dims_ok = false;
            break;
          }
          sum += outcome.basis_vector * outcome.basis_vector.adjoint();
        }
        if (dims_ok && max_abs_diff(sum, identity_matrix(dim)) > 1e-9)
          out.push_back({2, i, "measurement outcomes are not complete"});
        break;
      }
      case NodeKind::Oracle:
        break;  // arity known only once a box is bound
    }
  }

  for (const auto& edge : c.feedback_edges) {
    out.push_back(
        {3, edge.to_node,
         "wire " + std::to_string(edge.wire) + " fed from node " +
             std::to_string(edge.from_node) + " back to node " +
             std::to_string(edge.to_node) + " (loop)"});
  }
  return out;
}

}  // namespace

ValidationReport validate_circuit(const CircuitDescription& c,
                                  const OracleBudget& budget) {
  ValidationReport report;
  report.violations = structural_violations(c);

  for (const auto& [id, used] : oracle_use_counts(c)) {
    int allowed = budget.allowed(id);
    if (used > allowed)
      report.violations.push_back(
          {4, -1, "oracle \"" + id + "\" called " + std::to_string(used) +
                      " times with budget " + std::to_string(allowed)});
  }
  report.pass = report.violations.empty();
  return report;
}

ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<int>& wires, int wire_count) {
  int k = static_cast<int>(wires.size());
  Eigen::Index op_dim = Eigen::Index(1) << k;
  if (op.rows() != op_dim || op.cols() != op_dim)
    throw std::invalid_argument("embed_operator: operator dim mismatch");
  std::set<int> distinct(wires.begin(), wires.end());
  if (static_cast<int>(distinct.size()) != k)
    throw std::invalid_argument("embed_operator: repeated wires");
  for (int w : wires)
    if (w < 0 || w >= wire_count)
      throw std::invalid_argument("embed_operator: wire out of range");

  Eigen::Index dim = Eigen::Index(1) << wire_count;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index j = 0;
    for (int t = 0; t < k; ++t)
      j = (j << 1) | bit_of(col, wires[t], wire_count);
    for (Eigen::Index jp = 0; jp < op_dim; ++jp) {
      Complex val = op(jp, j);
      if (val == Complex(0.0, 0.0)) continue;
      Eigen::Index row = col;
      for (int t = 0; t < k; ++t)
        row = with_bit(row, wires[t],
                       static_cast<int>((jp >> (k - 1 - t)) & 1), wire_count);
      out(row, col) += val;
    }
  }
  return out;
}

ComplexVector partial_inner(const ComplexVector& state, int wire_count,
                            const std::vector<int>& wires,
                            const ComplexVector& chi) {
  int k = static_cast<int>(wires.size());
  if (state.size() != (Eigen::Index(1) << wire_count))
    throw std::invalid_argument("partial_inner: state dim mismatch");
  if (chi.size() != (Eigen::Index(1) << k))
    throw std::invalid_argument("partial_inner: contraction dim mismatch");

  std::vector<int> remaining;
  std::set<int> contracted(wires.begin(), wires.end());
  for (int w = 0; w < wire_count; ++w)
    if (!contracted.count(w)) remaining.push_back(w);
  int r = static_cast<int>(remaining.size());

  ComplexVector out = ComplexVector::Zero(Eigen::Index(1) << r);
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    Eigen::Index j = 0;
    for (int t = 0; t < k; ++t)
      j = (j << 1) | bit_of(i, wires[t], wire_count);
    Eigen::Index rest = 0;
    for (int t = 0; t < r; ++t)
      rest = (rest << 1) | bit_of(i, remaining[t], wire_count);
    out(rest) += std::conj(chi(j)) * state(i);
  }
  return out;
}

namespace {

void require_structurally_valid(const CircuitDescription& c) {
  auto violations = structural_violations(c);
  if (!violations.empty())
    throw std::invalid_argument("invalid circuit: rule " +
                                std::to_string(violations.front().rule) +
                                ": " + violations.front().message);
}

const KrausChannel& bound_oracle(const OracleBindings& bindings,
                                 const CircuitNode& node) {
  auto it = bindings.find(node.name);
  if (it == bindings.end())
    throw std::invalid_argument("oracle \"" + node.name + "\" is not bound");
  if (it->second.input_qubits != it->second.output_qubits ||
      it->second.input_qubits != static_cast<int>(node.wires.size()))
    throw std::invalid_argument("oracle \"" + node.name +
                                "\" does not fit its wires");
  return it->second;
}

// The local unitary a non-measurement node applies to its wires.
ComplexMatrix node_unitary(const CircuitNode& node,
                           const OracleBindings& bindings) {
  switch (node.kind) {
    case NodeKind::Gate:
      return node.name.empty() ? node.matrix : gate_matrix(node.name);
    case NodeKind::Prep:
      return prep_unitary(named_prep_state(node.name));
    case NodeKind::Oracle: {
      const KrausChannel& ch = bound_oracle(bindings, node);
      if (ch.kraus_ops.size() != 1 || !is_unitary(ch.kraus_ops.front(), 1e-9))
        throw std::invalid_argument("oracle \"" + node.name +
                                    "\" is not unitary");
      return ch.kraus_ops.front();
    }
    case NodeKind::Measure:
      break;
  }
  throw std::invalid_argument("node has no unitary action");
}

const ProjectorOutcome& find_outcome(const CircuitNode& node,
                                     const std::string& label) {
  for (const auto& outcome : node.outcomes)
    if (outcome.label == label) return outcome;
  if (label == "E") {
    // Alias for the all-PHI+ Bell outcome (the paper's projector E).
    for (const auto& outcome : node.outcomes)
      if (outcome.label.find("PHI+") == 0 &&
          outcome.label.find("PHI-") == std::string::npos &&
          outcome.label.find("PSI") == std::string::npos)
        return outcome;
  }
  throw std::invalid_argument("unknown outcome label \"" + label + "\"");
}

}  // namespace

PureState simulate_pure(const CircuitDescription& c, const PureState& input,
                        const OracleBindings& bindings) {
  require_structurally_valid(c);
  if (input.qubit_count != c.wire_count)
    throw std::invalid_argument("simulate_pure: input dimension mismatch");
  ComplexVector state = input.amplitudes;
  for (const auto& node : c.nodes) {
    if (node.kind == NodeKind::Measure)
      throw std::invalid_argument(
          "simulate_pure: circuit contains a measurement node");
    ComplexMatrix u = node_unitary(node, bindings);
    if (node.kind == NodeKind::Gate && node.name.empty() &&
        !is_unitary(u, 1e-9))
      throw std::invalid_argument("simulate_pure: non-unitary inline gate");
    state = embed_operator(u, node.wires, c.wire_count) * state;
  }
  PureState out;
  out.qubit_count = c.wire_count;
  out.amplitudes = std::move(state);
  return out;
}

DensityMatrix simulate_density(const CircuitDescription& c,
                               const DensityMatrix& input,
                               const OracleBindings& bindings) {
  require_structurally_valid(c);
  if (input.dim() != (Eigen::Index(1) << c.wire_count))
    throw std::invalid_argument("simulate_density: input dimension mismatch");
  ComplexMatrix rho = input.matrix;
  bool normalized = input.normalized;
  for (const auto& node : c.nodes) {
    if (node.kind == NodeKind::Measure) {
      // Unselected measurement: sum of all projected branches.
      ComplexMatrix next = ComplexMatrix::Zero(rho.rows(), rho.cols());
      for (const auto& outcome : node.outcomes) {
        ComplexMatrix proj = embed_operator(
            ComplexMatrix(outcome.basis_vector * outcome.basis_vector.adjoint()),
            node.wires, c.wire_count);
        next += proj * rho * proj;
      }
      rho = std::move(next);
    } else if (node.kind == NodeKind::Oracle) {
      const KrausChannel& ch = bound_oracle(bindings, node);
      ComplexMatrix next = ComplexMatrix::Zero(rho.rows(), rho.cols());
      for (const auto& k : ch.kraus_ops) {
        ComplexMatrix lifted = embed_operator(k, node.wires, c.wire_count);
        next += lifted * rho * lifted.adjoint();
      }
      normalized = normalized && ch.deterministic;
      rho = std::move(next);
    } else {
      ComplexMatrix u = embed_operator(node_unitary(node, bindings),
                                       node.wires, c.wire_count);
      rho = u * rho * u.adjoint();
    }
  }
  return DensityMatrix{std::move(rho), normalized};
}

namespace {

const CircuitNode& single_measurement(const CircuitDescription& c,
                                      int* index_out) {
  int found = -1;
  for (size_t i = 0; i < c.nodes.size(); ++i)
    if (c.nodes[i].kind == NodeKind::Measure) {
      if (found >= 0)
        throw std::invalid_argument("circuit has more than one measurement");
      found = static_cast<int>(i);
    }
  if (found < 0)
    throw std::invalid_argument("circuit has no measurement node");
  if (index_out) *index_out = found;
  return c.nodes[found];
}

}  // namespace

PostselectionResult simulate_with_postselection(
    const CircuitDescription& c, const DensityMatrix& input,
    const std::string& outcome_label, const OracleBindings& bindings) {
  require_structurally_valid(c);
  int measure_index = 0;
  const CircuitNode& measure = single_measurement(c, &measure_index);
  const ProjectorOutcome& outcome = find_outcome(measure, outcome_label);

  auto apply_node = [&](ComplexMatrix& rho, const CircuitNode& node) {
    if (node.kind == NodeKind::Oracle) {
      const KrausChannel& ch = bound_oracle(bindings, node);
      ComplexMatrix next = ComplexMatrix::Zero(rho.rows(), rho.cols());
      for (const auto& k : ch.kraus_ops) {
        ComplexMatrix lifted = embed_operator(k, node.wires, c.wire_count);
        next += lifted * rho * lifted.adjoint();
      }
      rho = std::move(next);
    } else {
      ComplexMatrix u = embed_operator(node_unitary(node, bindings),
                                       node.wires, c.wire_count);
      rho = u * rho * u.adjoint();
    }
  };

  ComplexMatrix rho = input.matrix;
  for (int i = 0; i < measure_index; ++i) apply_node(rho, c.nodes[i]);

  ComplexMatrix proj = embed_operator(
      ComplexMatrix(outcome.basis_vector * outcome.basis_vector.adjoint()),
      measure.wires, c.wire_count);
  rho = proj * rho * proj;
  double probability = rho.trace().real();

  PostselectionResult result;
  result.probability = std::max(probability, 0.0);
  if (probability < kZeroProbabilityTol) {
    result.zero_probability = true;
    result.probability = 0.0;
    return result;
  }
  rho /= probability;

  for (size_t i = measure_index + 1; i < c.nodes.size(); ++i)
    apply_node(rho, c.nodes[i]);
  result.state = DensityMatrix{std::move(rho), true};
  return result;
}

PurePostselection postselect_pure(const CircuitDescription& c,
                                  const PureState& input,
                                  const std::string& outcome_label,
                                  const OracleBindings& bindings) {
  require_structurally_valid(c);
  int measure_index = 0;
  const CircuitNode& measure = single_measurement(c, &measure_index);
  if (measure_index != static_cast<int>(c.nodes.size()) - 1)
    throw std::invalid_argument(
        "postselect_pure: measurement must be the final node");
  const ProjectorOutcome& outcome = find_outcome(measure, outcome_label);

  CircuitDescription prefix = c;
  prefix.nodes.pop_back();
  PureState evolved = simulate_pure(prefix, input, bindings);

  ComplexVector contracted = partial_inner(evolved.amplitudes, c.wire_count,
                                           measure.wires, outcome.basis_vector);
  double probability = contracted.squaredNorm();

  PurePostselection result;
  std::set<int> measured(measure.wires.begin(), measure.wires.end());
  for (int w = 0; w < c.wire_count; ++w)
    if (!measured.count(w)) result.unmeasured_wires.push_back(w);
  result.probability = probability;
  if (probability < kZeroProbabilityTol) {
    result.zero_probability = true;
    result.probability = 0.0;
    return result;
  }
  result.state.qubit_count =
      c.wire_count - static_cast<int>(measure.wires.size());
  result.state.amplitudes = contracted / std::sqrt(probability);
  return result;
}

std::vector<std::pair<std::string, double>> outcome_distribution(
    const CircuitDescription& c, const PureState& input,
    const OracleBindings& bindings) {
  require_structurally_valid(c);
  int measure_index = 0;
  const CircuitNode& measure = single_measurement(c, &measure_index);
  if (measure_index != static_cast<int>(c.nodes.size()) - 1)
    throw std::invalid_argument(
        "outcome_distribution: measurement must be the final node");

  CircuitDescription prefix = c;
  prefix.nodes.pop_back();
  PureState evolved = simulate_pure(prefix, input, bindings);

  std::vector<std::pair<std::string, double>> dist;
  dist.reserve(measure.outcomes.size());
  for (const auto& outcome : measure.outcomes) {
    ComplexVector contracted = partial_inner(
        evolved.amplitudes, c.wire_count, measure.wires, outcome.basis_vector);
    dist.emplace_back(outcome.label, contracted.squaredNorm());
  }
  return dist;
}

std::map<std::string, long> sample_outcomes(const CircuitDescription& c,
                                            const PureState& input, long shots,
                                            std::uint64_t seed,
                                            const OracleBindings& bindings) {
  if (shots <= 0)
    throw std::invalid_argument("sample_outcomes: shots must be positive");
  auto dist = outcome_distribution(c, input, bindings);

  std::map<std::string, long> counts;
  for (const auto& [label, p] : dist) counts[label] = 0;
  for (long shot = 0; shot < shots; ++shot) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(shot)));
    double u = uniform01(rng);
    double acc = 0.0;
    size_t pick = dist.size() - 1;
    for (size_t i = 0; i < dist.size(); ++i) {
      acc += dist[i].second;
      if (u < acc) {
        pick = i;
        break;
      }
    }
    ++counts[dist[pick].first];
  }
  return counts;
}

}  // namespace switchsim
