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

#include "switchsim/higher_order.hpp"

#include <cmath>
#include <stdexcept>

#include "switchsim/circuit.hpp"

namespace switchsim {

ControlBit ControlBit::of(int value) {
  if (value != 0 && value != 1)
    throw std::invalid_argument("ControlBit: value must be 0 or 1");
  return ControlBit{value};
}

ControlState ControlState::of(Complex alpha, Complex beta, double tol) {
  double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > tol)
    throw std::invalid_argument("ControlState: |alpha|^2 + |beta|^2 != 1");
  return ControlState{alpha, beta};
}

ControlState ControlState::from_bit(ControlBit x) {
  return x.value == 1 ? ControlState{Complex(0, 0), Complex(1, 0)}
                      : ControlState{Complex(1, 0), Complex(0, 0)};
}

ControlState ControlState::plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return ControlState{Complex(s, 0), Complex(s, 0)};
}

PureState ControlState::to_state() const {
  ComplexVector v(2);
  v << alpha, beta;
  PureState psi;
  psi.qubit_count = 1;
  psi.amplitudes = std::move(v);
  return psi;
}

double ControlState::weight_one() const { return std::norm(beta); }
double ControlState::weight_zero() const { return std::norm(alpha); }

namespace {

void require_same_arity(int fa, int ga, const char* what) {
  if (fa != ga)
    throw std::invalid_argument(std::string(what) +
                                ": boxes act on different qubit counts");
}

}  // namespace

UnitaryBox switch_compose(ControlBit x, const UnitaryBox& f,
                          const UnitaryBox& g) {
  require_same_arity(f.qubit_count, g.qubit_count, "switch_compose");
  // x = 1: f then g (matrix U_g U_f); x = 0: g then f.
  ComplexMatrix m =
      (x.value == 1) ? ComplexMatrix(g.matrix * f.matrix)
                     : ComplexMatrix(f.matrix * g.matrix);
  return UnitaryBox{std::move(m), f.qubit_count};
}

KrausChannel switch_compose(ControlBit x, const KrausChannel& f,
                            const KrausChannel& g) {
  require_same_arity(f.input_qubits, g.input_qubits, "switch_compose");
  const KrausChannel& first = (x.value == 1) ? f : g;
  const KrausChannel& second = (x.value == 1) ? g : f;
  std::vector<ComplexMatrix> ops;
  for (const auto& a : second.kraus_ops)
    for (const auto& b : first.kraus_ops) ops.push_back(a * b);
  return make_channel(std::move(ops), f.deterministic && g.deterministic);
}

DensityMatrix classical_oracle(const UnitaryBox& f, const UnitaryBox& g,
                               const ControlState& phi,
                               const DensityMatrix& rho1,
                               const DensityMatrix& rho2) {
  require_same_arity(f.qubit_count, g.qubit_count, "classical_oracle");
  if (rho1.dim() != f.matrix.rows() || rho2.dim() != f.matrix.rows())
    throw std::invalid_argument("classical_oracle: state dimension mismatch");
  ComplexMatrix f1 = f.matrix * rho1.matrix * f.matrix.adjoint();
  ComplexMatrix g2 = g.matrix * rho2.matrix * g.matrix.adjoint();
  ComplexMatrix g1 = g.matrix * rho1.matrix * g.matrix.adjoint();
  ComplexMatrix f2 = f.matrix * rho2.matrix * f.matrix.adjoint();
  ComplexMatrix out =
      phi.weight_one() * tensor(f1, g2) + phi.weight_zero() * tensor(g1, f2);
  return DensityMatrix{std::move(out), rho1.normalized && rho2.normalized};
}

UnitaryBox quantum_control_unitary(const UnitaryBox& f, const UnitaryBox& g) {
  require_same_arity(f.qubit_count, g.qubit_count, "quantum_control_unitary");
  Eigen::Index block = f.matrix.rows() * g.matrix.rows();
  ComplexMatrix w = ComplexMatrix::Zero(2 * block, 2 * block);
  w.topLeftCorner(block, block) = tensor(g.matrix, f.matrix);      // c = 0
  w.bottomRightCorner(block, block) = tensor(f.matrix, g.matrix);  // c = 1
  return UnitaryBox{std::move(w), 2 * f.qubit_count + 1};
}

UnitaryBox switched_unitary(const UnitaryBox& f, const UnitaryBox& g) {
  require_same_arity(f.qubit_count, g.qubit_count, "switched_unitary");
  Eigen::Index d = f.matrix.rows();
  ComplexMatrix s = ComplexMatrix::Zero(2 * d, 2 * d);
  s.topLeftCorner(d, d) = f.matrix * g.matrix;      // c = 0: g then f
  s.bottomRightCorner(d, d) = g.matrix * f.matrix;  // c = 1: f then g
  return UnitaryBox{std::move(s), f.qubit_count + 1};
}

KrausChannel switched_channel(const KrausChannel& f, const KrausChannel& g) {
  require_same_arity(f.input_qubits, g.input_qubits, "switched_channel");
  if (!f.deterministic || !g.deterministic)
    throw std::invalid_argument("switched_channel: inputs must be CPTP");
  if (f.input_qubits != f.output_qubits || g.input_qubits != g.output_qubits)
    throw std::invalid_argument("switched_channel: boxes must be square");
  Eigen::Index d = f.kraus_ops.front().rows();
  std::vector<ComplexMatrix> ops;
  ops.reserve(f.kraus_ops.size() * g.kraus_ops.size());
  for (const auto& fi : f.kraus_ops)
    for (const auto& gj : g.kraus_ops) {
      ComplexMatrix s = ComplexMatrix::Zero(2 * d, 2 * d);
      s.topLeftCorner(d, d) = fi * gj;
      s.bottomRightCorner(d, d) = gj * fi;
      ops.push_back(std::move(s));
    }
  return make_channel(std::move(ops));
}

KrausChannel classical_oracle_channel(const KrausChannel& f,
                                      const KrausChannel& g) {
  require_same_arity(f.input_qubits, g.input_qubits,
                     "classical_oracle_channel");
  if (!f.deterministic || !g.deterministic)
    throw std::invalid_argument("classical_oracle_channel: inputs must be CPTP");
  Eigen::Index d = f.kraus_ops.front().rows();
  Eigen::Index slots = d * d;

  // <x| (x) I on control (x) slot1 (x) slot2.
  auto control_selector = [&](int x) {
    ComplexMatrix sel = ComplexMatrix::Zero(slots, 2 * slots);
    for (Eigen::Index s = 0; s < slots; ++s) sel(s, x * slots + s) = 1.0;
    return sel;
  };
  ComplexMatrix sel0 = control_selector(0);
  ComplexMatrix sel1 = control_selector(1);

  std::vector<ComplexMatrix> ops;
  for (const auto& fi : f.kraus_ops)
    for (const auto& gj : g.kraus_ops) {
      ops.push_back(tensor(fi, gj) * sel1);  // x = 1: f on slot 1, g on slot 2
      ops.push_back(tensor(gj, fi) * sel0);  // x = 0: slots exchanged
    }
  return make_channel(std::move(ops));
}

DensityMatrix reduce_to_classical(const UnitaryBox& f, const UnitaryBox& g,
                                  const ControlState& phi,
                                  const DensityMatrix& rho1,
                                  const DensityMatrix& rho2) {
  UnitaryBox w = quantum_control_unitary(f, g);
  PureState control = phi.to_state();
  ComplexMatrix control_rho =
      control.amplitudes * control.amplitudes.adjoint();
  ComplexMatrix joint =
      tensor(tensor(control_rho, rho1.matrix), rho2.matrix);
  ComplexMatrix evolved = w.matrix * joint * w.matrix.adjoint();
  int d = static_cast<int>(rho1.dim());
  ComplexMatrix reduced = partial_trace_matrix(evolved, {2, d, d}, {1, 2});
  return DensityMatrix{std::move(reduced), rho1.normalized && rho2.normalized};
}

namespace {

// Local application on part A of a bipartite box: the box plays the f slot
// with its B leg riding along untouched by g.
KrausChannel switched_channel_local(const KrausChannel& box, int qubits_a,
                                    const KrausChannel& g) {
  int qubits_b = box.input_qubits - qubits_a;
  Eigen::Index da = Eigen::Index(1) << qubits_a;
  Eigen::Index db = Eigen::Index(1) << qubits_b;
  std::vector<ComplexMatrix> ops;
  for (const auto& ci : box.kraus_ops)
    for (const auto& gj : g.kraus_ops) {
      ComplexMatrix g_ext = tensor(gj, identity_matrix(db));
      ComplexMatrix s = ComplexMatrix::Zero(2 * da * db, 2 * da * db);
      s.topLeftCorner(da * db, da * db) = ci * g_ext;
      s.bottomRightCorner(da * db, da * db) = g_ext * ci;
      ops.push_back(std::move(s));
    }
  return make_channel(std::move(ops));
}

// Same for the two-slot classical oracle; systems are ordered
// control (x) slot1 (x) slot2 (x) extB, and the box acts on (slot1, extB)
// in the x = 1 branch and (slot2, extB) in the x = 0 branch.
KrausChannel classical_oracle_channel_local(const KrausChannel& box,
                                            int qubits_a,
                                            const KrausChannel& g) {
  int qubits_b = box.input_qubits - qubits_a;
  int total = 1 + qubits_a + qubits_a + qubits_b;
  Eigen::Index slots_dim = Eigen::Index(1) << (total - 1);

  std::vector<int> slot1_wires, slot2_wires, ext_wires;
  for (int q = 0; q < qubits_a; ++q) slot1_wires.push_back(q);
  for (int q = 0; q < qubits_a; ++q) slot2_wires.push_back(qubits_a + q);
  for (int q = 0; q < qubits_b; ++q) ext_wires.push_back(2 * qubits_a + q);

  auto selector = [&](int x) {
    ComplexMatrix sel = ComplexMatrix::Zero(slots_dim, 2 * slots_dim);
    for (Eigen::Index s = 0; s < slots_dim; ++s) sel(s, x * slots_dim + s) = 1.0;
    return sel;
  };
  ComplexMatrix sel0 = selector(0);
  ComplexMatrix sel1 = selector(1);

  std::vector<ComplexMatrix> ops;
  for (const auto& ci : box.kraus_ops)
    for (const auto& gj : g.kraus_ops) {
      std::vector<int> box_on_slot1 = slot1_wires;
      box_on_slot1.insert(box_on_slot1.end(), ext_wires.begin(),
                          ext_wires.end());
      std::vector<int> box_on_slot2 = slot2_wires;
      box_on_slot2.insert(box_on_slot2.end(), ext_wires.begin(),
                          ext_wires.end());
      ComplexMatrix branch1 = embed_operator(ci, box_on_slot1, total - 1) *
                              embed_operator(gj, slot2_wires, total - 1);
      ComplexMatrix branch0 = embed_operator(ci, box_on_slot2, total - 1) *
                              embed_operator(gj, slot1_wires, total - 1);
      ops.push_back(branch1 * sel1);
      ops.push_back(branch0 * sel0);
    }
  return make_channel(std::move(ops));
}

double choi_linearity_deviation(const KrausChannel& mixed,
                                const KrausChannel& a, const KrausChannel& b,
                                double lambda) {
  ComplexMatrix lhs = choi_matrix(mixed);
  ComplexMatrix rhs =
      lambda * choi_matrix(a) + (1.0 - lambda) * choi_matrix(b);
  return max_abs_diff(lhs, rhs);
}

}  // namespace

AdmissibilityReport admissibility_check(const std::string& construction,
                                        int trials, std::uint64_t seed) {
  bool switched = construction == "switched_channel";
  if (!switched && construction != "classical_oracle")
    throw std::invalid_argument("admissibility_check: unknown construction \"" +
                                construction + "\"");
  if (trials < 1)
    throw std::invalid_argument("admissibility_check: trials must be positive");

  auto build = [&](const KrausChannel& f, const KrausChannel& g) {
    return switched ? switched_channel(f, g) : classical_oracle_channel(f, g);
  };

  AdmissibilityReport report;
  report.construction = construction;
  report.trials = trials;
  report.seed = seed;
  report.min_choi_eigenvalue = 0.0;
  bool all_cptp = true, linear = true, local = true;

  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    KrausChannel f = random_cptp_channel(1, rng);
    KrausChannel g = random_cptp_channel(1, rng);

    CptpReport cptp = verify_cptp(build(f, g));
    report.max_completeness_deviation = std::max(
        report.max_completeness_deviation, cptp.completeness_deviation);
    report.min_choi_eigenvalue =
        std::min(report.min_choi_eigenvalue, cptp.choi_min_eigenvalue);
    all_cptp = all_cptp && cptp.pass;

    KrausChannel f2 = random_cptp_channel(1, rng);
    double lambda = uniform01(rng);
    double lin_dev = choi_linearity_deviation(
        build(mix_channels(f, f2, lambda), g), build(f, g), build(f2, g),
        lambda);
    report.max_linearity_deviation =
        std::max(report.max_linearity_deviation, lin_dev);
    linear = linear && lin_dev <= kCptpTol;

    // Non-signaling bipartite box: a product of two random CPTP channels.
    KrausChannel box =
        tensor_channels(random_cptp_channel(1, rng), random_cptp_channel(1, rng));
    KrausChannel local_ch = switched
                                ? switched_channel_local(box, 1, g)
                                : classical_oracle_channel_local(box, 1, g);
    CptpReport local_cptp = verify_cptp(local_ch);
    report.max_local_deviation = std::max(report.max_local_deviation,
                                          local_cptp.completeness_deviation);
    local = local && local_cptp.pass;
  }

  report.all_cptp = all_cptp;
  report.linearity_ok = linear;
  report.local_ok = local;
  return report;
}

}  // namespace switchsim
