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

#include "switchsim/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace switchsim {

UnitaryBox make_unitary_box(ComplexMatrix m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("UnitaryBox: matrix must be square");
  int qubits = qubit_count_for_dim(m.rows());
  ComplexMatrix gram = m.adjoint() * m;
  double dev = max_abs_diff(gram, identity_matrix(m.rows()));
  if (dev > tol)
    throw std::invalid_argument("UnitaryBox: unitarity deviation " +
                                std::to_string(dev) + " exceeds tolerance");
  return UnitaryBox{std::move(m), qubits};
}

KrausChannel make_channel(std::vector<ComplexMatrix> ops, bool deterministic,
                          double tol) {
  if (ops.empty())
    throw std::invalid_argument("KrausChannel: empty Kraus family");
  Eigen::Index rows = ops.front().rows();
  Eigen::Index cols = ops.front().cols();
  for (const auto& k : ops) {
    if (k.rows() != rows || k.cols() != cols)
      throw std::invalid_argument("KrausChannel: inconsistent Kraus shapes");
    if (!has_finite_entries(k))
      throw std::invalid_argument("KrausChannel: non-finite entries");
  }
  KrausChannel ch;
  ch.output_qubits = qubit_count_for_dim(rows);
  ch.input_qubits = qubit_count_for_dim(cols);
  ch.deterministic = deterministic;
  ch.kraus_ops = std::move(ops);

  ComplexMatrix sum = ComplexMatrix::Zero(cols, cols);
  for (const auto& k : ch.kraus_ops) sum += k.adjoint() * k;
  if (deterministic) {
    double dev = max_abs_diff(sum, identity_matrix(cols));
    if (dev > tol)
      throw std::invalid_argument(
          "KrausChannel: completeness sum deviates from identity by " +
          std::to_string(dev));
  } else {
    // Instrument element: I - sum K^dag K must be PSD.
    double min_eig =
        min_hermitian_eigenvalue(ComplexMatrix(identity_matrix(cols) - sum));
    if (min_eig < -tol)
      throw std::invalid_argument(
          "KrausChannel: instrument element exceeds identity");
  }
  return ch;
}

KrausChannel channel_from_unitary(const UnitaryBox& u) {
  return make_channel({u.matrix}, true);
}

ComplexMatrix apply_channel_matrix(const KrausChannel& ch,
                                   const ComplexMatrix& m) {
  if (m.rows() != ch.input_dim() || m.cols() != ch.input_dim())
    throw std::invalid_argument("apply_channel: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(ch.output_dim(), ch.output_dim());
  for (const auto& k : ch.kraus_ops) out += k * m * k.adjoint();
  return out;
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  ComplexMatrix out = apply_channel_matrix(ch, rho.matrix);
  bool normalized = rho.normalized && ch.deterministic;
  return make_density(std::move(out), normalized,
                      normalized ? kCptpTol : kDefaultTol);
}

ComplexMatrix choi_matrix(const KrausChannel& ch) {
  Eigen::Index din = ch.input_dim();
  Eigen::Index dout = ch.output_dim();
  ComplexMatrix choi = ComplexMatrix::Zero(dout * din, dout * din);
  for (const auto& k : ch.kraus_ops) {
    // Row-major flattening of K is exactly (K (x) I) applied to sum_i |ii>.
    ComplexVector v(dout * din);
    for (Eigen::Index a = 0; a < dout; ++a)
      for (Eigen::Index i = 0; i < din; ++i) v(a * din + i) = k(a, i);
    choi += v * v.adjoint();
  }
  return choi;
}

CptpReport verify_cptp(const KrausChannel& ch, double tol) {
  CptpReport report;
  ComplexMatrix sum =
      ComplexMatrix::Zero(ch.input_dim(), ch.input_dim());
  for (const auto& k : ch.kraus_ops) sum += k.adjoint() * k;
  report.completeness_deviation =
      max_abs_diff(sum, identity_matrix(ch.input_dim()));
  report.choi_min_eigenvalue = min_hermitian_eigenvalue(choi_matrix(ch));
  report.pass = report.completeness_deviation <= tol &&
                report.choi_min_eigenvalue >= -tol;
  return report;
}

namespace {

// Matrix unit |a><a'| of dimension d.
ComplexMatrix matrix_unit(Eigen::Index d, Eigen::Index a, Eigen::Index ap) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(a, ap) = 1.0;
  return e;
}

// Deviation from "inputs of `signaler` cannot influence outputs of the other
// part". signaler = 0 checks A -> B, signaler = 1 checks B -> A.
double signaling_deviation(const BipartiteBox& box, int signaler) {
  Eigen::Index da = Eigen::Index(1) << box.qubits_a;
  Eigen::Index db = Eigen::Index(1) << box.qubits_b;
  Eigen::Index ds = (signaler == 0) ? da : db;  // far input being varied
  Eigen::Index dr = (signaler == 0) ? db : da;  // receiver
  std::vector<int> dims{static_cast<int>(da), static_cast<int>(db)};
  std::vector<int> keep{signaler == 0 ? 1 : 0};

  double dev = 0.0;
  for (Eigen::Index r = 0; r < dr; ++r)
    for (Eigen::Index rp = 0; rp < dr; ++rp) {
      // Reduced receiver output for every matrix unit on the signaler side;
      // non-signaling demands delta_{s,sp} times a block independent of s.
      std::vector<ComplexMatrix> blocks;
      for (Eigen::Index s = 0; s < ds; ++s)
        for (Eigen::Index sp = 0; sp < ds; ++sp) {
          ComplexMatrix in =
              (signaler == 0)
                  ? tensor(matrix_unit(da, s, sp), matrix_unit(db, r, rp))
                  : tensor(matrix_unit(da, r, rp), matrix_unit(db, s, sp));
          ComplexMatrix reduced =
              partial_trace_matrix(apply_channel_matrix(box.channel, in),
                                   dims, keep);
          if (s != sp) {
            dev = std::max(dev, max_abs(reduced));
          } else {
            blocks.push_back(reduced);
          }
        }
      // Pairwise comparison so the reported deviation matches a direct
      // two-input probe (state in, state in, compare outputs).
      for (size_t i = 0; i + 1 < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
          dev = std::max(dev, max_abs_diff(blocks[i], blocks[j]));
    }
  return dev;
}

}  // namespace

NonSignalingReport check_non_signaling(const BipartiteBox& box, double tol) {
  if (box.qubits_a + box.qubits_b != box.channel.input_qubits ||
      box.channel.input_qubits != box.channel.output_qubits)
    throw std::invalid_argument("BipartiteBox: part sizes do not match channel");
  NonSignalingReport report;
  report.a_to_b_deviation = signaling_deviation(box, 0);
  report.b_to_a_deviation = signaling_deviation(box, 1);
  report.a_to_b_ok = report.a_to_b_deviation <= tol;
  report.b_to_a_ok = report.b_to_a_deviation <= tol;
  report.non_signaling = report.a_to_b_ok && report.b_to_a_ok;
  return report;
}

bool is_non_signaling(const BipartiteBox& box, double tol) {
  return check_non_signaling(box, tol).non_signaling;
}

ComplexMatrix dephase_qubit_matrix(const ComplexMatrix& m, int qubit_index) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("dephase_qubit: matrix must be square");
  int n = qubit_count_for_dim(m.rows());
  if (qubit_index < 0 || qubit_index >= n)
    throw std::out_of_range("dephase_qubit: qubit index out of range");
  int shift = n - 1 - qubit_index;  // qubit 0 is the most significant bit
  ComplexMatrix out = m;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (((r >> shift) & 1) != ((c >> shift) & 1)) out(r, c) = 0.0;
  return out;
}

DensityMatrix dephase_qubit(const DensityMatrix& rho, int qubit_index) {
  return DensityMatrix{dephase_qubit_matrix(rho.matrix, qubit_index),
                       rho.normalized};
}

namespace {

ComplexMatrix build_gate(const std::string& name) {
  const Complex i(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  if (name == "I") {
    return identity_matrix(2);
  } else if (name == "X") {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
  } else if (name == "Y") {
    ComplexMatrix m(2, 2);
    m << 0, -i, i, 0;
    return m;
  } else if (name == "Z") {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
  } else if (name == "H") {
    ComplexMatrix m(2, 2);
    m << s, s, s, -s;
    return m;
  } else if (name == "S") {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, i;
    return m;
  } else if (name == "CNOT") {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
  } else if (name == "SWAP") {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return m;
  } else if (name == "CSWAP") {
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    for (Eigen::Index k = 0; k < 4; ++k) m(k, k) = 1.0;
    m(4, 4) = 1.0;      // |1 00> -> |1 00>
    m(5, 6) = 1.0;      // |1 10> -> |1 01>
    m(6, 5) = 1.0;      // |1 01> -> |1 10>
    m(7, 7) = 1.0;      // |1 11> -> |1 11>
    return m;
  }
  throw std::invalid_argument("unknown gate \"" + name + "\"");
}

}  // namespace

bool is_known_gate(const std::string& name) {
  return name == "I" || name == "X" || name == "Y" || name == "Z" ||
         name == "H" || name == "S" || name == "CNOT" || name == "SWAP" ||
         name == "CSWAP";
}

int gate_arity(const std::string& name) {
  if (name == "CNOT" || name == "SWAP") return 2;
  if (name == "CSWAP") return 3;
  if (is_known_gate(name)) return 1;
  throw std::invalid_argument("unknown gate \"" + name + "\"");
}

ComplexMatrix gate_matrix(const std::string& name) { return build_gate(name); }

KrausChannel bitflip_channel(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("bitflip: probability out of [0, 1]");
  return make_channel({std::sqrt(1.0 - p) * gate_matrix("I"),
                       std::sqrt(p) * gate_matrix("X")});
}

KrausChannel phaseflip_channel(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("phaseflip: probability out of [0, 1]");
  return make_channel({std::sqrt(1.0 - p) * gate_matrix("I"),
                       std::sqrt(p) * gate_matrix("Z")});
}

KrausChannel depolarizing_channel(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("depolarizing: probability out of [0, 1]");
  return make_channel({std::sqrt(1.0 - 0.75 * p) * gate_matrix("I"),
                       std::sqrt(0.25 * p) * gate_matrix("X"),
                       std::sqrt(0.25 * p) * gate_matrix("Y"),
                       std::sqrt(0.25 * p) * gate_matrix("Z")});
}

KrausChannel named_channel(const std::string& id) {
  auto paren = id.find('(');
  if (paren == std::string::npos) {
    if (!is_known_gate(id))
      throw std::invalid_argument("unknown channel \"" + id + "\"");
    return make_channel({gate_matrix(id)});
  }
  if (id.back() != ')')
    throw std::invalid_argument("malformed channel \"" + id + "\"");
  std::string family = id.substr(0, paren);
  std::string arg = id.substr(paren + 1, id.size() - paren - 2);
  double p = 0.0;
  try {
    size_t used = 0;
    p = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("channel \"" + id +
                                "\": cannot parse parameter \"" + arg + "\"");
  }
  if (family == "bitflip") return bitflip_channel(p);
  if (family == "phaseflip") return phaseflip_channel(p);
  if (family == "depolarizing") return depolarizing_channel(p);
  throw std::invalid_argument("unknown channel \"" + id + "\"");
}

ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      g(r, c) = Complex(standard_normal(rng), standard_normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (Eigen::Index c = 0; c < dim; ++c) {
    Complex d = r(c, c);
    double a = std::abs(d);
    q.col(c) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

UnitaryBox random_unitary_box(int qubits, Rng& rng) {
  return UnitaryBox{random_unitary(Eigen::Index(1) << qubits, rng), qubits};
}

KrausChannel random_cptp_channel(int qubits, Rng& rng) {
  Eigen::Index d = Eigen::Index(1) << qubits;
  Eigen::Index env = 4;
  ComplexMatrix u = random_unitary(d * env, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(env);
  for (Eigen::Index e = 0; e < env; ++e) {
    ComplexMatrix k(d, d);
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) k(a, b) = u(a * env + e, b * env);
    kraus.push_back(std::move(k));
  }
  return make_channel(std::move(kraus));
}

DensityMatrix random_density(int qubits, Rng& rng) {
  Eigen::Index big = Eigen::Index(1) << (2 * qubits);
  ComplexMatrix u = random_unitary(big, rng);
  ComplexVector psi = u.col(0);
  ComplexMatrix full = psi * psi.adjoint();
  std::vector<int> dims{static_cast<int>(Eigen::Index(1) << qubits),
                        static_cast<int>(Eigen::Index(1) << qubits)};
  ComplexMatrix reduced = partial_trace_matrix(full, dims, {0});
  return DensityMatrix{std::move(reduced), true};
}

KrausChannel mix_channels(const KrausChannel& a, const KrausChannel& b,
                          double lambda) {
  if (a.input_qubits != b.input_qubits || a.output_qubits != b.output_qubits)
    throw std::invalid_argument("mix_channels: dimension mismatch");
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("mix_channels: weight out of [0, 1]");
  std::vector<ComplexMatrix> ops;
  for (const auto& k : a.kraus_ops) ops.push_back(std::sqrt(lambda) * k);
  for (const auto& k : b.kraus_ops) ops.push_back(std::sqrt(1.0 - lambda) * k);
  return make_channel(std::move(ops), a.deterministic && b.deterministic);
}

KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> ops;
  for (const auto& ka : a.kraus_ops)
    for (const auto& kb : b.kraus_ops) ops.push_back(tensor(ka, kb));
  return make_channel(std::move(ops), a.deterministic && b.deterministic);
}

}  // namespace switchsim
