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

#include "switchsim/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace switchsim {

ComplexMatrix identity_matrix(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

bool has_finite_entries(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  return max_abs(a - b);
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() == 0 || b.size() == 0)
    throw std::invalid_argument("tensor: empty operand");
  if (!has_finite_entries(a) || !has_finite_entries(b))
    throw std::invalid_argument("tensor: non-finite entries");
  ComplexMatrix out = Eigen::kroneckerProduct(a, b);
  return out;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("is_unitary: matrix must be square");
  ComplexMatrix gram = m.adjoint() * m;
  return max_abs_diff(gram, identity_matrix(m.rows())) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("is_hermitian: matrix must be square");
  return max_abs(ComplexMatrix(m - m.adjoint())) <= tol;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  auto ev = hermitian_eigenvalues(m);
  return *std::min_element(ev.begin(), ev.end());
}

int qubit_count_for_dim(Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    if (d % 2 != 0)
      throw std::invalid_argument("dimension is not a power of two");
    d /= 2;
    ++n;
  }
  return n;
}

PureState PureState::from_amplitudes(ComplexVector amps, double tol) {
  PureState psi;
  psi.qubit_count = qubit_count_for_dim(amps.size());
  double norm2 = amps.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > tol)
    throw std::invalid_argument("PureState: squared norm deviates from 1 by " +
                                std::to_string(std::abs(norm2 - 1.0)));
  psi.amplitudes = std::move(amps);
  return psi;
}

PureState PureState::basis_state(int qubit_count, Eigen::Index index) {
  Eigen::Index dim = Eigen::Index(1) << qubit_count;
  if (index < 0 || index >= dim)
    throw std::invalid_argument("basis_state: index out of range");
  PureState psi;
  psi.qubit_count = qubit_count;
  psi.amplitudes = ComplexVector::Zero(dim);
  psi.amplitudes(index) = 1.0;
  return psi;
}

PureState tensor(const PureState& a, const PureState& b) {
  PureState out;
  out.qubit_count = a.qubit_count + b.qubit_count;
  out.amplitudes = ComplexVector(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    for (Eigen::Index j = 0; j < b.dim(); ++j)
      out.amplitudes(i * b.dim() + j) = a.amplitudes(i) * b.amplitudes(j);
  return out;
}

Complex inner(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dim mismatch");
  return a.amplitudes.dot(b.amplitudes);  // Eigen's dot conjugates the lhs
}

DensityMatrix make_density(ComplexMatrix m, bool normalized, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  qubit_count_for_dim(m.rows());
  if (!has_finite_entries(m))
    throw std::invalid_argument("DensityMatrix: non-finite entries");
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("DensityMatrix: not Hermitian within tol");
  double min_eig = min_hermitian_eigenvalue(m);
  if (min_eig < -tol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(min_eig));
  double tr = m.trace().real();
  if (normalized) {
    if (std::abs(tr - 1.0) > tol)
      throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                  std::to_string(std::abs(tr - 1.0)));
  } else {
    if (tr <= 0.0 || tr > 1.0 + tol)
      throw std::invalid_argument(
          "DensityMatrix: subnormalized trace out of (0, 1]");
  }
  return DensityMatrix{std::move(m), normalized};
}

DensityMatrix density_from_pure(const PureState& psi) {
  ComplexMatrix m = psi.amplitudes * psi.amplitudes.adjoint();
  return DensityMatrix{std::move(m), true};
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix * rho.matrix).trace().real();
}

namespace {

// Digits of `index` in the mixed-radix system given by dims, subsystem 0
// most significant.
void decompose_index(Eigen::Index index, const std::vector<int>& dims,
                     std::vector<int>& digits) {
  digits.resize(dims.size());
  for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
    digits[s] = static_cast<int>(index % dims[s]);
    index /= dims[s];
  }
}

}  // namespace

ComplexMatrix partial_trace_matrix(const ComplexMatrix& m,
                                   const std::vector<int>& dims,
                                   const std::vector<int>& keep) {
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("partial_trace: bad dimension");
    total *= d;
  }
  if (m.rows() != m.cols() || m.rows() != total)
    throw std::invalid_argument(
        "partial_trace: dims do not factor the matrix dimension");
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw std::invalid_argument("partial_trace: keep index out of range");
    if (kept[k]) throw std::invalid_argument("partial_trace: duplicate keep");
    kept[k] = true;
  }

  Eigen::Index out_dim = 1;
  for (size_t s = 0; s < dims.size(); ++s)
    if (kept[s]) out_dim *= dims[s];

  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  std::vector<int> ri, ci;
  for (Eigen::Index r = 0; r < total; ++r) {
    decompose_index(r, dims, ri);
    for (Eigen::Index c = 0; c < total; ++c) {
      decompose_index(c, dims, ci);
      bool diagonal_on_traced = true;
      for (size_t s = 0; s < dims.size(); ++s)
        if (!kept[s] && ri[s] != ci[s]) {
          diagonal_on_traced = false;
          break;
        }
      if (!diagonal_on_traced) continue;
      Eigen::Index ro = 0, co = 0;
      for (size_t s = 0; s < dims.size(); ++s)
        if (kept[s]) {
          ro = ro * dims[s] + ri[s];
          co = co * dims[s] + ci[s];
        }
      out(ro, co) += m(r, c);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  ComplexMatrix reduced = partial_trace_matrix(rho.matrix, dims, keep);
  return DensityMatrix{std::move(reduced), rho.normalized};
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  ComplexMatrix diff = rho.matrix - sigma.matrix;
  double sum = 0.0;
  for (double ev : hermitian_eigenvalues(diff)) sum += std::abs(ev);
  return 0.5 * sum;
}

double fidelity_with_pure(const DensityMatrix& rho, const PureState& psi) {
  if (rho.dim() != psi.dim())
    throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
  Complex val = (psi.amplitudes.adjoint() * rho.matrix * psi.amplitudes)(0, 0);
  return val.real();
}

}  // namespace switchsim
