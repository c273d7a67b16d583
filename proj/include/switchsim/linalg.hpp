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

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace switchsim {

using Complex = std::complex<double>;

// Dense row-major complex matrix; the universal carrier for states, gates
// and Choi representations. Every dimension in this project is small
// (<= 2^10), so dense storage everywhere.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

inline constexpr double kDefaultTol = 1e-10;

ComplexMatrix identity_matrix(Eigen::Index dim);
ComplexMatrix dagger(const ComplexMatrix& m);
bool has_finite_entries(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kDefaultTol);

// Kronecker product; subsystem 0 is the leftmost (most significant) factor.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_unitary(const ComplexMatrix& m, double tol = kDefaultTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);

// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
double min_hermitian_eigenvalue(const ComplexMatrix& m);

// Number of qubits for a power-of-two dimension; throws otherwise.
int qubit_count_for_dim(Eigen::Index dim);

struct PureState {
  ComplexVector amplitudes;
  int qubit_count = 0;

  Eigen::Index dim() const { return amplitudes.size(); }

  // Validates unit norm (tolerance 1e-10) and finiteness.
  static PureState from_amplitudes(ComplexVector amps,
                                   double tol = kDefaultTol);
  static PureState basis_state(int qubit_count, Eigen::Index index);
};

PureState tensor(const PureState& a, const PureState& b);
Complex inner(const PureState& a, const PureState& b);

struct DensityMatrix {
  ComplexMatrix matrix;
  // Post-selected branches may carry trace < 1; they set normalized = false.
  bool normalized = true;

  Eigen::Index dim() const { return matrix.rows(); }
};

// Validates hermiticity, positivity and trace (1 when normalized, in (0, 1]
// otherwise) before wrapping.
DensityMatrix make_density(ComplexMatrix m, bool normalized = true,
                           double tol = kDefaultTol);
DensityMatrix density_from_pure(const PureState& psi);
double purity(const DensityMatrix& rho);

// Partial trace over the subsystems not listed in `keep`; `dims` lists the
// subsystem dimensions left to right (subsystem 0 = most significant).
ComplexMatrix partial_trace_matrix(const ComplexMatrix& m,
                                   const std::vector<int>& dims,
                                   const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& dims,
                            const std::vector<int>& keep);

// (1/2) * sum of absolute eigenvalues of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// <psi| rho |psi>.
double fidelity_with_pure(const DensityMatrix& rho, const PureState& psi);

}  // namespace switchsim
