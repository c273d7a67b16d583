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
#include <string>

#include "switchsim/channels.hpp"
#include "switchsim/linalg.hpp"

namespace switchsim {

// Composition convention used throughout: "f then g" is the channel that
// applies f first, so its matrix is U_g * U_f. Control labeling: x = 1 means
// "f then g" (f occupies slot 1 of the two-slot oracle).

struct ControlBit {
  int value = 0;
  static ControlBit of(int value);
};

// Control qubit state alpha|0> + beta|1>; a classical bit x embeds as
// alpha = 1 (x = 0) or beta = 1 (x = 1).
struct ControlState {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  static ControlState of(Complex alpha, Complex beta,
                         double tol = kDefaultTol);
  static ControlState from_bit(ControlBit x);
  static ControlState plus();

  PureState to_state() const;
  double weight_one() const;   // |<1|phi>|^2
  double weight_zero() const;  // |<0|phi>|^2
};

// The switch-of-boxes function: x = 1 -> "f then g", x = 0 -> "g then f".
UnitaryBox switch_compose(ControlBit x, const UnitaryBox& f,
                          const UnitaryBox& g);
KrausChannel switch_compose(ControlBit x, const KrausChannel& f,
                            const KrausChannel& g);

// Classically controlled two-slot oracle:
//   |<1|phi>|^2 (U_f rho1 U_f^dag (x) U_g rho2 U_g^dag)
// + |<0|phi>|^2 (U_g rho1 U_g^dag (x) U_f rho2 U_f^dag).
// The control is consumed; the output lives on the two slots.
DensityMatrix classical_oracle(const UnitaryBox& f, const UnitaryBox& g,
                               const ControlState& phi,
                               const DensityMatrix& rho1,
                               const DensityMatrix& rho2);

// Quantum-controlled unitary on control (x) slot1 (x) slot2:
// c = 1 block is U_f (x) U_g, c = 0 block is U_g (x) U_f.
UnitaryBox quantum_control_unitary(const UnitaryBox& f, const UnitaryBox& g);

// Wire-contracted form on control (x) target:
// |1><1| (x) U_g U_f + |0><0| (x) U_f U_g.
UnitaryBox switched_unitary(const UnitaryBox& f, const UnitaryBox& g);

// Kraus extension: S_ij = |1><1| (x) G_j F_i + |0><0| (x) F_i G_j.
KrausChannel switched_channel(const KrausChannel& f, const KrausChannel& g);

// The two-slot classical oracle as a channel (control dephased and
// consumed): 2N+1 qubits in, 2N qubits out.
KrausChannel classical_oracle_channel(const KrausChannel& f,
                                      const KrausChannel& g);

// Applies quantum_control_unitary to phi (x) rho1 (x) rho2 and discards the
// control; equals classical_oracle under the unified control convention.
DensityMatrix reduce_to_classical(const UnitaryBox& f, const UnitaryBox& g,
                                  const ControlState& phi,
                                  const DensityMatrix& rho1,
                                  const DensityMatrix& rho2);

struct AdmissibilityReport {
  std::string construction;
  int trials = 0;
  bool all_cptp = false;
  double max_completeness_deviation = 0.0;
  double min_choi_eigenvalue = 0.0;
  bool linearity_ok = false;
  double max_linearity_deviation = 0.0;
  bool local_ok = false;
  double max_local_deviation = 0.0;
  std::uint64_t seed = 0;
};

// construction is "switched_channel" or "classical_oracle". Checks, over
// random CPTP pairs: outputs are CPTP, the construction is linear under
// convex mixtures, and local application to one part of a non-signaling
// bipartite box stays CPTP.
AdmissibilityReport admissibility_check(const std::string& construction,
                                        int trials, std::uint64_t seed);

}  // namespace switchsim
