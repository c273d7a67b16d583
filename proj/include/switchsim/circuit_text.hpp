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

#include "switchsim/circuit.hpp"
#include "switchsim/diagnostics.hpp"

namespace switchsim {

// Circuit text format, one node per line:
//
//   # comment
//   wires 4
//   prep PHI+ 2 3
//   gate CSWAP 0 1 2
//   oracle f 1
//   measure BELL 2 3
//
// parse -> serialize -> parse is a fixed point; serialization is bit-exact.
CircuitDescription parse_circuit(const std::string& text);
std::string serialize_circuit(const CircuitDescription& c);

}  // namespace switchsim
