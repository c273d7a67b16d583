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
#include <vector>

#include "switchsim/diagnostics.hpp"
#include "switchsim/report_json.hpp"

namespace switchsim {

// Registered scenarios, each mapping to one named experiment.
const std::vector<std::string>& scenario_registry();

struct ScenarioSpec {
  std::string name;
  Json params;  // validated, defaults applied (seed 0, shots 0, tol 1e-10)
};

// Parses and validates a JSON scenario file. Throws DiagnosticError on
// syntax errors, unknown scenarios, missing or invalid parameters.
ScenarioSpec parse_scenario(const std::string& text);

// Executes the scenario; deterministic for a fixed (spec, seed). The result
// document carries echoed parameters, numeric results, pass/fail verdicts,
// the generator name and seed, and the artifact version.
Json run_scenario(const ScenarioSpec& spec);

}  // namespace switchsim
