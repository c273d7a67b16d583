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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "switchsim/scenario.hpp"
#include "switchsim/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"switchsim: scenario runner for switch-of-boxes experiments"};
  app.set_version_flag("--version", switchsim::kArtifactVersion);

  std::string scenario_path;
  std::string out_path;
  std::uint64_t seed = 0;
  long shots = 0;
  double tol = 0.0;

  app.add_option("--scenario", scenario_path, "Scenario file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_path,
                 "Report output file (default: standard output)");
  auto* seed_opt = app.add_option("--seed", seed, "Override the scenario seed");
  auto* shots_opt =
      app.add_option("--shots", shots, "Override the scenario shot count");
  auto* tol_opt =
      app.add_option("--tol", tol, "Override the scenario tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(scenario_path);
    if (!in) {
      std::cerr << "error kind=io file=" << scenario_path
                << " message=cannot open scenario file\n";
      return 1;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    switchsim::ScenarioSpec spec = switchsim::parse_scenario(buffer.str());
    if (seed_opt->count() > 0) spec.params["seed"] = seed;
    if (shots_opt->count() > 0) spec.params["shots"] = shots;
    if (tol_opt->count() > 0) spec.params["tol"] = tol;

    switchsim::Json report = switchsim::run_scenario(spec);
    std::string rendered = switchsim::render_report(report);

    if (out_path.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error kind=io file=" << out_path
                  << " message=cannot open output file\n";
        return 1;
      }
      out << rendered;
    }
    return 0;
  } catch (const switchsim::DiagnosticError& e) {
    std::cerr << "error kind=" << e.kind() << " line=" << e.line()
              << " column=" << e.column() << " message=" << e.detail() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error kind=internal message=" << e.what() << "\n";
    return 1;
  }
}
