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

#include "switchsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "switchsim/realizations.hpp"
#include "switchsim/version.hpp"

namespace switchsim {

const std::vector<std::string>& scenario_registry() {
  static const std::vector<std::string> registry{
      "switch",        "two_call",    "teleport",      "separation",
      "noswitch_witness", "nonsignaling", "admissibility", "reduce_check"};
  return registry;
}

namespace {

struct KeyRule {
  std::set<std::string> required;
  std::set<std::string> optional;
};

const std::map<std::string, KeyRule>& key_rules() {
  static const std::map<std::string, KeyRule> rules{
      {"switch", {{"x", "f", "g"}, {"psi", "form"}}},
      {"two_call", {{"f", "g", "x"}, {"n", "psi"}}},
      {"teleport", {{"f", "g"}, {"phi", "psi"}}},
      {"separation", {{"f", "g"}, {}}},
      {"noswitch_witness", {{"box_choice"}, {}}},
      {"nonsignaling", {{"box"}, {}}},
      {"admissibility", {{"construction"}, {"trials"}}},
      {"reduce_check", {{"f", "g"}, {"phi", "trials"}}},
  };
  return rules;
}

void compute_position(const std::string& text, size_t byte, int* line,
                      int* column) {
  *line = 1;
  *column = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++*line;
      *column = 1;
    } else {
      ++*column;
    }
  }
}

UnitaryBox unitary_param(const Json& params, const std::string& key) {
  const Json& v = params.at(key);
  if (v.is_string()) {
    std::string name = v.get<std::string>();
    if (!is_known_gate(name))
      throw DiagnosticError("validation error", 0, 0,
                            "parameter \"" + key + "\": unknown gate \"" +
                                name + "\"");
    return make_unitary_box(gate_matrix(name));
  }
  if (v.is_array()) {
    try {
      return make_unitary_box(matrix_from_json(v));
    } catch (const std::invalid_argument& e) {
      throw DiagnosticError("validation error", 0, 0,
                            "parameter \"" + key + "\": " + e.what());
    }
  }
  throw DiagnosticError("validation error", 0, 0,
                        "parameter \"" + key +
                            "\" must be a gate name or an inline matrix");
}

ControlState control_param(const Json& params, const std::string& key,
                           const ControlState& fallback) {
  if (!params.contains(key)) return fallback;
  const Json& v = params.at(key);
  try {
    if (v.is_string()) {
      std::string name = v.get<std::string>();
      if (name == "0" || name == "zero") return ControlState::from_bit(ControlBit::of(0));
      if (name == "1" || name == "one") return ControlState::from_bit(ControlBit::of(1));
      if (name == "plus" || name == "+") return ControlState::plus();
      if (name == "minus" || name == "-") {
        const double s = 1.0 / std::sqrt(2.0);
        return ControlState::of(Complex(s, 0), Complex(-s, 0));
      }
      throw std::invalid_argument("unknown control state \"" + name + "\"");
    }
    ComplexVector amps = vector_from_json(v);
    if (amps.size() != 2)
      throw std::invalid_argument("control state must have 2 amplitudes");
    return ControlState::of(amps(0), amps(1));
  } catch (const std::invalid_argument& e) {
    throw DiagnosticError("validation error", 0, 0,
                          "parameter \"" + key + "\": " + e.what());
  }
}

PureState pure_param(const Json& params, const std::string& key, int qubits) {
  if (!params.contains(key)) return PureState::basis_state(qubits, 0);
  try {
    PureState psi = PureState::from_amplitudes(vector_from_json(params.at(key)));
    if (psi.qubit_count != qubits)
      throw std::invalid_argument("state has " +
                                  std::to_string(psi.qubit_count) +
                                  " qubits, expected " + std::to_string(qubits));
    return psi;
  } catch (const std::invalid_argument& e) {
    throw DiagnosticError("validation error", 0, 0,
                          "parameter \"" + key + "\": " + e.what());
  }
}

// A channel is a named id, an inline unitary matrix, or a Kraus family
// given as a list of matrices (one nesting level deeper).
KrausChannel channel_param(const Json& v, const std::string& key) {
  try {
    if (v.is_string()) return named_channel(v.get<std::string>());
    if (v.is_array() && !v.empty()) {
      const Json& probe = v.front();
      bool is_kraus_list = probe.is_array() && !probe.empty() &&
                           probe.front().is_array() &&
                           !probe.front().empty() &&
                           probe.front().front().is_array();
      if (is_kraus_list) {
        std::vector<ComplexMatrix> ops;
        for (const Json& mat : v) ops.push_back(matrix_from_json(mat));
        return make_channel(std::move(ops));
      }
      return channel_from_unitary(make_unitary_box(matrix_from_json(v)));
    }
  } catch (const std::invalid_argument& e) {
    throw DiagnosticError("validation error", 0, 0,
                          "parameter \"" + key + "\": " + e.what());
  }
  throw DiagnosticError("validation error", 0, 0,
                        "parameter \"" + key +
                            "\" must be a channel id, an inline matrix, or a "
                            "list of Kraus matrices");
}

double real_or(const Json& params, const std::string& key, double fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_number())
    throw DiagnosticError("validation error", 0, 0,
                          "parameter \"" + key + "\" must be a number");
  return params.at(key).get<double>();
}

long integer_or(const Json& params, const std::string& key, long fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_number_integer() &&
      !params.at(key).is_number_unsigned())
    throw DiagnosticError("validation error", 0, 0,
                          "parameter \"" + key + "\" must be an integer");
  return params.at(key).get<long>();
}

std::string all_phi_plus_label(int pairs) {
  std::string label;
  for (int p = 0; p < pairs; ++p) {
    if (p > 0) label += ",";
    label += "PHI+";
  }
  return label;
}

}  // namespace

ScenarioSpec parse_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 0, column = 0;
    compute_position(text, e.byte > 0 ? e.byte - 1 : 0, &line, &column);
    throw DiagnosticError("syntax error", line, column, e.what());
  }
  if (!doc.is_object())
    throw DiagnosticError("validation error", 0, 0,
                          "scenario file must be a JSON object");
  if (doc.contains("format_version") &&
      doc.at("format_version").get<int>() != kFormatVersion)
    throw DiagnosticError("validation error", 0, 0,
                          "unsupported format_version");
  if (!doc.contains("scenario") || !doc.at("scenario").is_string())
    throw DiagnosticError("validation error", 0, 0,
                          "missing required parameter \"scenario\"");

  ScenarioSpec spec;
  spec.name = doc.at("scenario").get<std::string>();
  const auto& registry = scenario_registry();
  if (std::find(registry.begin(), registry.end(), spec.name) == registry.end()) {
    std::string names;
    for (const auto& n : registry) names += (names.empty() ? "" : ", ") + n;
    throw DiagnosticError("unknown scenario", 0, 0,
                          "\"" + spec.name + "\" is not registered (known: " +
                              names + ")");
  }

  const KeyRule& rule = key_rules().at(spec.name);
  static const std::set<std::string> common{"scenario", "format_version",
                                            "seed", "shots", "tol"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!common.count(key) && !rule.required.count(key) &&
        !rule.optional.count(key))
      throw DiagnosticError("validation error", 0, 0,
                            "unknown parameter \"" + key + "\" for scenario \"" +
                                spec.name + "\"");
  }
  for (const auto& key : rule.required)
    if (!doc.contains(key))
      throw DiagnosticError("validation error", 0, 0,
                            "missing required parameter \"" + key +
                                "\" for scenario \"" + spec.name + "\"");

  spec.params = doc;
  spec.params.erase("scenario");
  spec.params.erase("format_version");
  if (!spec.params.contains("seed")) spec.params["seed"] = 0;
  if (!spec.params.contains("shots")) spec.params["shots"] = 0;
  if (!spec.params.contains("tol")) spec.params["tol"] = 1e-10;

  // Validate unitary slots eagerly so malformed boxes fail at parse time.
  for (const std::string key : {"f", "g"})
    if ((rule.required.count(key) || rule.optional.count(key)) &&
        spec.params.contains(key))
      unitary_param(spec.params, key);
  return spec;
}

namespace {

void run_switch(const Json& params, double tol, Json& results, Json& verdicts) {
  UnitaryBox f = unitary_param(params, "f");
  UnitaryBox g = unitary_param(params, "g");
  ControlBit x = ControlBit::of(static_cast<int>(integer_or(params, "x", 0)));

  // "form" picks the construction: the plain composition (default), the
  // coherently controlled block unitary, or its wire-contracted version.
  std::string form = params.contains("form")
                         ? params.at("form").get<std::string>()
                         : "compose";
  UnitaryBox built;
  if (form == "compose") {
    built = switch_compose(x, f, g);
  } else if (form == "quantum_control") {
    built = quantum_control_unitary(f, g);
  } else if (form == "switched") {
    built = switched_unitary(f, g);
  } else {
    throw DiagnosticError("validation error", 0, 0,
                          "parameter \"form\": unknown construction \"" +
                              form + "\"");
  }

  ComplexMatrix gram = built.matrix.adjoint() * built.matrix;
  double deviation = max_abs_diff(gram, identity_matrix(gram.rows()));
  results["form"] = form;
  results["unitarity_deviation"] = deviation;
  results["matrix"] = matrix_to_json(built.matrix);
  if (params.contains("psi") && form == "compose") {
    PureState psi = pure_param(params, "psi", built.qubit_count);
    results["output_state"] =
        vector_to_json(ComplexVector(built.matrix * psi.amplitudes));
  }
  verdicts["unitary"] = deviation <= tol;
}

void run_two_call(const Json& params, double tol, Json& results,
                  Json& verdicts) {
  UnitaryBox f = unitary_param(params, "f");
  UnitaryBox g = unitary_param(params, "g");
  int n = static_cast<int>(integer_or(params, "n", f.qubit_count));
  if (n != f.qubit_count || n != g.qubit_count)
    throw DiagnosticError("validation error", 0, 0,
                          "boxes do not act on n qubits");
  ControlBit x = ControlBit::of(static_cast<int>(integer_or(params, "x", 1)));
  PureState psi = pure_param(params, "psi", n);

  CircuitDescription circuit = two_call_circuit("f", "g", n);
  auto uses = oracle_use_counts(circuit);
  results["oracle_calls_f"] = uses["f"];
  results["oracle_calls_g"] = uses["g"];
  ValidationReport validation = validate_circuit(
      circuit, OracleBudget::of({{"f", 2}, {"g", 2}}));

  OracleBindings bindings{{"f", channel_from_unitary(f)},
                          {"g", channel_from_unitary(g)}};
  PureState input = tensor(tensor(ControlState::from_bit(x).to_state(), psi),
                           PureState::basis_state(n, 0));
  PureState output = simulate_pure(circuit, input, bindings);

  std::vector<int> dims(2 * n + 1, 2);
  std::vector<int> middle;
  for (int q = 0; q < n; ++q) middle.push_back(1 + q);
  DensityMatrix reduced = DensityMatrix{
      partial_trace_matrix(
          ComplexMatrix(output.amplitudes * output.amplitudes.adjoint()), dims,
          middle),
      true};

  UnitaryBox expected_box = switch_compose(x, f, g);
  PureState expected = PureState::from_amplitudes(
      ComplexVector(expected_box.matrix * psi.amplitudes));
  double distance = trace_distance(reduced, density_from_pure(expected));

  results["trace_distance"] = distance;
  results["validation_pass"] = validation.pass;
  verdicts["matches_switch"] = distance <= tol;
  verdicts["budget_respected"] = validation.pass;
}

void run_teleport(const Json& params, double tol, std::uint64_t seed,
                  long shots, Json& results, Json& verdicts) {
  UnitaryBox f = unitary_param(params, "f");
  UnitaryBox g = unitary_param(params, "g");
  if (f.qubit_count != g.qubit_count)
    throw DiagnosticError("validation error", 0, 0,
                          "boxes act on different qubit counts");
  int n = f.qubit_count;
  ControlState phi = control_param(params, "phi", ControlState::plus());
  PureState psi = pure_param(params, "psi", n);

  PostselectedResult tele = teleport_switch(f, g, phi, psi, shots, seed);
  double expected = success_probability(n);
  results["success_probability"] = tele.success_probability;
  results["expected_probability"] = expected;
  double deviation = std::abs(tele.success_probability - expected);
  results["probability_deviation"] = deviation;
  results["conditional_state"] = matrix_to_json(tele.conditional_state.matrix);
  verdicts["probability_matches"] = deviation <= tol;

  if (tele.has_shots) {
    std::string e_label = all_phi_plus_label(n);
    long hits = tele.shots_record.count(e_label) ? tele.shots_record.at(e_label)
                                                 : 0;
    double freq = static_cast<double>(hits) / static_cast<double>(shots);
    double sigma = std::sqrt(expected * (1.0 - expected) /
                             static_cast<double>(shots));
    results["shots"] = shots;
    results["sampled_e_frequency"] = freq;
    verdicts["sampled_frequency_consistent"] =
        std::abs(freq - expected) <= 5.0 * sigma;
  }
}

void run_separation(const Json& params, double tol, Json& results,
                    Json& verdicts) {
  UnitaryBox f = unitary_param(params, "f");
  UnitaryBox g = unitary_param(params, "g");
  SeparationReport rep = separation_experiment(f, g);
  results["quantum_p_minus"] = rep.quantum_p_minus;
  results["quantum_p_plus"] = rep.quantum_p_plus;
  results["classical_p_minus"] = rep.classical_p_minus;
  results["classical_p_plus"] = rep.classical_p_plus;
  results["state_distance"] = rep.state_distance;
  results["predicted_quantum_p_minus"] = rep.predicted_quantum_p_minus;
  verdicts["quantum_matches_prediction"] =
      std::abs(rep.quantum_p_minus - rep.predicted_quantum_p_minus) <= tol;
  verdicts["classical_uniform"] =
      std::abs(rep.classical_p_minus - 0.5) <= tol;
}

void run_witness(const Json& params, double tol, Json& results,
                 Json& verdicts) {
  std::string choice = params.at("box_choice").get<std::string>();
  WitnessReport rep = loop_contraction_witness(choice, tol);
  results["max_trace_deviation"] = rep.max_trace_deviation;
  results["worst_probe"] = rep.worst_probe;
  results["unscaled_completeness_deviation"] =
      rep.unscaled_completeness_deviation;
  verdicts["normalization_violated"] = rep.normalization_violated;
  verdicts["unscaled_trace_preserving"] =
      rep.unscaled_completeness_deviation <= tol;
}

void run_nonsignaling(const Json& params, double tol, Json& results,
                      Json& verdicts) {
  const Json& box_spec = params.at("box");
  BipartiteBox box;
  if (box_spec.is_object()) {
    if (!box_spec.contains("a") || !box_spec.contains("b"))
      throw DiagnosticError("validation error", 0, 0,
                            "product box needs \"a\" and \"b\" parts");
    KrausChannel a = channel_param(box_spec.at("a"), "box.a");
    KrausChannel b = channel_param(box_spec.at("b"), "box.b");
    box = BipartiteBox{tensor_channels(a, b), a.input_qubits, b.input_qubits};
  } else {
    KrausChannel joint = channel_param(box_spec, "box");
    if (joint.input_qubits != 2)
      throw DiagnosticError("validation error", 0, 0,
                            "joint box must act on two qubits");
    box = BipartiteBox{std::move(joint), 1, 1};
  }
  NonSignalingReport rep = check_non_signaling(box, tol);
  results["a_to_b_deviation"] = rep.a_to_b_deviation;
  results["b_to_a_deviation"] = rep.b_to_a_deviation;
  verdicts["non_signaling"] = rep.non_signaling;
}

void run_admissibility(const Json& params, std::uint64_t seed, Json& results,
                       Json& verdicts) {
  std::string construction = params.at("construction").get<std::string>();
  int trials = static_cast<int>(integer_or(params, "trials", 100));
  AdmissibilityReport rep = admissibility_check(construction, trials, seed);
  results["trials"] = rep.trials;
  results["max_completeness_deviation"] = rep.max_completeness_deviation;
  results["min_choi_eigenvalue"] = rep.min_choi_eigenvalue;
  results["max_linearity_deviation"] = rep.max_linearity_deviation;
  results["max_local_deviation"] = rep.max_local_deviation;
  verdicts["all_cptp"] = rep.all_cptp;
  verdicts["linearity_ok"] = rep.linearity_ok;
  verdicts["local_ok"] = rep.local_ok;
}

void run_reduce_check(const Json& params, double tol, std::uint64_t seed,
                      Json& results, Json& verdicts) {
  UnitaryBox f = unitary_param(params, "f");
  UnitaryBox g = unitary_param(params, "g");
  ControlState phi = control_param(params, "phi", ControlState::plus());
  int trials = static_cast<int>(integer_or(params, "trials", 10));
  if (trials < 1)
    throw DiagnosticError("validation error", 0, 0, "trials must be positive");

  double max_distance = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    DensityMatrix rho1 = random_density(f.qubit_count, rng);
    DensityMatrix rho2 = random_density(f.qubit_count, rng);
    DensityMatrix lhs = reduce_to_classical(f, g, phi, rho1, rho2);
    DensityMatrix rhs = classical_oracle(f, g, phi, rho1, rho2);
    max_distance = std::max(max_distance, trace_distance(lhs, rhs));
  }
  results["trials"] = trials;
  results["max_trace_distance"] = max_distance;
  verdicts["reduction_matches"] = max_distance <= tol;
}

}  // namespace

Json run_scenario(const ScenarioSpec& spec) {
  double tol = real_or(spec.params, "tol", 1e-10);
  long shots = integer_or(spec.params, "shots", 0);
  std::uint64_t seed = 0;
  if (spec.params.contains("seed")) {
    if (!spec.params.at("seed").is_number_integer() &&
        !spec.params.at("seed").is_number_unsigned())
      throw DiagnosticError("validation error", 0, 0,
                            "parameter \"seed\" must be an integer");
    seed = spec.params.at("seed").get<std::uint64_t>();
  }

  Json results = Json::object();
  Json verdicts = Json::object();
  try {
    if (spec.name == "switch") {
      run_switch(spec.params, tol, results, verdicts);
    } else if (spec.name == "two_call") {
      run_two_call(spec.params, tol, results, verdicts);
    } else if (spec.name == "teleport") {
      run_teleport(spec.params, tol, seed, shots, results, verdicts);
    } else if (spec.name == "separation") {
      run_separation(spec.params, tol, results, verdicts);
    } else if (spec.name == "noswitch_witness") {
      run_witness(spec.params, tol, results, verdicts);
    } else if (spec.name == "nonsignaling") {
      run_nonsignaling(spec.params, tol, results, verdicts);
    } else if (spec.name == "admissibility") {
      run_admissibility(spec.params, seed, results, verdicts);
    } else if (spec.name == "reduce_check") {
      run_reduce_check(spec.params, tol, seed, results, verdicts);
    } else {
      throw DiagnosticError("unknown scenario", 0, 0, spec.name);
    }
  } catch (const DiagnosticError&) {
    throw;
  } catch (const std::exception& e) {
    throw DiagnosticError("scenario error", 0, 0,
                          "scenario \"" + spec.name + "\": " + e.what());
  }

  Json report = Json::object();
  report["format_version"] = kFormatVersion;
  report["artifact_version"] = kArtifactVersion;
  report["scenario"] = spec.name;
  report["generator"] = kGeneratorName;
  report["seed"] = seed;

  Json echoed = Json::object();
  std::vector<std::string> keys;
  for (const auto& [key, value] : spec.params.items()) {
    (void)value;
    keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  for (const auto& key : keys) echoed[key] = spec.params.at(key);
  report["parameters"] = std::move(echoed);
  report["results"] = std::move(results);
  report["verdicts"] = std::move(verdicts);
  return report;
}

}  // namespace switchsim
