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

#include <doctest.h>

#include "switchsim/circuit_text.hpp"
#include "switchsim/realizations.hpp"
#include "switchsim/scenario.hpp"

using namespace switchsim;

namespace {

bool structurally_equal(const CircuitDescription& a,
                        const CircuitDescription& b) {
  if (a.wire_count != b.wire_count || a.nodes.size() != b.nodes.size())
    return false;
  for (size_t i = 0; i < a.nodes.size(); ++i) {
    const CircuitNode& na = a.nodes[i];
    const CircuitNode& nb = b.nodes[i];
    if (na.kind != nb.kind || na.name != nb.name || na.wires != nb.wires)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parse_circuit: one CNOT on a 2-wire header") {
  CircuitDescription c = parse_circuit("wires 2\ngate CNOT 0 1\n");
  CHECK(c.wire_count == 2);
  REQUIRE(c.nodes.size() == 1);
  CHECK(c.nodes.front().kind == NodeKind::Gate);
  CHECK(c.nodes.front().name == "CNOT");
}

TEST_CASE("parse_circuit: unknown gate names the token and the line") {
  try {
    parse_circuit("wires 2\ngate FROB 0\n");
    FAIL("expected a diagnostic");
  } catch (const DiagnosticError& e) {
    CHECK(e.kind() == "unknown gate");
    CHECK(e.line() == 2);
    CHECK(e.detail().find("FROB") != std::string::npos);
  }
}

TEST_CASE("parse_circuit: comments and blank lines are skipped") {
  CircuitDescription c = parse_circuit(
      "# header comment\nwires 3\n\ngate H 0  # trailing\nmeasure BELL 1 2\n");
  CHECK(c.wire_count == 3);
  CHECK(c.nodes.size() == 2);
  CHECK(c.nodes.back().kind == NodeKind::Measure);
}

TEST_CASE("parse_circuit: serialize of two_call round-trips structurally") {
  CircuitDescription original = two_call_circuit("f", "g", 2);
  std::string text = serialize_circuit(original);
  CircuitDescription reparsed = parse_circuit(text);
  CHECK(structurally_equal(original, reparsed));
  // Fixed point: a second round trip reproduces the bytes exactly.
  CHECK(serialize_circuit(reparsed) == text);
}

TEST_CASE("parse_circuit: teleport circuit round-trips too") {
  CircuitDescription original = teleport_circuit(1);
  CircuitDescription reparsed = parse_circuit(serialize_circuit(original));
  CHECK(structurally_equal(original, reparsed));
}

TEST_CASE("parse_circuit: random circuits survive a byte-exact round trip") {
  Rng rng = make_rng(70);
  static const char* gates[] = {"X", "Y", "Z", "H", "S"};
  for (int trial = 0; trial < 25; ++trial) {
    CircuitDescription c;
    c.wire_count = 4;
    int depth = 1 + static_cast<int>(rng() % 8);
    for (int d = 0; d < depth; ++d) {
      int w = static_cast<int>(rng() % 4);
      switch (rng() % 4) {
        case 0:
          c.nodes.push_back(gate_node(gates[rng() % 5], {w}));
          break;
        case 1:
          c.nodes.push_back(gate_node("CNOT", {w, (w + 1) % 4}));
          break;
        case 2:
          c.nodes.push_back(oracle_node("box" + std::to_string(rng() % 3), {w}));
          break;
        default:
          c.nodes.push_back(prep_node("PHI+", {w, (w + 2) % 4}));
      }
    }
    c.nodes.push_back(bell_measure_node({0, 2}));
    std::string text = serialize_circuit(c);
    CHECK(serialize_circuit(parse_circuit(text)) == text);
  }
}

TEST_CASE("parse_circuit: structured diagnostics for malformed inputs") {
  const char* corpus[] = {
      "",                                  // missing header
      "gates 2\n",                         // bad header keyword
      "wires\n",                           // missing count
      "wires 0\n",                         // empty register
      "wires two\n",                       // non-numeric count
      "wires 2 3\n",                       // extra token
      "wires 2\ngate\n",                   // gate without name
      "wires 2\ngate H\n",                 // gate without wires
      "wires 2\ngate H 0 1\n",             // arity mismatch
      "wires 2\ngate FROB 0\n",            // unknown gate
      "wires 2\ngate CNOT 0 x\n",          // bad wire token
      "wires 2\ngate CNOT 0 -1\n",         // negative wire
      "wires 2\noracle f\n",               // oracle without wires
      "wires 2\nprep NOPE 0\n",            // unknown preparation
      "wires 2\nprep PHI+ 0\n",            // preparation arity
      "wires 2\nmeasure BELL 0\n",         // measurement arity
      "wires 2\nmeasure BELL 0 1 0\n",     // odd wire count
      "wires 2\nmeasure PARITY 0 1\n",     // unknown measurement
      "wires 2\nfrobnicate 0\n",           // unknown directive
      "wires 2\nprep PHI+ 0 1 2\n",        // preparation arity again
  };
  for (const char* text : corpus) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_circuit(text), DiagnosticError);
    try {
      parse_circuit(text);
    } catch (const DiagnosticError& e) {
      CHECK_FALSE(e.kind().empty());
      CHECK(e.line() >= 1);
      CHECK_FALSE(e.detail().empty());
    }
  }
}

TEST_CASE("parse_circuit: format directive is accepted and versioned") {
  CircuitDescription c = parse_circuit("format 1\nwires 2\ngate H 0\n");
  CHECK(c.nodes.size() == 1);
  CHECK_THROWS_AS(parse_circuit("format 2\nwires 2\n"), DiagnosticError);
  CHECK_THROWS_AS(parse_circuit("wires 2\nformat 1\n"), DiagnosticError);
  // The serializer leads with the format line.
  CHECK(serialize_circuit(c).rfind("format 1\n", 0) == 0);
}

TEST_CASE("parse_scenario: defaults are applied") {
  ScenarioSpec spec = parse_scenario(
      R"({"scenario": "teleport", "f": "X", "g": "Z"})");
  CHECK(spec.name == "teleport");
  CHECK(spec.params.at("seed").get<int>() == 0);
  CHECK(spec.params.at("shots").get<int>() == 0);
  CHECK(spec.params.at("tol").get<double>() == 1e-10);
}

TEST_CASE("parse_scenario: unknown scenario is rejected with the registry") {
  try {
    parse_scenario(R"({"scenario": "frobnicate"})");
    FAIL("expected a diagnostic");
  } catch (const DiagnosticError& e) {
    CHECK(e.kind() == "unknown scenario");
    CHECK(e.detail().find("frobnicate") != std::string::npos);
    CHECK(e.detail().find("teleport") != std::string::npos);
  }
}

TEST_CASE("parse_scenario: missing required parameter is named") {
  try {
    parse_scenario(R"({"scenario": "separation", "f": "X"})");
    FAIL("expected a diagnostic");
  } catch (const DiagnosticError& e) {
    CHECK(e.detail().find("\"g\"") != std::string::npos);
  }
}

TEST_CASE("parse_scenario: non-unitary inline matrix cites the deviation") {
  try {
    parse_scenario(
        R"({"scenario": "separation", "f": [[[1,0],[0,0]],[[0,0],[0.5,0]]],
            "g": "Z"})");
    FAIL("expected a diagnostic");
  } catch (const DiagnosticError& e) {
    CHECK(e.kind() == "validation error");
    CHECK(e.detail().find("unitarity deviation") != std::string::npos);
  }
}

TEST_CASE("parse_scenario: structured diagnostics for malformed inputs") {
  const char* corpus[] = {
      "",                                             // empty input
      "{",                                            // truncated JSON
      "[1, 2]",                                       // not an object
      R"({"scenario": 7})",                           // wrong type
      R"({"gibberish": true})",                       // no scenario at all
      R"({"scenario": "unknown_thing"})",             // unknown scenario
      R"({"scenario": "teleport"})",                  // missing f and g
      R"({"scenario": "teleport", "f": "X"})",        // missing g
      R"({"scenario": "teleport", "f": "X", "g": "Z", "surprise": 1})",
      R"({"scenario": "teleport", "f": "FROB", "g": "Z"})",
      R"({"scenario": "teleport", "f": 17, "g": "Z"})",
      R"({"scenario": "noswitch_witness"})",          // missing box_choice
      R"({"scenario": "nonsignaling"})",              // missing box
      R"({"scenario": "admissibility"})",             // missing construction
      R"({"scenario": "switch", "f": "X", "g": "Z"})",            // missing x
      R"({"scenario": "two_call", "f": "X", "g": "Z"})",          // missing x
      R"({"scenario": "teleport", "f": "X", "g": "Z", "format_version": 2})",
      R"({"scenario": "teleport", "f": [[[2,0],[0,0]],[[0,0],[2,0]]], "g": "Z"})",
      R"({"scenario": "reduce_check", "f": "X"})",    // missing g
      R"({"scenario": "separation"})",                // missing both boxes
  };
  for (const char* text : corpus) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_scenario(text), DiagnosticError);
  }
}

TEST_CASE("run_scenario: teleport reports 0.25 and passes") {
  ScenarioSpec spec = parse_scenario(
      R"({"scenario": "teleport", "f": "X", "g": "Z", "phi": "plus"})");
  Json report = run_scenario(spec);
  CHECK(report.at("scenario") == "teleport");
  CHECK(report.at("generator") == "mt19937_64");
  CHECK(report.at("results").at("success_probability").get<double>() ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(report.at("verdicts").at("probability_matches").get<bool>());
}

TEST_CASE("run_scenario: separation of X and Z pins both distributions") {
  ScenarioSpec spec = parse_scenario(
      R"({"scenario": "separation", "f": "X", "g": "Z"})");
  Json report = run_scenario(spec);
  CHECK(report.at("results").at("quantum_p_minus").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.at("results").at("classical_p_minus").get<double>() ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(report.at("verdicts").at("quantum_matches_prediction").get<bool>());
}

TEST_CASE("run_scenario: witness scenario flags the violation") {
  ScenarioSpec spec = parse_scenario(
      R"({"scenario": "noswitch_witness", "box_choice": "identity"})");
  Json report = run_scenario(spec);
  CHECK(report.at("results").at("max_trace_deviation").get<double>() ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(report.at("verdicts").at("normalization_violated").get<bool>());
  CHECK(report.at("verdicts").at("unscaled_trace_preserving").get<bool>());
}

TEST_CASE("run_scenario: two_call scenario validates and matches") {
  ScenarioSpec spec = parse_scenario(
      R"({"scenario": "two_call", "f": "H", "g": "S", "x": 0})");
  Json report = run_scenario(spec);
  CHECK(report.at("results").at("oracle_calls_f").get<int>() == 2);
  CHECK(report.at("verdicts").at("matches_switch").get<bool>());
  CHECK(report.at("verdicts").at("budget_respected").get<bool>());
}

TEST_CASE("run_scenario: nonsignaling scenario accepts products, rejects CNOT") {
  Json product = run_scenario(parse_scenario(
      R"json({"scenario": "nonsignaling", "box": {"a": "H", "b": "bitflip(0.25)"}})json"));
  CHECK(product.at("verdicts").at("non_signaling").get<bool>());

  Json cnot = run_scenario(parse_scenario(
      R"({"scenario": "nonsignaling", "box": "CNOT"})"));
  CHECK_FALSE(cnot.at("verdicts").at("non_signaling").get<bool>());
  CHECK(cnot.at("results").at("a_to_b_deviation").get<double>() > 0.1);
}

TEST_CASE("run_scenario: switch scenario exposes every construction form") {
  Json composed = run_scenario(parse_scenario(
      R"({"scenario": "switch", "x": 0, "f": "X", "g": "Z"})"));
  CHECK(composed.at("verdicts").at("unitary").get<bool>());
  // x = 0 is "g then f", matrix X*Z = [[0,-1],[1,0]].
  ComplexMatrix m = matrix_from_json(composed.at("results").at("matrix"));
  ComplexMatrix expected(2, 2);
  expected << 0, -1, 1, 0;
  CHECK(max_abs_diff(m, expected) == 0.0);

  Json w = run_scenario(parse_scenario(
      R"({"scenario": "switch", "x": 0, "f": "X", "g": "Z",
          "form": "quantum_control"})"));
  CHECK(matrix_from_json(w.at("results").at("matrix")).rows() == 8);
  CHECK(w.at("verdicts").at("unitary").get<bool>());

  Json s = run_scenario(parse_scenario(
      R"({"scenario": "switch", "x": 0, "f": "X", "g": "Z",
          "form": "switched"})"));
  CHECK(matrix_from_json(s.at("results").at("matrix")).rows() == 4);

  CHECK_THROWS_AS(run_scenario(parse_scenario(
                      R"({"scenario": "switch", "x": 0, "f": "X", "g": "Z",
                          "form": "banana"})")),
                  DiagnosticError);
}

TEST_CASE("run_scenario: nonsignaling box accepts a Kraus-list part") {
  // bitflip(0.5) written out as its two Kraus matrices.
  const char* text = R"json({
    "scenario": "nonsignaling",
    "box": {
      "a": [[[[0.7071067811865476, 0], [0, 0]], [[0, 0], [0.7071067811865476, 0]]],
             [[[0, 0], [0.7071067811865476, 0]], [[0.7071067811865476, 0], [0, 0]]]],
      "b": "Z"
    }
  })json";
  Json report = run_scenario(parse_scenario(text));
  CHECK(report.at("verdicts").at("non_signaling").get<bool>());
}

TEST_CASE("run_scenario: reduce_check passes on random states") {
  Json report = run_scenario(parse_scenario(
      R"({"scenario": "reduce_check", "f": "H", "g": "S", "trials": 5})"));
  CHECK(report.at("verdicts").at("reduction_matches").get<bool>());
  CHECK(report.at("results").at("max_trace_distance").get<double>() <= 1e-10);
}

TEST_CASE("run_scenario: admissibility scenario passes both constructions") {
  Json switched = run_scenario(parse_scenario(
      R"({"scenario": "admissibility", "construction": "switched_channel",
          "trials": 5})"));
  CHECK(switched.at("verdicts").at("all_cptp").get<bool>());
  Json classical = run_scenario(parse_scenario(
      R"({"scenario": "admissibility", "construction": "classical_oracle",
          "trials": 5})"));
  CHECK(classical.at("verdicts").at("all_cptp").get<bool>());
}

TEST_CASE("run_scenario: identical specs render byte-identical reports") {
  const char* text =
      R"({"scenario": "teleport", "f": "H", "g": "S", "shots": 5000,
          "seed": 42})";
  std::string first = render_report(run_scenario(parse_scenario(text)));
  std::string second = render_report(run_scenario(parse_scenario(text)));
  CHECK(first == second);
  CHECK(first.find("\"seed\": 42") != std::string::npos);
  CHECK(first.find("mt19937_64") != std::string::npos);
}

TEST_CASE("run_scenario: randomized scenarios are reproducible too") {
  const char* text =
      R"({"scenario": "admissibility", "construction": "switched_channel",
          "trials": 10, "seed": 5})";
  CHECK(render_report(run_scenario(parse_scenario(text))) ==
        render_report(run_scenario(parse_scenario(text))));
}

TEST_CASE("run_scenario: seed changes move the sampled record only") {
  const char* a =
      R"({"scenario": "teleport", "f": "H", "g": "S", "shots": 5000, "seed": 1})";
  const char* b =
      R"({"scenario": "teleport", "f": "H", "g": "S", "shots": 5000, "seed": 2})";
  Json ra = run_scenario(parse_scenario(a));
  Json rb = run_scenario(parse_scenario(b));
  CHECK(ra.at("results").at("success_probability") ==
        rb.at("results").at("success_probability"));
  CHECK(ra.at("results").at("sampled_e_frequency") !=
        rb.at("results").at("sampled_e_frequency"));
}

TEST_CASE("render_report: reals carry 17 significant digits") {
  Json doc = Json::object();
  doc["value"] = 0.1;
  std::string out = render_report(doc);
  CHECK(out.find("0.10000000000000001") != std::string::npos);
}

TEST_CASE("render_report: rejects non-finite numbers") {
  Json doc = Json::object();
  doc["value"] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(render_report(doc), std::invalid_argument);
}

TEST_CASE("matrix json round trip") {
  ComplexMatrix m = gate_matrix("Y");
  ComplexMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK(max_abs_diff(m, back) == 0.0);
}
