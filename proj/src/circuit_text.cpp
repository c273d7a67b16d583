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

#include "switchsim/circuit_text.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace switchsim {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;  // trailing comment
    size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    tokens.push_back({line.substr(start, i - start),
                      static_cast<int>(start) + 1});
  }
  return tokens;
}

int parse_wire(const Token& tok, int line_no) {
  try {
    size_t used = 0;
    int value = std::stoi(tok.text, &used);
    if (used != tok.text.size() || value < 0)
      throw std::invalid_argument("bad");
    return value;
  } catch (const std::exception&) {
    throw DiagnosticError("syntax error", line_no, tok.column,
                          "expected a wire index, got \"" + tok.text + "\"");
  }
}

std::vector<int> parse_wires(const std::vector<Token>& tokens, size_t first,
                             int line_no) {
  std::vector<int> wires;
  for (size_t i = first; i < tokens.size(); ++i)
    wires.push_back(parse_wire(tokens[i], line_no));
  return wires;
}

}  // namespace

CircuitDescription parse_circuit(const std::string& text) {
  CircuitDescription circuit;
  bool have_header = false;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_format = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens.front().text;

    if (keyword == "format") {
      if (have_format || have_header)
        throw DiagnosticError("syntax error", line_no, tokens.front().column,
                              "\"format\" must be the first directive");
      if (tokens.size() != 2 || tokens[1].text != "1")
        throw DiagnosticError("syntax error", line_no, tokens.front().column,
                              "unsupported circuit format version");
      have_format = true;
      continue;
    }

    if (!have_header) {
      if (keyword != "wires")
        throw DiagnosticError("syntax error", line_no, tokens.front().column,
                              "expected \"wires <count>\" header, got \"" +
                                  keyword + "\"");
      if (tokens.size() != 2)
        throw DiagnosticError("syntax error", line_no, tokens.front().column,
                              "\"wires\" takes exactly one count");
      int count = parse_wire(tokens[1], line_no);
      if (count < 1)
        throw DiagnosticError("syntax error", line_no, tokens[1].column,
                              "wire count must be positive");
      circuit.wire_count = count;
      have_header = true;
      continue;
    }

    if (keyword == "gate") {
      if (tokens.size() < 3)
        throw DiagnosticError("syntax error", line_no, tokens.front().column,
                              "\"gate\" needs a name and wires");
      const std::string& name = tokens[1].text;
      if (!is_known_gate(name))
        throw DiagnosticError("unknown gate", line_no, tokens[1].column,
                              "unknown gate \"" + name + "\"");
      auto wires = parse_wires(tokens, 2, line_no);
      if (static_cast<int>(wires.size()) != gate_arity(name))
        throw DiagnosticError("arity mismatch", line_no, tokens[1].column,
                              "gate \"" + name + "\" expects " +
                                  std::to_string(gate_arity(name)) +
                                  " wires, got " +
                                  std::to_string(wires.size()));
      circuit.nodes.push_back(gate_node(name, std::move(wires)));
    } else if (keyword == "oracle") {
      if (tokens.size() < 3)
        throw DiagnosticError("syntax error", line_no, tokens.front().column,
                              "\"oracle\" needs an id and wires");
      circuit.nodes.push_back(
          oracle_node(tokens[1].text, parse_wires(tokens, 2, line_no)));
    } else if (keyword == "prep") {
      if (tokens.size() < 3)
        throw DiagnosticError("syntax error", line_no, tokens.front().column,
                              "\"prep\" needs a state and wires");
      const std::string& name = tokens[1].text;
      if (!is_known_prep_state(name))
        throw DiagnosticError("unknown state", line_no, tokens[1].column,
                              "unknown preparation \"" + name + "\"");
      auto wires = parse_wires(tokens, 2, line_no);
      if (static_cast<int>(wires.size()) != prep_state_arity(name))
        throw DiagnosticError("arity mismatch", line_no, tokens[1].column,
                              "preparation \"" + name + "\" expects " +
                                  std::to_string(prep_state_arity(name)) +
                                  " wires, got " +
                                  std::to_string(wires.size()));
      circuit.nodes.push_back(prep_node(name, std::move(wires)));
    } else if (keyword == "measure") {
      if (tokens.size() < 4)
        throw DiagnosticError("syntax error", line_no, tokens.front().column,
                              "\"measure\" needs a kind and at least 2 wires");
      const std::string& kind = tokens[1].text;
      if (kind != "BELL")
        throw DiagnosticError("unknown measurement", line_no, tokens[1].column,
                              "unknown measurement \"" + kind + "\"");
      auto wires = parse_wires(tokens, 2, line_no);
      if (wires.size() % 2 != 0)
        throw DiagnosticError("arity mismatch", line_no, tokens[1].column,
                              "Bell measurement needs an even wire count");
      circuit.nodes.push_back(bell_measure_node(std::move(wires)));
    } else {
      throw DiagnosticError("syntax error", line_no, tokens.front().column,
                            "unknown directive \"" + keyword + "\"");
    }
  }

  if (!have_header)
    throw DiagnosticError("syntax error", line_no > 0 ? line_no : 1, 1,
                          "missing \"wires <count>\" header");
  return circuit;
}

std::string serialize_circuit(const CircuitDescription& c) {
  if (!c.feedback_edges.empty())
    throw std::invalid_argument(
        "serialize_circuit: feedback edges are not expressible in the text "
        "format");
  std::ostringstream out;
  out << "format 1\n";
  out << "wires " << c.wire_count << "\n";
  for (const auto& node : c.nodes) {
    switch (node.kind) {
      case NodeKind::Gate:
        if (node.name.empty())
          throw std::invalid_argument(
              "serialize_circuit: inline gate matrices are not expressible "
              "in the text format");
        out << "gate " << node.name;
        break;
      case NodeKind::Oracle:
        out << "oracle " << node.name;
        break;
      case NodeKind::Prep:
        out << "prep " << node.name;
        break;
      case NodeKind::Measure:
        out << "measure " << node.name;
        break;
    }
    for (int w : node.wires) out << " " << w;
    out << "\n";
  }
  return out.str();
}

}  // namespace switchsim
