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

#include <stdexcept>
#include <string>

namespace switchsim {

// Structured diagnostic for every user-facing error path: a kind, a location
// (line/column for text inputs, 0 when not applicable) and a message.
class DiagnosticError : public std::runtime_error {
 public:
  DiagnosticError(std::string kind, int line, int column, std::string message)
      : std::runtime_error(format(kind, line, column, message)),
        kind_(std::move(kind)),
        line_(line),
        column_(column),
        message_(std::move(message)) {}

  const std::string& kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return message_; }

 private:
  static std::string format(const std::string& kind, int line, int column,
                            const std::string& message) {
    std::string out = kind;
    if (line > 0) {
      out += " at line " + std::to_string(line);
      if (column > 0) out += ", column " + std::to_string(column);
    }
    out += ": " + message;
    return out;
  }

  std::string kind_;
  int line_ = 0;
  int column_ = 0;
  std::string message_;
};

}  // namespace switchsim
