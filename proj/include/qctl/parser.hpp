// Copyright 2026 The qctl Authors
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

#ifndef QCTL_PARSER_HPP
#define QCTL_PARSER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "qctl/syntax.hpp"

namespace qctl {

// Grammar (.qctl files, UTF-8, '#' comments to end of line):
//
//   stmt := atom (";" stmt)?
//   atom := "skip" | "new" "qbit" var | "discard" var | var "*=" gate
//         | "meas"  var "(" "0" "->" stmt "," "1" "->" stmt ")"
//         | "qcase" var "(" "0" "->" stmt "," "1" "->" stmt ")"
//         | "while" var "do" atom | "(" stmt ")"
//   gate := "I" | "X" | "Y" | "Z" | "H" | "T" | "S"
//         | "U" "(" real ("," real){7} ")"          (row-major re,im pairs)
//   var  := [A-Za-z_][A-Za-z0-9_']*                  (keywords excluded)

struct SyntaxError : std::runtime_error {
  int line = 0, column = 0;
  std::vector<std::string> expected;
  SyntaxError(const std::string& msg, int line, int column,
              std::vector<std::string> expected);
};

StmtPtr parse(const std::string& text);

// Concrete syntax such that parse(pretty(s)) == s. Holes print as
// "[ G -> D ]", which is deliberately outside the parseable grammar.
std::string pretty(const Statement& s);
inline std::string pretty(const StmtPtr& s) { return pretty(*s); }

}  // namespace qctl

#endif  // QCTL_PARSER_HPP
