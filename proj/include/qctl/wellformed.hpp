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

#ifndef QCTL_WELLFORMED_HPP
#define QCTL_WELLFORMED_HPP

#include <optional>
#include <set>
#include <string>
#include <variant>

#include "qctl/syntax.hpp"

namespace qctl {

struct CheckError {
  enum class Code {
    VarMissing,       // a rule premise q ∈ Γ fails
    VarClash,         // new qbit q with q already in Γ
    BranchMismatch,   // meas/qcase branches yield different output environments
    ControlCaptured,  // qcase control occurs in a branch
    WhileShape,       // while body output differs from its input environment
    HoleMismatch,     // hole's Γ not contained in the ambient environment
  };
  Code code;
  VarName var;
  std::string detail;
  // Source span of the offending statement (0:0 for programmatic ASTs).
  int line = 0, column = 0;
};

std::string to_string(const CheckError& e);

// Minimal expected-or-error result; the judgment rules are syntax-directed,
// so checking is a total function rather than a proof search.
template <typename T>
class Expected {
 public:
  Expected(T value) : v_(std::move(value)) {}
  Expected(CheckError e) : v_(std::move(e)) {}
  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }
  const T& value() const { return std::get<T>(v_); }
  const CheckError& error() const { return std::get<CheckError>(v_); }

 private:
  std::variant<T, CheckError> v_;
};

// Decides Γ ⊢ S ▷ Δ and returns the unique Δ. Holes are admitted via the
// context rule (C), so the same function checks contexts.
Expected<Environment> check(const Environment& env, const Statement& s);
inline Expected<Environment> check(const Environment& env, const StmtPtr& s) {
  return check(env, *s);
}

// Renders the full derivation tree of Γ ⊢ S ▷ Δ, one judgment per line.
// Fails with the same diagnostics as check.
Expected<std::string> derivation(const Environment& env, const Statement& s);

struct VarAnalysis {
  std::set<VarName> in_vars, out_vars, bound_vars;
};

// in(S)/out(S)/BV(S). The sets are syntax-directed and total; analyze
// additionally demands that S is well-formed (in(S) ⊢ S ▷ out(S) derivable)
// and reports NotWellFormed through the carried CheckError otherwise.
std::set<VarName> in_vars(const Statement& s);
std::set<VarName> out_vars(const Statement& s);
Expected<VarAnalysis> analyze(const Statement& s);

// Rule (C) closure: ∅ ⊢ ctx ▷ ∅ derivable and the tree has exactly one hole.
bool check_context(const Context& ctx);
// check_context(ctx) ∧ hole signature equals (prog.in_env → prog.out_env)
// ∧ BV(prog.stmt) ∩ Var(ctx) = ∅. When true, ∅ ⊢ ctx[prog.stmt] ▷ ∅ holds.
bool compatible(const Context& ctx, const Program& prog,
                std::string* why = nullptr);

// Runs check and packages (Γ; S; Γ^S). Throws std::invalid_argument with the
// diagnostic when the judgment is not derivable.
Program make_program(const Environment& in_env, const StmtPtr& stmt);

}  // namespace qctl

#endif  // QCTL_WELLFORMED_HPP
