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

#ifndef QCTL_SYNTAX_HPP
#define QCTL_SYNTAX_HPP

#include <Eigen/Dense>
#include <initializer_list>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qctl {

// Variable names are compared with the byte-lexicographic order, which is the
// total order that fixes the qubit layout of every environment.
using VarName = std::string;

// A single-qubit gate. `name` is display metadata only (named built-ins keep
// their spelling through pretty-printing); equality is on the matrix alone.
struct Gate1 {
  Eigen::Matrix2cd mat = Eigen::Matrix2cd::Identity();
  std::string name;
};

bool operator==(const Gate1& a, const Gate1& b);

// Built-in gates: I, X, Y, Z, H, T, S. Throws std::out_of_range for others.
const Gate1& named_gate(const std::string& name);
// Reverse lookup: name of the built-in exactly equal to `m`, or "".
std::string gate_name_of(const Eigen::Matrix2cd& m);
// Unitarity within 1e-12 entrywise (U†U = I).
bool is_unitary_gate(const Eigen::Matrix2cd& m, double tol = 1e-12);

// A finite set of qubit variables. Iteration order is always ⪯-ascending;
// the i-th variable owns the i-th qubit factor, most significant bit first.
class Environment {
 public:
  Environment() = default;
  explicit Environment(std::vector<VarName> names);
  Environment(std::initializer_list<VarName> names);

  bool contains(const VarName& q) const;
  // Position of q in the ⪯-ascending order, or -1.
  int index_of(const VarName& q) const;
  int size() const { return static_cast<int>(vars_.size()); }
  bool empty() const { return vars_.empty(); }
  // Hilbert-space dimension 2^|Γ| (1 for the empty environment).
  Eigen::Index dim() const { return Eigen::Index{1} << vars_.size(); }

  Environment with(const VarName& q) const;     // throws if already present
  Environment without(const VarName& q) const;  // throws if absent

  const std::vector<VarName>& vars() const { return vars_; }
  auto begin() const { return vars_.begin(); }
  auto end() const { return vars_.end(); }

  friend bool operator==(const Environment&, const Environment&) = default;

 private:
  std::vector<VarName> vars_;  // sorted, unique
};

Environment env_union(const Environment& a, const Environment& b);
Environment env_minus(const Environment& a, const Environment& b);
Environment env_intersect(const Environment& a, const Environment& b);
bool env_disjoint(const Environment& a, const Environment& b);
std::string to_string(const Environment& e);  // "q,r" ("∅" -> "")

enum class StmtKind {
  Skip,
  NewQbit,
  Discard,
  Unitary,
  Seq,
  Meas,
  While,
  QCase,
  Hole,  // context hole, never produced by the parser
};

struct Statement;
using StmtPtr = std::shared_ptr<const Statement>;

// Immutable statement tree. Which fields are meaningful depends on `kind`:
// var for NewQbit/Discard/Unitary and the control of Meas/While/QCase,
// gate for Unitary, s0/s1 for Seq/Meas/QCase, s0 for the While body,
// hole_in/hole_out for Hole. line/column are source metadata set by the
// parser (0 when constructed programmatically) and excluded from equality.
struct Statement {
  StmtKind kind = StmtKind::Skip;
  VarName var;
  Gate1 gate;
  StmtPtr s0, s1;
  Environment hole_in, hole_out;
  int line = 0, column = 0;
};

StmtPtr with_position(const StmtPtr& s, int line, int column);

StmtPtr skip_stmt();
StmtPtr new_qbit(const VarName& q);
StmtPtr discard(const VarName& q);
StmtPtr unitary(const VarName& q, const Gate1& g);
StmtPtr seq(StmtPtr a, StmtPtr b);
StmtPtr seq_chain(const std::vector<StmtPtr>& parts);  // empty -> skip
StmtPtr meas(const VarName& q, StmtPtr s0, StmtPtr s1);
StmtPtr while_loop(const VarName& q, StmtPtr body);
StmtPtr qcase(const VarName& q, StmtPtr s0, StmtPtr s1);
StmtPtr hole(const Environment& in, const Environment& out);

bool equal(const Statement& a, const Statement& b);
inline bool equal(const StmtPtr& a, const StmtPtr& b) { return equal(*a, *b); }

// Var(S): every variable occurring in S (controls included).
std::set<VarName> vars_of(const Statement& s);
// Number of AST nodes, holes included.
int node_count(const Statement& s);
int count_holes(const Statement& s);

// A context is a statement tree with exactly one Hole leaf.
struct Context {
  StmtPtr stmt;
};

// Replaces the unique hole of `ctx` by `s`. Throws std::invalid_argument if
// ctx does not contain exactly one hole.
StmtPtr substitute(const Context& ctx, const StmtPtr& s);

// A program (Γ; S; Δ). Constructed via wellformed::make_program, which
// derives Δ; aggregate construction is available for tests.
struct Program {
  Environment in_env;
  StmtPtr stmt;
  Environment out_env;
};

}  // namespace qctl

#endif  // QCTL_SYNTAX_HPP
