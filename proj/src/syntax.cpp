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

#include "qctl/syntax.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qctl {

bool operator==(const Gate1& a, const Gate1& b) {
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      if (a.mat(r, c) != b.mat(r, c)) return false;
  return true;
}

namespace {

std::map<std::string, Gate1> make_gate_table() {
  using namespace std::complex_literals;
  const double s = 1.0 / std::sqrt(2.0);
  std::map<std::string, Gate1> t;
  auto add = [&](const std::string& n, std::complex<double> a,
                 std::complex<double> b, std::complex<double> c,
                 std::complex<double> d) {
    Gate1 g;
    g.mat << a, b, c, d;
    g.name = n;
    t[n] = g;
  };
  add("I", 1, 0, 0, 1);
  add("X", 0, 1, 1, 0);
  add("Y", 0, -1i, 1i, 0);
  add("Z", 1, 0, 0, -1);
  add("H", s, s, s, -s);
  add("T", 1, 0, 0, std::polar(1.0, M_PI / 4));
  add("S", 1, 0, 0, 1i);
  return t;
}

const std::map<std::string, Gate1>& gate_table() {
  static const std::map<std::string, Gate1> t = make_gate_table();
  return t;
}

}  // namespace

const Gate1& named_gate(const std::string& name) {
  return gate_table().at(name);
}

std::string gate_name_of(const Eigen::Matrix2cd& m) {
  for (const auto& [n, g] : gate_table())
    if ((g.mat - m).cwiseAbs().maxCoeff() == 0.0) return n;
  return "";
}

bool is_unitary_gate(const Eigen::Matrix2cd& m, double tol) {
  return (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <=
         tol;
}

Environment::Environment(std::vector<VarName> names) : vars_(std::move(names)) {
  std::sort(vars_.begin(), vars_.end());
  if (std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
    throw std::invalid_argument("environment with duplicate variable");
}

Environment::Environment(std::initializer_list<VarName> names)
    : Environment(std::vector<VarName>(names)) {}

bool Environment::contains(const VarName& q) const {
  return std::binary_search(vars_.begin(), vars_.end(), q);
}

int Environment::index_of(const VarName& q) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), q);
  if (it == vars_.end() || *it != q) return -1;
  return static_cast<int>(it - vars_.begin());
}

Environment Environment::with(const VarName& q) const {
  if (contains(q)) throw std::invalid_argument("variable already present: " + q);
  std::vector<VarName> v = vars_;
  v.push_back(q);
  return Environment(std::move(v));
}

Environment Environment::without(const VarName& q) const {
  int i = index_of(q);
  if (i < 0) throw std::invalid_argument("variable absent: " + q);
  std::vector<VarName> v = vars_;
  v.erase(v.begin() + i);
  Environment e;
  e.vars_ = std::move(v);  // still sorted
  return e;
}

Environment env_union(const Environment& a, const Environment& b) {
  std::vector<VarName> v;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
  Environment e;
  for (const auto& q : v) e = e.with(q);
  return e;
}

Environment env_minus(const Environment& a, const Environment& b) {
  std::vector<VarName> v;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(v));
  return Environment(std::move(v));
}

Environment env_intersect(const Environment& a, const Environment& b) {
  std::vector<VarName> v;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(v));
  return Environment(std::move(v));
}

bool env_disjoint(const Environment& a, const Environment& b) {
  return env_intersect(a, b).empty();
}

std::string to_string(const Environment& e) {
  std::string out;
  for (const auto& q : e) {
    if (!out.empty()) out += ",";
    out += q;
  }
  return out;
}

namespace {
StmtPtr node(Statement s) { return std::make_shared<const Statement>(std::move(s)); }
}  // namespace

StmtPtr skip_stmt() {
  static const StmtPtr s = node({});
  return s;
}

StmtPtr new_qbit(const VarName& q) {
  Statement s;
  s.kind = StmtKind::NewQbit;
  s.var = q;
  return node(std::move(s));
}

StmtPtr discard(const VarName& q) {
  Statement s;
  s.kind = StmtKind::Discard;
  s.var = q;
  return node(std::move(s));
}

StmtPtr unitary(const VarName& q, const Gate1& g) {
  Statement s;
  s.kind = StmtKind::Unitary;
  s.var = q;
  s.gate = g;
  return node(std::move(s));
}

StmtPtr seq(StmtPtr a, StmtPtr b) {
  Statement s;
  s.kind = StmtKind::Seq;
  s.s0 = std::move(a);
  s.s1 = std::move(b);
  return node(std::move(s));
}

StmtPtr seq_chain(const std::vector<StmtPtr>& parts) {
  if (parts.empty()) return skip_stmt();
  StmtPtr out = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
    out = seq(*it, out);
  return out;
}

StmtPtr meas(const VarName& q, StmtPtr s0, StmtPtr s1) {
  Statement s;
  s.kind = StmtKind::Meas;
  s.var = q;
  s.s0 = std::move(s0);
  s.s1 = std::move(s1);
  return node(std::move(s));
}

StmtPtr while_loop(const VarName& q, StmtPtr body) {
  Statement s;
  s.kind = StmtKind::While;
  s.var = q;
  s.s0 = std::move(body);
  return node(std::move(s));
}

StmtPtr qcase(const VarName& q, StmtPtr s0, StmtPtr s1) {
  Statement s;
  s.kind = StmtKind::QCase;
  s.var = q;
  s.s0 = std::move(s0);
  s.s1 = std::move(s1);
  return node(std::move(s));
}

StmtPtr hole(const Environment& in, const Environment& out) {
  Statement s;
  s.kind = StmtKind::Hole;
  s.hole_in = in;
  s.hole_out = out;
  return node(std::move(s));
}

StmtPtr with_position(const StmtPtr& s, int line, int column) {
  Statement copy = *s;
  copy.line = line;
  copy.column = column;
  return std::make_shared<const Statement>(std::move(copy));
}

bool equal(const Statement& a, const Statement& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case StmtKind::Skip:
      return true;
    case StmtKind::NewQbit:
    case StmtKind::Discard:
      return a.var == b.var;
    case StmtKind::Unitary:
      return a.var == b.var && a.gate == b.gate;
    case StmtKind::Seq:
      return equal(*a.s0, *b.s0) && equal(*a.s1, *b.s1);
    case StmtKind::Meas:
    case StmtKind::QCase:
      return a.var == b.var && equal(*a.s0, *b.s0) && equal(*a.s1, *b.s1);
    case StmtKind::While:
      return a.var == b.var && equal(*a.s0, *b.s0);
    case StmtKind::Hole:
      return a.hole_in == b.hole_in && a.hole_out == b.hole_out;
  }
  return false;
}

std::set<VarName> vars_of(const Statement& s) {
  std::set<VarName> out;
  switch (s.kind) {
    case StmtKind::Skip:
    case StmtKind::Hole:
      break;
    case StmtKind::NewQbit:
    case StmtKind::Discard:
    case StmtKind::Unitary:
      out.insert(s.var);
      break;
    case StmtKind::Seq: {
      out = vars_of(*s.s0);
      auto v1 = vars_of(*s.s1);
      out.insert(v1.begin(), v1.end());
      break;
    }
    case StmtKind::Meas:
    case StmtKind::QCase: {
      out.insert(s.var);
      auto v0 = vars_of(*s.s0);
      auto v1 = vars_of(*s.s1);
      out.insert(v0.begin(), v0.end());
      out.insert(v1.begin(), v1.end());
      break;
    }
    case StmtKind::While: {
      out.insert(s.var);
      auto v = vars_of(*s.s0);
      out.insert(v.begin(), v.end());
      break;
    }
  }
  return out;
}

int node_count(const Statement& s) {
  int n = 1;
  if (s.s0) n += node_count(*s.s0);
  if (s.s1) n += node_count(*s.s1);
  return n;
}

int count_holes(const Statement& s) {
  int n = (s.kind == StmtKind::Hole) ? 1 : 0;
  if (s.s0) n += count_holes(*s.s0);
  if (s.s1) n += count_holes(*s.s1);
  return n;
}

namespace {

StmtPtr subst_rec(const StmtPtr& t, const StmtPtr& s) {
  if (t->kind == StmtKind::Hole) return s;
  Statement copy = *t;
  if (copy.s0) copy.s0 = subst_rec(copy.s0, s);
  if (copy.s1) copy.s1 = subst_rec(copy.s1, s);
  return std::make_shared<const Statement>(std::move(copy));
}

}  // namespace

StmtPtr substitute(const Context& ctx, const StmtPtr& s) {
  if (!ctx.stmt || count_holes(*ctx.stmt) != 1)
    throw std::invalid_argument("context must contain exactly one hole");
  return subst_rec(ctx.stmt, s);
}

}  // namespace qctl
