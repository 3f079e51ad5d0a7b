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

#include "qctl/wellformed.hpp"

#include <algorithm>

#include "qctl/parser.hpp"

namespace qctl {

std::string to_string(const CheckError& e) {
  using Code = CheckError::Code;
  switch (e.code) {
    case Code::VarMissing:
      return "variable '" + e.var + "' not in scope" +
             (e.detail.empty() ? "" : " (" + e.detail + ")");
    case Code::VarClash:
      return "new qbit '" + e.var + "' clashes with existing variable";
    case Code::BranchMismatch:
      return "branch output environments differ: " + e.detail;
    case Code::ControlCaptured:
      return "control qubit '" + e.var + "' occurs inside a qcase branch";
    case Code::WhileShape:
      return "while body must preserve its environment: " + e.detail;
    case Code::HoleMismatch:
      return "hole environment mismatch: " + e.detail;
  }
  return "unknown error";
}

namespace {

Expected<Environment> check_rec(const Environment& env, const Statement& s) {
  using Code = CheckError::Code;
  auto err = [&s](Code code, VarName var, std::string detail) {
    return CheckError{code, std::move(var), std::move(detail), s.line,
                      s.column};
  };
  switch (s.kind) {
    case StmtKind::Skip:
      return env;
    case StmtKind::NewQbit:
      if (env.contains(s.var)) return err(Code::VarClash, s.var, {});
      return env.with(s.var);
    case StmtKind::Discard:
      if (!env.contains(s.var))
        return err(Code::VarMissing, s.var, "discard");
      return env.without(s.var);
    case StmtKind::Unitary:
      if (!env.contains(s.var))
        return err(Code::VarMissing, s.var, "unitary application");
      return env;
    case StmtKind::Seq: {
      auto mid = check_rec(env, *s.s0);
      if (!mid) return mid;
      return check_rec(mid.value(), *s.s1);
    }
    case StmtKind::Meas: {
      if (!env.contains(s.var))
        return err(Code::VarMissing, s.var, "meas control");
      auto e0 = check_rec(env, *s.s0);
      if (!e0) return e0;
      auto e1 = check_rec(env, *s.s1);
      if (!e1) return e1;
      if (!(e0.value() == e1.value()))
        return err(Code::BranchMismatch, s.var,
                   "{" + to_string(e0.value()) + "} vs {" +
                       to_string(e1.value()) + "}");
      return e0;
    }
    case StmtKind::While: {
      if (!env.contains(s.var))
        return err(Code::VarMissing, s.var, "while control");
      auto body = check_rec(env, *s.s0);
      if (!body) return body;
      if (!(body.value() == env))
        return err(Code::WhileShape, s.var,
                   "{" + to_string(env) + "} -> {" +
                       to_string(body.value()) + "}");
      return env;
    }
    case StmtKind::QCase: {
      if (!env.contains(s.var))
        return err(Code::VarMissing, s.var, "qcase control");
      auto used = vars_of(*s.s0);
      auto used1 = vars_of(*s.s1);
      used.insert(used1.begin(), used1.end());
      if (used.count(s.var))
        return err(Code::ControlCaptured, s.var, {});
      Environment inner = env.without(s.var);
      auto e0 = check_rec(inner, *s.s0);
      if (!e0) return e0;
      auto e1 = check_rec(inner, *s.s1);
      if (!e1) return e1;
      if (!(e0.value() == e1.value()))
        return err(Code::BranchMismatch, s.var,
                   "{" + to_string(e0.value()) + "} vs {" +
                       to_string(e1.value()) + "}");
      return e0.value().with(s.var);
    }
    case StmtKind::Hole: {
      // (C): Γ,Σ ⊢ [·]^{Γ→Δ} ▷ Δ,Σ with Σ = env \ Γ, Σ ∩ (Δ ∪ Var) = ∅.
      for (const auto& q : s.hole_in)
        if (!env.contains(q))
          return err(Code::HoleMismatch, q,
                     "hole input '" + q + "' not in scope");
      Environment sigma = env_minus(env, s.hole_in);
      if (!env_disjoint(sigma, s.hole_out))
        return err(Code::HoleMismatch, {},
                   "ambient variables overlap the hole output");
      return env_union(s.hole_out, sigma);
    }
  }
  return CheckError{CheckError::Code::VarMissing, {}, "unreachable"};
}

void indent(std::string& out, int depth) { out.append(2 * depth, ' '); }

Expected<Environment> derivation_rec(const Environment& env, const Statement& s,
                                     int depth, std::string& out) {
  auto res = check_rec(env, s);
  if (!res) return res;
  indent(out, depth);
  out += "{" + to_string(env) + "} |- " + pretty(s) + " |> {" +
         to_string(res.value()) + "}\n";
  switch (s.kind) {
    case StmtKind::Seq: {
      auto mid = derivation_rec(env, *s.s0, depth + 1, out);
      derivation_rec(mid.value(), *s.s1, depth + 1, out);
      break;
    }
    case StmtKind::Meas:
      derivation_rec(env, *s.s0, depth + 1, out);
      derivation_rec(env, *s.s1, depth + 1, out);
      break;
    case StmtKind::QCase:
      derivation_rec(env.without(s.var), *s.s0, depth + 1, out);
      derivation_rec(env.without(s.var), *s.s1, depth + 1, out);
      break;
    case StmtKind::While:
      derivation_rec(env, *s.s0, depth + 1, out);
      break;
    default:
      break;
  }
  return res;
}

std::set<VarName> set_union(const std::set<VarName>& a,
                            const std::set<VarName>& b) {
  std::set<VarName> r = a;
  r.insert(b.begin(), b.end());
  return r;
}

std::set<VarName> set_minus(const std::set<VarName>& a,
                            const std::set<VarName>& b) {
  std::set<VarName> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(r, r.end()));
  return r;
}

}  // namespace

Expected<Environment> check(const Environment& env, const Statement& s) {
  return check_rec(env, s);
}

Expected<std::string> derivation(const Environment& env, const Statement& s) {
  std::string out;
  auto res = derivation_rec(env, s, 0, out);
  if (!res) return res.error();
  return out;
}

std::set<VarName> in_vars(const Statement& s) {
  switch (s.kind) {
    case StmtKind::Skip:
    case StmtKind::NewQbit:
      return {};
    case StmtKind::Discard:
    case StmtKind::Unitary:
      return {s.var};
    case StmtKind::Seq:
      return set_union(in_vars(*s.s0),
                       set_minus(in_vars(*s.s1), out_vars(*s.s0)));
    case StmtKind::Meas:
    case StmtKind::QCase:
      return set_union({s.var}, set_union(in_vars(*s.s0), in_vars(*s.s1)));
    case StmtKind::While:
      return set_union({s.var}, in_vars(*s.s0));
    case StmtKind::Hole: {
      std::set<VarName> r(s.hole_in.begin(), s.hole_in.end());
      return r;
    }
  }
  return {};
}

std::set<VarName> out_vars(const Statement& s) {
  switch (s.kind) {
    case StmtKind::Skip:
    case StmtKind::Discard:
      return {};
    case StmtKind::NewQbit:
    case StmtKind::Unitary:
      return {s.var};
    case StmtKind::Seq:
      return set_union(out_vars(*s.s1),
                       set_minus(out_vars(*s.s0), in_vars(*s.s1)));
    case StmtKind::Meas: {
      auto branches = set_union(out_vars(*s.s0), out_vars(*s.s1));
      auto ins = set_union(in_vars(*s.s0), in_vars(*s.s1));
      if (ins.count(s.var)) return branches;
      return set_union({s.var}, branches);
    }
    case StmtKind::QCase:
      return set_union({s.var}, set_union(out_vars(*s.s0), out_vars(*s.s1)));
    case StmtKind::While:
      return set_union({s.var}, out_vars(*s.s0));
    case StmtKind::Hole: {
      std::set<VarName> r(s.hole_out.begin(), s.hole_out.end());
      return r;
    }
  }
  return {};
}

Expected<VarAnalysis> analyze(const Statement& s) {
  VarAnalysis a;
  a.in_vars = in_vars(s);
  a.out_vars = out_vars(s);
  auto wf = check(Environment(std::vector<VarName>(a.in_vars.begin(),
                                                   a.in_vars.end())),
                  s);
  if (!wf) return wf.error();
  a.bound_vars = set_minus(vars_of(s), set_union(a.in_vars, a.out_vars));
  return a;
}

bool check_context(const Context& ctx) {
  if (!ctx.stmt || count_holes(*ctx.stmt) != 1) return false;
  auto res = check(Environment{}, *ctx.stmt);
  return res.ok() && res.value().empty();
}

bool compatible(const Context& ctx, const Program& prog, std::string* why) {
  auto note = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!ctx.stmt || count_holes(*ctx.stmt) != 1)
    return note("context must contain exactly one hole");
  // Locate the hole and match its signature against the program.
  const Statement* h = nullptr;
  auto find = [&](auto&& self, const Statement& s) -> void {
    if (s.kind == StmtKind::Hole) h = &s;
    if (s.s0) self(self, *s.s0);
    if (s.s1) self(self, *s.s1);
  };
  find(find, *ctx.stmt);
  if (!(h->hole_in == prog.in_env && h->hole_out == prog.out_env))
    return note("hole signature differs from the program's environments");
  if (!check_context(ctx)) return note("context is not derivable at {} -> {}");
  auto an = analyze(*prog.stmt);
  if (!an) return note("program statement is not well-formed");
  auto cv = vars_of(*ctx.stmt);
  for (const auto& q : an.value().bound_vars)
    if (cv.count(q))
      return note("bound variable '" + q + "' reused by the context");
  return true;
}

Program make_program(const Environment& in_env, const StmtPtr& stmt) {
  auto res = check(in_env, *stmt);
  if (!res)
    throw std::invalid_argument("ill-formed program: " + to_string(res.error()));
  return Program{in_env, stmt, res.value()};
}

}  // namespace qctl
