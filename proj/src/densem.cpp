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

#include "qctl/densem.hpp"

namespace qctl {

namespace {

struct LfpStats {
  double residual = 0.0;
  int iterations = 0;
  bool converged = true;
};

// Intermediate denotation. Subtrees built from skip, unitary gates, fresh
// qubits, seq and qcase denote conjugation pairs (C = F(.)F†), for which the
// compositional rules close over F alone; the superoperator is materialized
// only at impure boundaries (discard, meas, while) and at the root. This is
// exact algebra, not an approximation: for such pairs
//   seq:   (F2 F1)(.)(F2 F1)†,
//   qcase: W(.)W† with W = |0><0|_q ⊗ F0 + |1><1|_q ⊗ F1.
struct Den {
  Superoperator C;  // empty (size-0 matrix) while pure
  Mat F;
  Environment in_env, out_env;
  bool pure = false;

  VacExt materialize() const {
    if (!pure) return {C, F, in_env, out_env};
    return {conjugation_superop(F), F, in_env, out_env};
  }
};

Den pure_den(Mat f, const Environment& in_env, const Environment& out_env) {
  return {Superoperator{}, std::move(f), in_env, out_env, true};
}

Den from_vacext(VacExt v) {
  return {std::move(v.C), std::move(v.F), v.in_env, v.out_env, false};
}

Den denote_rec(const Environment& env, const Statement& s,
               const LfpConfig& cfg, LfpStats& stats);

// lfp of the loop functional (C,F) -> meas_q[(I,I), (C,F)∘body]. After one
// step the transformation matrix is pinned at |0><0|_q, so only C iterates.
VacExt while_lfp(const VarName& q, const Environment& env, const VacExt& body,
                 const LfpConfig& cfg, LfpStats& stats) {
  Superoperator p0 = proj_superop(q, env, 0);
  Superoperator step = compose(body.C, proj_superop(q, env, 1));
  Eigen::Matrix2cd pk = Eigen::Matrix2cd::Zero();
  pk(0, 0) = 1.0;
  Mat f = gate_on(q, env, pk);

  VacExt acc = zero_vacext(env, env);
  double residual = 0.0;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    Superoperator next = add(p0, compose(acc.C, step));
    residual = std::max(max_abs(next.m - acc.C.m),
                        it == 1 ? max_abs(f) : 0.0);
    bool exact = (next.m - acc.C.m).isZero(0.0) && it > 1;
    acc.C = std::move(next);
    acc.F = f;
    stats.iterations = std::max(stats.iterations, it);
    if (exact || residual < cfg.tol) {
      stats.residual = std::max(stats.residual, exact ? 0.0 : residual);
      return acc;
    }
  }
  stats.converged = false;
  stats.residual = std::max(stats.residual, residual);
  return acc;
}

Den denote_rec(const Environment& env, const Statement& s,
               const LfpConfig& cfg, LfpStats& stats) {
  switch (s.kind) {
    case StmtKind::Skip:
      return pure_den(Mat::Identity(env.dim(), env.dim()), env, env);
    case StmtKind::NewQbit:
      return pure_den(ket_insert(s.var, env, 0), env, env.with(s.var));
    case StmtKind::Discard: {
      Mat b0 = bra_select(s.var, env, 0);
      return {traceout_superop(s.var, env), b0, env, env.without(s.var),
              false};
    }
    case StmtKind::Unitary:
      return pure_den(gate_on(s.var, env, s.gate.mat), env, env);
    case StmtKind::Seq: {
      // Fold the sequence spine left to right; the accumulator keeps the
      // program's (small) input dimension on the right of every product.
      std::vector<const Statement*> parts;
      const Statement* cur = &s;
      while (cur->kind == StmtKind::Seq) {
        parts.push_back(cur->s0.get());
        cur = cur->s1.get();
      }
      parts.push_back(cur);
      Den acc = denote_rec(env, *parts[0], cfg, stats);
      for (size_t i = 1; i < parts.size(); ++i) {
        Den next = denote_rec(acc.out_env, *parts[i], cfg, stats);
        if (acc.pure && next.pure) {
          acc = pure_den(next.F * acc.F, acc.in_env, next.out_env);
        } else {
          acc = from_vacext(compose(next.materialize(), acc.materialize()));
        }
      }
      return acc;
    }
    case StmtKind::Meas:
      return from_vacext(
          meas_bar(s.var, denote_rec(env, *s.s0, cfg, stats).materialize(),
                   denote_rec(env, *s.s1, cfg, stats).materialize()));
    case StmtKind::While:
      return from_vacext(while_lfp(
          s.var, env, denote_rec(env, *s.s0, cfg, stats).materialize(), cfg,
          stats));
    case StmtKind::QCase: {
      Environment inner = env.without(s.var);
      Den d0 = denote_rec(inner, *s.s0, cfg, stats);
      Den d1 = denote_rec(inner, *s.s1, cfg, stats);
      if (d0.pure && d1.pure) {
        Environment qin = d0.in_env.with(s.var);
        Environment qout = d0.out_env.with(s.var);
        Mat w = ket_insert(s.var, d0.out_env, 0) * d0.F *
                    bra_select(s.var, qin, 0) +
                ket_insert(s.var, d1.out_env, 1) * d1.F *
                    bra_select(s.var, qin, 1);
        return pure_den(std::move(w), qin, qout);
      }
      return from_vacext(
          qcase_bar(s.var, d0.materialize(), d1.materialize()));
    }
    case StmtKind::Hole:
      throw NotWellFormed("cannot interpret a context hole");
  }
  throw NotWellFormed("unreachable statement kind");
}

}  // namespace

DenoteResult denote(const Environment& in_env, const StmtPtr& stmt,
                    const LfpConfig& cfg) {
  if (in_env.size() > 8)
    throw NotWellFormed("register exceeds the supported 8-qubit cap");
  auto wf = check(in_env, *stmt);
  if (!wf) throw NotWellFormed(to_string(wf.error()));
  LfpStats stats;
  DenoteResult out{denote_rec(in_env, *stmt, cfg, stats).materialize(),
                   stats.residual, stats.iterations, stats.converged};
  return out;
}

DenoteResult denote(const Program& prog, const LfpConfig& cfg) {
  return denote(prog.in_env, prog.stmt, cfg);
}

std::vector<VacExt> while_iterates(const VarName& q, const VacExt& body,
                                   int n) {
  if (!(body.in_env == body.out_env))
    throw EnvMismatch("while_iterates: body must preserve its environment");
  const Environment& env = body.in_env;
  VacExt id = identity_vacext(env);
  std::vector<VacExt> out{zero_vacext(env, env)};
  for (int k = 1; k <= n; ++k)
    out.push_back(meas_bar(q, id, compose(out.back(), body)));
  return out;
}

}  // namespace qctl
