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

#include "qctl/opsem.hpp"

namespace qctl {

double OutputEnsemble::mass() const {
  double m = 0;
  for (const auto& v : items) m += v.state.squaredNorm();
  return m;
}

namespace {

Value default_rec(const Environment& env, const Statement& s, const Vec& psi);

struct Evaluator {
  const EvalOptions& opts;

  void push(OutputEnsemble& ens, Vec state, int bit) const {
    double n2 = state.squaredNorm();
    if (bit == 0) {
      if (n2 == 0.0) return;  // the value (0,0) carries no information
      if (n2 < opts.prune_eps) {
        ens.truncated_mass += n2;
        return;
      }
    }
    ens.items.push_back({std::move(state), bit});
  }

  // Enumerates every derivation of [s, psi]_env up to the while fuel.
  OutputEnsemble run(const Environment& env, const Statement& s, const Vec& psi,
                     int fuel) const {
    OutputEnsemble ens;
    if (opts.prune_eps > 0.0 && psi.squaredNorm() <= opts.prune_eps &&
        s.kind != StmtKind::Skip) {
      // Negligible input: keep the exact default derivation (it anchors the
      // transformation-matrix side) and bound everything else by the mass.
      ens.out_env = check(env, s).value();
      Value def = default_rec(env, s, psi);
      ens.truncated_mass =
          std::max(0.0, psi.squaredNorm() - def.state.squaredNorm());
      ens.items.push_back(std::move(def));
      return ens;
    }
    switch (s.kind) {
      case StmtKind::Skip: {  // (SK)
        ens.out_env = env;
        push(ens, psi, 1);
        return ens;
      }
      case StmtKind::NewQbit: {  // (N)
        ens.out_env = env.with(s.var);
        push(ens, ket_insert(s.var, env, 0) * psi, 1);
        return ens;
      }
      case StmtKind::Discard: {  // (D0), (D1)
        ens.out_env = env.without(s.var);
        push(ens, bra_select(s.var, env, 0) * psi, 1);
        push(ens, bra_select(s.var, env, 1) * psi, 0);
        return ens;
      }
      case StmtKind::Unitary: {  // (U)
        ens.out_env = env;
        push(ens, gate_on(s.var, env, s.gate.mat) * psi, 1);
        return ens;
      }
      case StmtKind::Seq: {  // (S): one derivation per pair of derivations
        OutputEnsemble left = run(env, *s.s0, psi, fuel);
        ens.truncated_mass = left.truncated_mass;
        bool first = true;
        for (const auto& v : left.items) {
          OutputEnsemble right = run(left.out_env, *s.s1, v.state, fuel);
          if (first) {
            ens.out_env = right.out_env;
            first = false;
          }
          ens.truncated_mass += right.truncated_mass;
          for (auto& w : right.items)
            push(ens, std::move(w.state), v.default_bit & w.default_bit);
        }
        if (first) {
          // No left item survived; still need the output environment.
          auto out = check(left.out_env, *s.s1);
          ens.out_env = out.value();
        }
        return ens;
      }
      case StmtKind::Meas: {  // (M0), (M1)
        Mat p0 = gate_on(s.var, env, Eigen::Matrix2cd{{1, 0}, {0, 0}});
        Mat p1 = gate_on(s.var, env, Eigen::Matrix2cd{{0, 0}, {0, 1}});
        OutputEnsemble e0 = run(env, *s.s0, p0 * psi, fuel);
        OutputEnsemble e1 = run(env, *s.s1, p1 * psi, fuel);
        ens.out_env = e0.out_env;
        ens.truncated_mass = e0.truncated_mass + e1.truncated_mass;
        for (auto& v : e0.items) push(ens, std::move(v.state), v.default_bit);
        for (auto& v : e1.items) push(ens, std::move(v.state), 0);
        return ens;
      }
      case StmtKind::While: {  // (W0), (W1) up to `fuel` unrollings
        ens.out_env = env;
        Mat p0 = gate_on(s.var, env, Eigen::Matrix2cd{{1, 0}, {0, 0}});
        Mat p1 = gate_on(s.var, env, Eigen::Matrix2cd{{0, 0}, {0, 1}});
        push(ens, p0 * psi, 1);
        Vec cont = p1 * psi;
        if (fuel <= 0) {
          ens.truncated_mass += cont.squaredNorm();
          return ens;
        }
        OutputEnsemble body = run(env, *s.s0, cont, fuel);
        ens.truncated_mass += body.truncated_mass;
        // Exact one-step cycle (e.g. the LOOP gadget): the body's only
        // derivation reproduces the continuation bit for bit, so every
        // deeper exit is the zero state and contributes neither items nor
        // terminating mass.
        if (body.truncated_mass == 0 && body.items.size() == 1 &&
            body.items[0].default_bit == 1 &&
            (body.items[0].state - cont).isZero(0.0))
          return ens;
        for (const auto& v : body.items) {
          OutputEnsemble rest = run(env, s, v.state, fuel - 1);
          ens.truncated_mass += rest.truncated_mass;
          for (auto& w : rest.items) push(ens, std::move(w.state), 0);
        }
        return ens;
      }
      case StmtKind::QCase: {  // (Q): Cartesian product of branch derivations
        Environment inner = env.without(s.var);
        OutputEnsemble e0 =
            run(inner, *s.s0, bra_select(s.var, env, 0) * psi, fuel);
        OutputEnsemble e1 =
            run(inner, *s.s1, bra_select(s.var, env, 1) * psi, fuel);
        ens.out_env = e0.out_env.with(s.var);
        // A derivation missing on one side pairs only with the other side's
        // default, so the truncated masses add.
        ens.truncated_mass = e0.truncated_mass + e1.truncated_mass;
        Mat i0 = ket_insert(s.var, e0.out_env, 0);
        Mat i1 = ket_insert(s.var, e1.out_env, 1);
        for (const auto& v0 : e0.items)
          for (const auto& v1 : e1.items) {
            Vec state = Vec::Zero(ens.out_env.dim());
            if (v1.default_bit) state += i0 * v0.state;
            if (v0.default_bit) state += i1 * v1.state;
            push(ens, std::move(state), v0.default_bit & v1.default_bit);
          }
        return ens;
      }
      case StmtKind::Hole:
        throw IllFormed("cannot evaluate a context hole");
    }
    throw IllFormed("unreachable statement kind");
  }
};

}  // namespace

OutputEnsemble eval(const Configuration& cfg, const EvalOptions& opts) {
  if (cfg.env.size() > 8)
    throw IllFormed("register exceeds the supported 8-qubit cap");
  auto wf = check(cfg.env, *cfg.stmt);
  if (!wf) throw IllFormed(to_string(wf.error()));
  if (cfg.state.size() != cfg.env.dim())
    throw IllFormed("state dimension does not match the environment");
  if (cfg.state.norm() > 1.0 + 1e-12)
    throw IllFormed("configuration state must be subnormalized");
  return Evaluator{opts}.run(cfg.env, *cfg.stmt, cfg.state, opts.fuel);
}

std::pair<double, double> probability(const Program& prog, const Vec& psi,
                                      const EvalOptions& opts) {
  double n2 = psi.squaredNorm();
  if (n2 == 0.0) throw ZeroInput("probability of termination needs |psi| > 0");
  OutputEnsemble ens = eval({prog.stmt, psi, prog.in_env}, opts);
  double lower = ens.mass() / n2;
  return {lower, lower + ens.truncated_mass / n2};
}

namespace {

Value default_rec(const Environment& env, const Statement& s, const Vec& psi) {
  switch (s.kind) {
    case StmtKind::Skip:
      return {psi, 1};
    case StmtKind::NewQbit:
      return {ket_insert(s.var, env, 0) * psi, 1};
    case StmtKind::Discard:
      return {bra_select(s.var, env, 0) * psi, 1};
    case StmtKind::Unitary:
      return {gate_on(s.var, env, s.gate.mat) * psi, 1};
    case StmtKind::Seq: {
      Value v = default_rec(env, *s.s0, psi);
      Environment mid = check(env, *s.s0).value();
      return default_rec(mid, *s.s1, v.state);
    }
    case StmtKind::Meas: {
      Mat p0 = gate_on(s.var, env, Eigen::Matrix2cd{{1, 0}, {0, 0}});
      return default_rec(env, *s.s0, p0 * psi);
    }
    case StmtKind::While: {
      Mat p0 = gate_on(s.var, env, Eigen::Matrix2cd{{1, 0}, {0, 0}});
      return {p0 * psi, 1};
    }
    case StmtKind::QCase: {
      Environment inner = env.without(s.var);
      Value v0 = default_rec(inner, *s.s0, bra_select(s.var, env, 0) * psi);
      Value v1 = default_rec(inner, *s.s1, bra_select(s.var, env, 1) * psi);
      Environment out = check(inner, *s.s0).value();
      Vec state = ket_insert(s.var, out, 0) * v0.state +
                  ket_insert(s.var, out, 1) * v1.state;
      return {std::move(state), 1};
    }
    case StmtKind::Hole:
      throw IllFormed("cannot evaluate a context hole");
  }
  throw IllFormed("unreachable statement kind");
}

}  // namespace

Value default_value(const Configuration& cfg) {
  auto wf = check(cfg.env, *cfg.stmt);
  if (!wf) throw IllFormed(to_string(wf.error()));
  return default_rec(cfg.env, *cfg.stmt, cfg.state);
}

}  // namespace qctl
