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

#include "qctl/analysis.hpp"

#include <Eigen/Eigenvalues>

#include "qctl/synth.hpp"

namespace qctl {

AdequacyReport check_adequacy(const Program& prog, const Vec& psi,
                              const EvalOptions& opts, double tol,
                              const LfpConfig& cfg) {
  VacExt d = denote(prog, cfg).v;
  OutputEnsemble ens = eval({prog.stmt, psi, prog.in_env}, opts);
  Mat density = Mat::Zero(prog.out_env.dim(), prog.out_env.dim());
  Vec weighted = Vec::Zero(prog.out_env.dim());
  for (const auto& v : ens.items) {
    density += v.state * v.state.adjoint();
    if (v.default_bit) weighted += v.state;
  }
  AdequacyReport rep;
  rep.truncated_mass = ens.truncated_mass;
  rep.density_residual = max_abs(d.C.apply(psi * psi.adjoint()) - density);
  rep.transform_residual = (d.F * psi - weighted).cwiseAbs().maxCoeff();
  rep.verdict = rep.density_residual <= tol + rep.truncated_mass &&
                rep.transform_residual <= tol;
  return rep;
}

double probability_denotational(const Program& prog, const Vec& psi,
                                const LfpConfig& cfg) {
  double n2 = psi.squaredNorm();
  if (n2 == 0.0) throw ZeroInput("probability of termination needs |psi| > 0");
  VacExt d = denote(prog, cfg).v;
  return d.C.apply(psi * psi.adjoint()).trace().real() / n2;
}

namespace {

// Spanning set of pure states: basis states plus the two standard
// off-diagonal probes per index pair. If two operations differ at all, they
// differ on one of these.
std::vector<Vec> probe_states(Eigen::Index d) {
  std::vector<Vec> out;
  for (Eigen::Index i = 0; i < d; ++i) {
    Vec v = Vec::Zero(d);
    v(i) = 1.0;
    out.push_back(v);
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      Vec v = Vec::Zero(d);
      v(i) = s;
      v(j) = s;
      out.push_back(v);
      v(j) = Cplx(0, s);
      out.push_back(v);
    }
  return out;
}

struct CaseOneResult {
  StmtPtr ctx_stmt;
  Vec psi;
  double lambda0;
};

// The C != D construction: new qbits; S_U; <hole>; S_V; accept 0...0; discard.
CaseOneResult distinguish_operations(const Superoperator& c,
                                     const Superoperator& d,
                                     const Environment& in_env,
                                     const Environment& out_env,
                                     StmtPtr hole_stmt, FreshNames& fresh) {
  Vec best;
  double best_score = -1.0;
  Mat best_diff;
  for (const Vec& psi : probe_states(in_env.dim())) {
    Mat rho = psi * psi.adjoint();
    Mat diff = c.apply(rho) - d.apply(rho);
    diff = (diff + diff.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(diff, Eigen::EigenvaluesOnly);
    double score = es.eigenvalues().cwiseAbs().maxCoeff();
    if (score > best_score) {
      best_score = score;
      best = psi;
      best_diff = diff;
    }
  }

  Eigen::SelfAdjointEigenSolver<Mat> es(best_diff);
  Eigen::Index top = 0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(top)))
      top = i;
  double lambda0 = es.eigenvalues()(top);

  // V sends the maximizing eigenvector to |0...0>.
  Eigen::Index dm = out_env.dim();
  Mat v(dm, dm);
  v.row(0) = es.eigenvectors().col(top).adjoint();
  Eigen::Index r = 1;
  for (Eigen::Index i = 0; i < dm; ++i) {
    if (i == top) continue;
    v.row(r++) = es.eigenvectors().col(i).adjoint();
  }

  std::vector<StmtPtr> parts;
  for (const auto& q : in_env) parts.push_back(new_qbit(q));
  StmtPtr su = unitary_to_program(state_prep_unitary(best), in_env, fresh);
  if (su->kind != StmtKind::Skip) parts.push_back(su);
  parts.push_back(hole_stmt);
  StmtPtr sv = unitary_to_program(v, out_env, fresh);
  if (sv->kind != StmtKind::Skip) parts.push_back(sv);
  if (out_env.size() > 0) {
    VarName lv = fresh.fresh();
    StmtPtr cascade = skip_stmt();
    const auto& outs = out_env.vars();
    for (auto it = outs.rbegin(); it != outs.rend(); ++it)
      cascade = meas(*it, cascade, loop_stmt(lv));
    parts.push_back(cascade);
    for (const auto& q : out_env) parts.push_back(discard(q));
  }
  return {seq_chain(parts), best, lambda0};
}

}  // namespace

Distinguisher make_distinguisher(const Program& p1, const Program& p2,
                                 double tol, const LfpConfig& cfg) {
  if (!(p1.in_env == p2.in_env) || !(p1.out_env == p2.out_env))
    throw EnvMismatch("make_distinguisher: programs have different signatures");
  VacExt d1 = denote(p1, cfg).v;
  VacExt d2 = denote(p2, cfg).v;
  double diff_c = max_abs(d1.C.m - d2.C.m);
  double diff_f = max_abs(d1.F - d2.F);
  if (diff_c <= tol && diff_f <= tol)
    throw NotDistinct("denotations agree within tolerance");

  FreshNames fresh;
  fresh.claim(p1.in_env);
  fresh.claim(p1.out_env);
  fresh.claim(vars_of(*p1.stmt));
  fresh.claim(vars_of(*p2.stmt));

  CaseOneResult res;
  if (diff_c > tol) {
    res = distinguish_operations(d1.C, d2.C, p1.in_env, p1.out_env,
                                 hole(p1.in_env, p1.out_env), fresh);
  } else {
    // Equal operations, distinct transformation matrices: wrap the hole in a
    // qcase against the init/discard padding statement R, which turns the
    // F-difference into an operation difference on the control's coherences.
    VarName r = fresh.fresh();
    std::vector<StmtPtr> padding;
    for (const auto& q : env_minus(p1.out_env, p1.in_env))
      padding.push_back(new_qbit(q));
    for (const auto& q : env_minus(p1.in_env, p1.out_env))
      padding.push_back(discard(q));
    StmtPtr pad = seq_chain(padding);
    VacExt pad_den = denote(p1.in_env, pad, cfg).v;

    VacExt w1 = qcase_bar(r, d1, pad_den);
    VacExt w2 = qcase_bar(r, d2, pad_den);
    StmtPtr wrapped_hole = qcase(r, hole(p1.in_env, p1.out_env), pad);
    res = distinguish_operations(w1.C, w2.C, w1.in_env, w1.out_env,
                                 wrapped_hole, fresh);
  }
  return {Context{res.ctx_stmt}, res.psi, std::abs(res.lambda0)};
}

EquivVerdict equivalent(const Program& p1, const Program& p2, double tol,
                        const LfpConfig& cfg) {
  if (!(p1.in_env == p2.in_env) || !(p1.out_env == p2.out_env))
    throw EnvMismatch("equivalent: programs have different signatures");
  VacExt d1 = denote(p1, cfg).v;
  VacExt d2 = denote(p2, cfg).v;
  if (vacext_distance(d1, d2) <= tol) return {true, std::nullopt};
  return {false, make_distinguisher(p1, p2, tol, cfg)};
}

}  // namespace qctl
