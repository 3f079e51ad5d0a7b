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

#include "qctl/synth.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>

namespace qctl {

namespace {

constexpr double kNegligible = 1e-15;

Eigen::Index next_pow2(Eigen::Index x) {
  Eigen::Index p = 1;
  while (p < x) p <<= 1;
  return p;
}

int log2_exact(Eigen::Index d) {
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  if ((Eigen::Index{1} << n) != d)
    throw ShapeMismatch("dimension is not a power of two");
  return n;
}

void left_apply_two_level(Mat& a, Eigen::Index i, Eigen::Index j,
                          const Eigen::Matrix2cd& core) {
  Eigen::RowVectorXcd ri = a.row(i), rj = a.row(j);
  a.row(i) = core(0, 0) * ri + core(0, 1) * rj;
  a.row(j) = core(1, 0) * ri + core(1, 1) * rj;
}

}  // namespace

void FreshNames::claim(const Environment& env) {
  used_.insert(env.begin(), env.end());
}

void FreshNames::claim(const std::set<VarName>& names) {
  used_.insert(names.begin(), names.end());
}

VarName FreshNames::fresh() {
  for (;;) {
    VarName v = "_a" + std::to_string(next_++);
    if (used_.insert(v).second) return v;
  }
}

std::vector<TwoLevelFactor> two_level_decompose(const Mat& u) {
  Eigen::Index d = u.rows(), c = u.cols();
  if (c > d) throw ShapeMismatch("two_level_decompose: more columns than rows");
  if (max_abs(u.adjoint() * u - Mat::Identity(c, c)) > 1e-10)
    throw NotUnitary("two_level_decompose: columns are not orthonormal");
  Mat a = u;
  std::vector<TwoLevelFactor> elim;  // applied left factors, in order
  for (Eigen::Index col = 0; col < c; ++col) {
    for (Eigen::Index row = col + 1; row < d; ++row) {
      Cplx bv = a(row, col);
      if (std::abs(bv) <= kNegligible) continue;
      Cplx av = a(col, col);
      double r = std::sqrt(std::norm(av) + std::norm(bv));
      Eigen::Matrix2cd core;
      core << std::conj(av) / r, std::conj(bv) / r, bv / r, -av / r;
      left_apply_two_level(a, col, row, core);
      elim.push_back({col, row, core});
    }
    Cplx diag = a(col, col);
    if (std::abs(diag - 1.0) > kNegligible) {
      // Residual phase on a fully reduced column; absorb via a one-index
      // phase factor that leaves its partner row untouched.
      Cplx ph = std::conj(diag) / std::abs(diag);
      Eigen::Matrix2cd core = Eigen::Matrix2cd::Identity();
      Eigen::Index i, j;
      if (col + 1 < d) {
        i = col, j = col + 1;
        core(0, 0) = ph;
      } else {
        i = col - 1, j = col;
        core(1, 1) = ph;
      }
      left_apply_two_level(a, i, j, core);
      elim.push_back({i, j, core});
    }
  }
  // elim_m ... elim_1 U = E, hence U = elim_1† ... elim_m† E.
  std::vector<TwoLevelFactor> out;
  out.reserve(elim.size());
  for (const auto& f : elim) out.push_back({f.i, f.j, f.core.adjoint()});
  return out;
}

Mat two_level_product(const std::vector<TwoLevelFactor>& fs, Eigen::Index d) {
  Mat acc = Mat::Identity(d, d);
  for (auto it = fs.rbegin(); it != fs.rend(); ++it)
    left_apply_two_level(acc, it->i, it->j, it->core);
  return acc;
}

Mat complete_subunitary(const Mat& u) {
  Eigen::Index rows = u.rows(), cols = u.cols();
  if (!loewner_leq(u.adjoint() * u, Mat::Identity(cols, cols)))
    throw NotSubUnitary("complete_subunitary: U†U exceeds the identity");
  Mat defect = Mat::Identity(cols, cols) - u.adjoint() * u;
  Eigen::SelfAdjointEigenSolver<Mat> es((defect + defect.adjoint()) / 2.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < cols; ++i)
    if (es.eigenvalues()(i) > 1e-12) keep.push_back(i);
  Eigen::Index r = static_cast<Eigen::Index>(keep.size());
  Mat b(r, cols);
  for (Eigen::Index i = 0; i < r; ++i)
    b.row(i) = std::sqrt(es.eigenvalues()(keep[i])) *
               es.eigenvectors().col(keep[i]).adjoint();

  Eigen::Index n = next_pow2(std::max(cols, rows + r));
  Mat w = Mat::Zero(n, cols);
  w.topRows(rows) = u;
  if (r > 0) w.block(rows, 0, r, cols) = b;
  if (n == cols) return w;
  // Orthonormal complement of the (exactly orthonormal) columns of w.
  Eigen::HouseholderQR<Mat> qr(w);
  Mat q = qr.householderQ();
  Mat comp = q.rightCols(n - cols);
  comp -= w * (w.adjoint() * comp);
  for (Eigen::Index j = 0; j < comp.cols(); ++j) {
    for (Eigen::Index k = 0; k < j; ++k)
      comp.col(j) -= comp.col(k).dot(comp.col(j)) * comp.col(k);
    comp.col(j).normalize();
  }
  Mat out(n, n);
  out.leftCols(cols) = w;
  out.rightCols(n - cols) = comp;
  return out;
}

namespace {

int bit_at(Eigen::Index x, int pos, int n) {
  return static_cast<int>((x >> (n - 1 - pos)) & 1);
}

Gate1 as_gate(const Eigen::Matrix2cd& m) {
  Gate1 g;
  g.mat = m;
  g.name = gate_name_of(m);
  return g;
}

// Fully controlled gate: `gate2` on env[target] whenever every other qubit
// matches `pattern`. Controls are one qcase layer each with 0-branch skip;
// 0-valued controls are routed through X conjugation.
StmtPtr mc_gate(const Environment& env, int target,
                const std::vector<int>& pattern, const Eigen::Matrix2cd& gate2) {
  int n = env.size();
  StmtPtr inner = unitary(env.vars()[target], as_gate(gate2));
  for (int c = n - 1; c >= 0; --c) {
    if (c == target) continue;
    StmtPtr wrapped = qcase(env.vars()[c], skip_stmt(), inner);
    if (pattern[c] == 1) {
      inner = wrapped;
    } else {
      StmtPtr flip = unitary(env.vars()[c], named_gate("X"));
      inner = seq(flip, seq(wrapped, flip));
    }
  }
  return inner;
}

// A two-level factor as a statement: route index i along a Gray-code chain
// until it is one bit away from j, apply the fully controlled core there,
// then undo the routing. The net matrix is exactly the two-level unitary.
StmtPtr factor_gadget(const TwoLevelFactor& f, const Environment& env) {
  int n = env.size();
  std::vector<int> diff_positions;
  for (int p = 0; p < n; ++p)
    if (bit_at(f.i, p, n) != bit_at(f.j, p, n)) diff_positions.push_back(p);

  std::vector<StmtPtr> route;
  Eigen::Index cur = f.i;
  for (size_t s = 0; s + 1 < diff_positions.size(); ++s) {
    int p = diff_positions[s];
    std::vector<int> pattern(n, 0);
    for (int q = 0; q < n; ++q) pattern[q] = bit_at(cur, q, n);
    route.push_back(mc_gate(env, p, pattern, named_gate("X").mat));
    cur ^= Eigen::Index{1} << (n - 1 - p);
  }

  int t = diff_positions.back();
  std::vector<int> pattern(n, 0);
  for (int q = 0; q < n; ++q) pattern[q] = bit_at(cur, q, n);
  Eigen::Matrix2cd core = f.core;
  if (bit_at(cur, t, n) == 1) {
    // Index i currently sits on the |1> side of the target; flip the core.
    Eigen::Matrix2cd x = named_gate("X").mat;
    core = x * core * x;
  }
  StmtPtr middle = mc_gate(env, t, pattern, core);

  std::vector<StmtPtr> parts = route;
  parts.push_back(middle);
  parts.insert(parts.end(), route.rbegin(), route.rend());
  return seq_chain(parts);
}

StmtPtr phase_gadget(Cplx phase, FreshNames& fresh) {
  VarName v = fresh.fresh();
  Eigen::Matrix2cd g = Eigen::Matrix2cd::Identity();
  g(0, 0) = phase;
  return seq_chain({new_qbit(v), unitary(v, as_gate(g)), discard(v)});
}

}  // namespace

StmtPtr loop_stmt(const VarName& r) {
  return seq_chain({new_qbit(r), unitary(r, named_gate("X")),
                    while_loop(r, skip_stmt()), discard(r)});
}

StmtPtr rename_stmt(const VarName& p, const VarName& q) {
  auto cnot = [](const VarName& c, const VarName& t) {
    return qcase(c, skip_stmt(), unitary(t, named_gate("X")));
  };
  return seq_chain(
      {new_qbit(q), cnot(p, q), cnot(q, p), cnot(p, q), discard(p)});
}

StmtPtr unitary_to_program(const Mat& u, const Environment& env,
                           FreshNames& fresh) {
  if (u.rows() != env.dim() || u.cols() != env.dim())
    throw ShapeMismatch("unitary_to_program: dimension mismatch");
  if (max_abs(u.adjoint() * u - Mat::Identity(u.cols(), u.cols())) > 1e-10)
    throw NotUnitary("unitary_to_program: input is not unitary");
  if (max_abs(u - Mat::Identity(u.rows(), u.cols())) <= kNegligible)
    return skip_stmt();
  if (env.size() == 0) return phase_gadget(u(0, 0), fresh);
  if (env.size() == 1) return unitary(env.vars()[0], as_gate(u));

  std::vector<TwoLevelFactor> fs = two_level_decompose(u);
  std::vector<StmtPtr> parts;
  parts.reserve(fs.size());
  // Rightmost factor acts first.
  for (auto it = fs.rbegin(); it != fs.rend(); ++it)
    parts.push_back(factor_gadget(*it, env));
  return seq_chain(parts);
}

StmtPtr unitary_to_program(const Mat& u, const Environment& env) {
  FreshNames fresh;
  fresh.claim(env);
  return unitary_to_program(u, env, fresh);
}

StmtPtr subunitary_to_program(const Mat& u, const Environment& in_env,
                              const Environment& out_env, FreshNames& fresh) {
  if (u.rows() != out_env.dim() || u.cols() != in_env.dim())
    throw ShapeMismatch("subunitary_to_program: dimension mismatch");
  int k = in_env.size(), l = out_env.size();
  Mat uprime = complete_subunitary(u);  // throws NotSubUnitary
  int n = log2_exact(uprime.rows());

  // Working register: fresh ancillas ahead of the inputs in logical order,
  // so the embedded input block is the contiguous left columns; the first
  // n-l logical qubits are measured away, leaving the survivors as the
  // contiguous top rows. complete_subunitary produced exactly that corner.
  std::vector<VarName> anc;
  for (int i = 0; i < n - k; ++i) anc.push_back(fresh.fresh());
  std::sort(anc.begin(), anc.end());
  std::vector<VarName> logical = anc;
  logical.insert(logical.end(), in_env.begin(), in_env.end());
  Environment working = env_union(in_env, Environment(anc));
  Mat u_phys = reorder_qubits(uprime, logical, working.vars());

  std::vector<VarName> measured(logical.begin(), logical.begin() + (n - l));
  std::vector<VarName> survivors(logical.begin() + (n - l), logical.end());

  std::vector<StmtPtr> parts;
  for (const auto& a : anc) parts.push_back(new_qbit(a));
  StmtPtr su = unitary_to_program(u_phys, working, fresh);
  if (su->kind != StmtKind::Skip || parts.empty()) parts.push_back(su);

  if (!measured.empty()) {
    VarName lv = fresh.fresh();
    StmtPtr cascade = skip_stmt();
    for (auto it = measured.rbegin(); it != measured.rend(); ++it)
      cascade = meas(*it, cascade, loop_stmt(lv));
    parts.push_back(cascade);
    for (const auto& m : measured) parts.push_back(discard(m));
  }

  std::vector<VarName> target = out_env.vars();
  std::sort(survivors.begin(), survivors.end());
  if (survivors != target) {
    std::vector<VarName> temps;
    for (size_t i = 0; i < survivors.size(); ++i) temps.push_back(fresh.fresh());
    for (size_t i = 0; i < survivors.size(); ++i)
      parts.push_back(rename_stmt(survivors[i], temps[i]));
    for (size_t i = 0; i < survivors.size(); ++i)
      parts.push_back(rename_stmt(temps[i], target[i]));
  }
  return seq_chain(parts);
}

StmtPtr subunitary_to_program(const Mat& u, const Environment& in_env,
                              const Environment& out_env) {
  FreshNames fresh;
  fresh.claim(in_env);
  fresh.claim(out_env);
  return subunitary_to_program(u, in_env, out_env, fresh);
}

KrausFactorization stack_kraus(const KrausSet& ks, const Environment& in_env,
                               const Environment& out_env, FreshNames& fresh) {
  validate_kraus(ks);
  Eigen::Index din = in_env.dim(), dout = out_env.dim();
  if (ks.ops[0].cols() != din || ks.ops[0].rows() != dout)
    throw InvalidKraus("stack_kraus: environment dimensions differ");

  Eigen::Index padded = next_pow2(static_cast<Eigen::Index>(ks.ops.size()));
  int s = log2_exact(padded);
  std::vector<VarName> anc;
  for (int i = 0; i < s; ++i) anc.push_back(fresh.fresh());
  std::sort(anc.begin(), anc.end());
  Environment anc_env{std::vector<VarName>(anc)};

  Mat stacked = Mat::Zero(padded * dout, din);
  Vec anc_state = Vec::Zero(padded);
  for (size_t i = 0; i < ks.ops.size(); ++i) {
    stacked.block(static_cast<Eigen::Index>(i) * dout, 0, dout, din) =
        ks.ops[i];
    anc_state(static_cast<Eigen::Index>(i)) = ks.vacuum_amps[i];
  }

  // Rows are (anc ⊗ out) in logical order; permute into ⪯ order.
  Environment merged = env_union(anc_env, out_env);
  std::vector<VarName> logical = anc;
  logical.insert(logical.end(), out_env.begin(), out_env.end());
  std::vector<int> src(merged.size());
  for (int i = 0; i < merged.size(); ++i) {
    auto it = std::find(logical.begin(), logical.end(), merged.vars()[i]);
    src[i] = static_cast<int>(it - logical.begin());
  }
  Mat u = perm_matrix(src) * stacked;
  return {std::move(u), anc_env, std::move(anc_state)};
}

Mat state_prep_unitary(const Vec& psi) {
  Eigen::Index d = psi.size();
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("state_prep_unitary: state must be normalized");
  Cplx ph = std::abs(psi(0)) > kNegligible ? psi(0) / std::abs(psi(0)) : 1.0;
  Mat v = Mat::Identity(d, d);
  v(0, 0) = ph;
  Vec w = psi;
  w(0) -= ph;
  double n2 = w.squaredNorm();
  if (n2 < 1e-28) return v;
  Mat h = Mat::Identity(d, d) - (2.0 / n2) * (w * w.adjoint());
  return h * v;
}

Program synthesize(const VacExt& v) {
  if (!validate(v)) throw InvalidVacExt("synthesize: not a valid (C,F) pair");

  // Kraus operators and vacuum amplitudes come out of one eigendecomposition
  // of the extended map's Choi matrix; every Kraus operator of a vacuum
  // extension has the block form K ⊕ nu |vac><vac|.
  Superoperator ext = extend(v);
  Mat ch = choi(ext);
  Eigen::SelfAdjointEigenSolver<Mat> es((ch + ch.adjoint()) / 2.0);
  Eigen::Index din = v.in_env.dim(), dout = v.out_env.dim();
  KrausSet ks;
  for (Eigen::Index idx = 0; idx < es.eigenvalues().size(); ++idx) {
    double lam = es.eigenvalues()(idx);
    if (lam < 1e-12) continue;
    Mat ktilde =
        std::sqrt(lam) * unvec(es.eigenvectors().col(idx), dout + 1, din + 1);
    double off = std::max(max_abs(ktilde.block(0, din, dout, 1)),
                          max_abs(ktilde.block(dout, 0, 1, din)));
    if (off > 1e-7)
      throw InvalidVacExt("synthesize: extended Kraus operator not block-diagonal");
    ks.ops.push_back(ktilde.topLeftCorner(dout, din));
    ks.vacuum_amps.push_back(ktilde(dout, din));
  }
  // Renormalize the vacuum amplitudes against truncation noise.
  double lam_sum = 0;
  for (const auto& nu : ks.vacuum_amps) lam_sum += std::norm(nu);
  for (auto& nu : ks.vacuum_amps) nu /= std::sqrt(lam_sum);

  FreshNames fresh;
  fresh.claim(v.in_env);
  fresh.claim(v.out_env);
  KrausFactorization kf = stack_kraus(ks, v.in_env, v.out_env, fresh);
  Environment widened = env_union(kf.anc_env, v.out_env);

  std::vector<StmtPtr> parts;
  parts.push_back(subunitary_to_program(kf.u, v.in_env, widened, fresh));
  if (kf.anc_env.size() == 0) {
    Cplx nu0 = std::conj(kf.anc_state(0));
    if (std::abs(nu0 - 1.0) > kNegligible)
      parts.push_back(phase_gadget(nu0, fresh));
  } else {
    Mat prep = state_prep_unitary(kf.anc_state);
    StmtPtr svdag = unitary_to_program(prep.adjoint(), kf.anc_env, fresh);
    if (svdag->kind != StmtKind::Skip) parts.push_back(svdag);
    for (const auto& a : kf.anc_env) parts.push_back(discard(a));
  }
  return make_program(v.in_env, seq_chain(parts));
}

}  // namespace qctl
