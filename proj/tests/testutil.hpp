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

#ifndef QCTL_TESTS_TESTUTIL_HPP
#define QCTL_TESTS_TESTUTIL_HPP

#include <Eigen/QR>
#include <random>

#include "qctl/densem.hpp"
#include "qctl/linalg.hpp"
#include "qctl/opsem.hpp"
#include "qctl/syntax.hpp"
#include "qctl/vacext.hpp"
#include "qctl/wellformed.hpp"

namespace qctl::testing {

using Rng = std::mt19937_64;

inline Cplx cgauss(Rng& rng) {
  std::normal_distribution<double> d;
  return {d(rng), d(rng)};
}

inline Mat ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cgauss(rng);
  return m;
}

inline Mat haar_unitary(Rng& rng, Eigen::Index d) {
  Eigen::HouseholderQR<Mat> qr(ginibre(rng, d, d));
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    Cplx ph = r(j, j) / std::abs(r(j, j));
    q.col(j) *= ph;
  }
  return q;
}

inline Vec random_state(Rng& rng, Eigen::Index d) {
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = cgauss(rng);
  v.normalize();
  return v;
}

// Kraus set with sum K†K strictly below I and unit vacuum-amplitude norm.
inline KrausSet random_kraus(Rng& rng, Eigen::Index din, Eigen::Index dout,
                             int count, bool trace_preserving = false) {
  KrausSet ks;
  if (trace_preserving) {
    // Slice an isometry into blocks; needs count*dout >= din.
    Eigen::Index rows = count * dout;
    Mat u = haar_unitary(rng, rows).leftCols(din);
    for (int i = 0; i < count; ++i)
      ks.ops.push_back(u.block(i * dout, 0, dout, din));
  } else {
    Mat acc = Mat::Zero(din, din);
    for (int i = 0; i < count; ++i) {
      ks.ops.push_back(ginibre(rng, dout, din));
      acc += ks.ops.back().adjoint() * ks.ops.back();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(acc);
    double scale = std::sqrt(es.eigenvalues().maxCoeff()) * 1.05;
    for (auto& k : ks.ops) k /= scale;
  }
  Vec nu = random_state(rng, count);
  for (Eigen::Index i = 0; i < count; ++i) ks.vacuum_amps.push_back(nu(i));
  return ks;
}

inline VacExt random_vacext(Rng& rng, const Environment& in_env,
                            const Environment& out_env, int count) {
  return kraus_to_vacext(random_kraus(rng, in_env.dim(), out_env.dim(), count),
                         in_env, out_env);
}

inline Gate1 random_gate(Rng& rng) {
  static const char* names[] = {"X", "Y", "Z", "H", "T", "S"};
  std::uniform_int_distribution<int> pick(0, 7);
  int i = pick(rng);
  if (i < 6) return named_gate(names[i]);
  Gate1 g;
  g.mat = haar_unitary(rng, 2);
  return g;
}

// ---------------------------------------------------------------------------
// Random well-formed statements.
//
// `balanced` statements satisfy env ⊢ S ▷ env, which is what meas/qcase
// branches and while bodies need; new/discard coverage comes from scoped
// new..discard blocks over pool variables and discard-recreate pairs.
// ---------------------------------------------------------------------------

struct StmtGen {
  Rng& rng;
  std::vector<VarName> pool;  // names that scoped blocks may introduce

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  VarName any_var(const Environment& env) {
    return env.vars()[pick(env.size())];
  }

  StmtPtr balanced(const Environment& env, int depth) {
    const bool leaf = depth <= 1;
    for (;;) {
      int choice = pick(leaf ? 2 : 9);
      switch (choice) {
        case 0:
          return skip_stmt();
        case 1:
          if (env.empty()) break;
          return unitary(any_var(env), random_gate(rng));
        case 2:
          return seq(balanced(env, depth - 1), balanced(env, depth - 1));
        case 3:
          if (env.empty()) break;
          {
            VarName q = any_var(env);
            return meas(q, balanced(env, depth - 1), balanced(env, depth - 1));
          }
        case 4:
          if (env.empty()) break;
          return while_loop(any_var(env), balanced(env, depth - 1));
        case 5: {
          if (env.empty()) break;
          VarName q = any_var(env);
          Environment inner = env.without(q);
          StmtPtr s0 = balanced_avoiding(inner, q, depth - 1);
          StmtPtr s1 = balanced_avoiding(inner, q, depth - 1);
          return qcase(q, s0, s1);
        }
        case 6: {  // new x; ...; discard x
          if (depth < 3) break;
          VarName x = fresh_from_pool(env);
          if (x.empty()) break;
          return seq(new_qbit(x),
                     seq(balanced(env.with(x), depth - 2), discard(x)));
        }
        case 7: {  // discard v; new v
          if (env.empty()) break;
          VarName v = any_var(env);
          return seq(discard(v), new_qbit(v));
        }
        default:
          return seq(balanced(env, depth - 1), balanced(env, depth - 1));
      }
    }
  }

  StmtPtr balanced_avoiding(const Environment& env, const VarName& forbidden,
                            int depth) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      StmtPtr s = balanced(env, depth);
      if (!vars_of(*s).count(forbidden)) return s;
    }
    return skip_stmt();
  }

  VarName fresh_from_pool(const Environment& env) {
    std::vector<VarName> avail;
    for (const auto& x : pool)
      if (!env.contains(x)) avail.push_back(x);
    if (avail.empty()) return {};
    return avail[pick(static_cast<int>(avail.size()))];
  }

  // Arbitrary well-formed statement from `env`; output environment varies.
  std::pair<StmtPtr, Environment> anystmt(const Environment& env, int depth) {
    if (depth <= 1) {
      for (;;) {
        switch (pick(4)) {
          case 0:
            return {skip_stmt(), env};
          case 1:
            if (env.empty()) break;
            return {unitary(any_var(env), random_gate(rng)), env};
          case 2: {
            VarName x = fresh_from_pool(env);
            if (x.empty()) break;
            return {new_qbit(x), env.with(x)};
          }
          default:
            if (env.empty()) break;
            {
              VarName v = any_var(env);
              return {discard(v), env.without(v)};
            }
        }
      }
    }
    switch (pick(4)) {
      case 0: {
        auto [s0, mid] = anystmt(env, depth - 1);
        auto [s1, out] = anystmt(mid, depth - 1);
        return {seq(s0, s1), out};
      }
      case 1: {  // meas whose branches both consume the control
        if (env.empty() || depth < 3) break;
        VarName q = any_var(env);
        Environment rest = env.without(q);
        StmtPtr s0 = seq(discard(q), balanced(rest, depth - 2));
        StmtPtr s1 = seq(balanced(env, depth - 2), discard(q));
        return {meas(q, s0, s1), rest};
      }
      case 2: {  // qcase whose branches both introduce a fresh qubit
        if (env.empty() || depth < 3) break;
        VarName q = any_var(env);
        Environment inner = env.without(q);
        VarName x = fresh_from_pool(env);
        if (x.empty()) break;
        StmtPtr s0 =
            seq(new_qbit(x), balanced_avoiding(inner.with(x), q, depth - 2));
        StmtPtr s1 =
            seq(new_qbit(x), balanced_avoiding(inner.with(x), q, depth - 2));
        return {qcase(q, s0, s1), env.with(x)};
      }
      default:
        break;
    }
    return {balanced(env, depth), env};
  }
};

inline Program random_program(Rng& rng, int max_qubits, int depth) {
  std::vector<VarName> names = {"p", "q", "r"};
  names.resize(max_qubits);
  std::uniform_int_distribution<int> sz(0, max_qubits);
  int n = sz(rng);
  Environment env(std::vector<VarName>(names.begin(), names.begin() + n));
  StmtGen gen{rng, names};
  auto [stmt, out] = gen.anystmt(env, depth);
  return Program{env, stmt, out};
}

// S_CNOT, COIN, LOOP, COIN1 and friends, exactly as in the worked examples.
inline StmtPtr cnot_stmt(const VarName& c, const VarName& t) {
  return qcase(c, skip_stmt(), unitary(t, named_gate("X")));
}

inline StmtPtr swap_stmt(const VarName& p, const VarName& q) {
  return seq(cnot_stmt(p, q), seq(cnot_stmt(q, p), cnot_stmt(p, q)));
}

inline StmtPtr coin_stmt(const VarName& q) {
  return while_loop(q, unitary(q, named_gate("H")));
}

inline StmtPtr loop_example(const VarName& r) {
  return seq(new_qbit(r),
             seq(unitary(r, named_gate("X")),
                 seq(while_loop(r, skip_stmt()), discard(r))));
}

inline StmtPtr coin1_stmt(const VarName& q) {
  return seq(new_qbit(q),
             seq(unitary(q, named_gate("H")),
                 meas(q, skip_stmt(), skip_stmt())));
}

// M_{S0,S1}: new q'; CNOT(q,q'); qcase q' (0 -> S0, 1 -> S1); discard q'.
inline StmtPtr meas_encoding(const VarName& q, const VarName& qp, StmtPtr s0,
                             StmtPtr s1) {
  return seq(new_qbit(qp),
             seq(cnot_stmt(q, qp), seq(qcase(qp, s0, s1), discard(qp))));
}

// Multiset equality of ensembles up to `tol` on states, by greedy matching.
inline bool ensembles_equal(const OutputEnsemble& a, const OutputEnsemble& b,
                            double tol) {
  if (!(a.out_env == b.out_env) || a.items.size() != b.items.size())
    return false;
  std::vector<bool> used(b.items.size(), false);
  for (const auto& va : a.items) {
    bool matched = false;
    for (size_t j = 0; j < b.items.size(); ++j) {
      if (used[j] || b.items[j].default_bit != va.default_bit) continue;
      if ((b.items[j].state - va.state).cwiseAbs().maxCoeff() <= tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

inline Mat cnot_matrix() {
  Mat m = Mat::Identity(4, 4);
  m(2, 2) = m(3, 3) = 0;
  m(2, 3) = m(3, 2) = 1;
  return m;
}

inline Mat swap_matrix() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = 1;
  return m;
}

}  // namespace qctl::testing

#endif  // QCTL_TESTS_TESTUTIL_HPP
