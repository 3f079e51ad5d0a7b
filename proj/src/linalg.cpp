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

#include "qctl/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace qctl {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec vec(const Mat& rho) {
  Vec v(rho.size());
  Eigen::Index d = rho.rows();
  for (Eigen::Index j = 0; j < rho.cols(); ++j)
    for (Eigen::Index i = 0; i < d; ++i) v(i + j * d) = rho(i, j);
  return v;
}

Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw ShapeMismatch("unvec: size mismatch");
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = v(i + j * rows);
  return m;
}

double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace {

int bit_of(Eigen::Index x, int pos, int n) {
  // pos 0 = most significant of n bits.
  return static_cast<int>((x >> (n - 1 - pos)) & 1);
}

Eigen::Index with_bit(Eigen::Index x, int pos, int n, int b) {
  Eigen::Index mask = Eigen::Index{1} << (n - 1 - pos);
  return b ? (x | mask) : (x & ~mask);
}

}  // namespace

Mat perm_matrix(const std::vector<int>& pi) {
  int n = static_cast<int>(pi.size());
  std::vector<bool> seen(n, false);
  for (int p : pi) {
    if (p < 0 || p >= n || seen[p])
      throw std::invalid_argument("perm_matrix: not a permutation");
    seen[p] = true;
  }
  Eigen::Index d = Eigen::Index{1} << n;
  Mat out = Mat::Zero(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    Eigen::Index r = 0;
    for (int i = 0; i < n; ++i) r = with_bit(r, i, n, bit_of(c, pi[i], n));
    out(r, c) = 1.0;
  }
  return out;
}

std::vector<int> merge_permutation(const Environment& env_a,
                                   const Environment& env_b) {
  // Logical order: env_a's variables then env_b's. pi maps merged position
  // to logical position.
  Environment merged = env_union(env_a, env_b);
  std::vector<int> pi;
  pi.reserve(merged.size());
  for (const auto& q : merged) {
    int ia = env_a.index_of(q);
    pi.push_back(ia >= 0 ? ia : env_a.size() + env_b.index_of(q));
  }
  return pi;
}

Vec ordered_tensor(const Vec& psi, const Environment& env_a, const Vec& phi,
                   const Environment& env_b) {
  if (!env_disjoint(env_a, env_b))
    throw EnvOverlap("ordered_tensor: overlapping environments");
  if (psi.size() != env_a.dim() || phi.size() != env_b.dim())
    throw ShapeMismatch("ordered_tensor: dimension mismatch");
  Environment merged = env_union(env_a, env_b);
  int n = merged.size();
  int na = env_a.size();
  std::vector<int> pos(n);  // merged position of each logical qubit
  {
    int i = 0;
    for (const auto& q : env_a) pos[i++] = merged.index_of(q);
    for (const auto& q : env_b) pos[i++] = merged.index_of(q);
  }
  Vec out = Vec::Zero(merged.dim());
  for (Eigen::Index ca = 0; ca < psi.size(); ++ca)
    for (Eigen::Index cb = 0; cb < phi.size(); ++cb) {
      Eigen::Index r = 0;
      for (int i = 0; i < na; ++i)
        r = with_bit(r, pos[i], n, bit_of(ca, i, na));
      for (int i = 0; i < n - na; ++i)
        r = with_bit(r, pos[na + i], n, bit_of(cb, i, n - na));
      out(r) = psi(ca) * phi(cb);
    }
  return out;
}

Mat reorder_qubits(const Mat& m, const std::vector<VarName>& from,
                   const std::vector<VarName>& to) {
  int n = static_cast<int>(from.size());
  if (to.size() != from.size())
    throw ShapeMismatch("reorder_qubits: order size mismatch");
  Eigen::Index d = Eigen::Index{1} << n;
  if (m.rows() != d || m.cols() != d)
    throw ShapeMismatch("reorder_qubits: matrix dimension mismatch");
  // index map: to-basis index -> from-basis index
  std::vector<int> src(n);
  for (int i = 0; i < n; ++i) {
    auto it = std::find(from.begin(), from.end(), to[i]);
    if (it == from.end())
      throw std::invalid_argument("reorder_qubits: orders differ in variables");
    src[i] = static_cast<int>(it - from.begin());
  }
  std::vector<Eigen::Index> map(d);
  for (Eigen::Index x = 0; x < d; ++x) {
    Eigen::Index y = 0;
    for (int i = 0; i < n; ++i) y = with_bit(y, i, n, bit_of(x, src[i], n));
    map[y] = x;  // to-index y corresponds to from-index x
  }
  Mat out(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) out(r, c) = m(map[r], map[c]);
  return out;
}

Mat gate_on(const VarName& q, const Environment& env,
            const Eigen::Matrix2cd& u) {
  int p = env.index_of(q);
  if (p < 0) throw VarMissing("gate_on: '" + q + "' not in environment");
  int n = env.size();
  Eigen::Index d = env.dim();
  Mat out = Mat::Zero(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    int bc = bit_of(c, p, n);
    for (int br = 0; br < 2; ++br) {
      Cplx val = u(br, bc);
      if (val != 0.0) out(with_bit(c, p, n, br), c) += val;
    }
  }
  return out;
}

Mat bra_select(const VarName& q, const Environment& env, int k) {
  int p = env.index_of(q);
  if (p < 0) throw VarMissing("bra_select: '" + q + "' not in environment");
  int n = env.size();
  Environment rest = env.without(q);
  Mat out = Mat::Zero(rest.dim(), env.dim());
  for (Eigen::Index c = 0; c < env.dim(); ++c) {
    if (bit_of(c, p, n) != k) continue;
    // drop bit p
    Eigen::Index r = 0;
    int j = 0;
    for (int i = 0; i < n; ++i) {
      if (i == p) continue;
      r = with_bit(r, j++, n - 1, bit_of(c, i, n));
    }
    out(r, c) = 1.0;
  }
  return out;
}

Mat ket_insert(const VarName& q, const Environment& env, int k) {
  Environment grown = env.with(q);  // throws if present
  return bra_select(q, grown, k).transpose();
}

Mat embed_on(const VarName& q, const Environment& env, const Mat& m2) {
  if (m2.rows() == 2 && m2.cols() == 2) {
    Eigen::Matrix2cd u = m2;
    return gate_on(q, env, u);
  }
  if (m2.rows() == 1 && m2.cols() == 2)
    return m2(0, 0) * bra_select(q, env, 0) + m2(0, 1) * bra_select(q, env, 1);
  if (m2.rows() == 2 && m2.cols() == 1)
    return m2(0, 0) * ket_insert(q, env, 0) + m2(1, 0) * ket_insert(q, env, 1);
  throw ShapeMismatch("embed_on: expected 2x2, 1x2 or 2x1");
}

Mat Superoperator::apply(const Mat& rho) const {
  if (rho.rows() != in_dim || rho.cols() != in_dim)
    throw ShapeMismatch("Superoperator::apply: dimension mismatch");
  return unvec(m * vec(rho), out_dim, out_dim);
}

Superoperator identity_superop(Eigen::Index d) {
  return {d, d, Mat::Identity(d * d, d * d)};
}

Superoperator zero_superop(Eigen::Index in_dim, Eigen::Index out_dim) {
  return {in_dim, out_dim, Mat::Zero(out_dim * out_dim, in_dim * in_dim)};
}

Superoperator conjugation_superop(const Mat& k) {
  return {k.cols(), k.rows(), kron(k.conjugate(), k)};
}

Superoperator kraus_superop(const std::vector<Mat>& ks) {
  if (ks.empty()) throw InvalidKraus("empty Kraus list");
  Superoperator s = conjugation_superop(ks[0]);
  for (size_t i = 1; i < ks.size(); ++i) {
    if (ks[i].rows() != ks[0].rows() || ks[i].cols() != ks[0].cols())
      throw InvalidKraus("Kraus operators of mixed shape");
    s.m += kron(ks[i].conjugate(), ks[i]);
  }
  return s;
}

Superoperator compose(const Superoperator& s2, const Superoperator& s1) {
  if (s1.out_dim != s2.in_dim)
    throw ShapeMismatch("superoperator composition: dimension mismatch");
  // Exact identity and zero factors are frequent (skip bodies, lfp seeds);
  // skipping the product keeps lfp iteration cheap on large registers.
  // Identity only counts on square maps: rectangular embeddings such as
  // vec(|0><0|) pass Eigen's entrywise isIdentity test.
  if (s1.in_dim == s1.out_dim && s1.m.isIdentity(0.0)) return s2;
  if (s2.in_dim == s2.out_dim && s2.m.isIdentity(0.0))
    return {s1.in_dim, s2.out_dim, s1.m};
  if (s1.m.isZero(0.0) || s2.m.isZero(0.0))
    return zero_superop(s1.in_dim, s2.out_dim);
  return {s1.in_dim, s2.out_dim, s2.m * s1.m};
}

Superoperator add(const Superoperator& a, const Superoperator& b) {
  if (a.in_dim != b.in_dim || a.out_dim != b.out_dim)
    throw ShapeMismatch("superoperator addition: dimension mismatch");
  return {a.in_dim, a.out_dim, a.m + b.m};
}

Superoperator superop_tensor(const Superoperator& s1, const Superoperator& s2) {
  Eigen::Index in_dim = s1.in_dim * s2.in_dim;
  Eigen::Index out_dim = s1.out_dim * s2.out_dim;
  Superoperator out = zero_superop(in_dim, out_dim);
  // Column for the matrix unit E_{(i1 i2),(j1 j2)} is
  // vec(S1(E_{i1 j1}) ⊗ S2(E_{i2 j2})).
  for (Eigen::Index i1 = 0; i1 < s1.in_dim; ++i1)
    for (Eigen::Index j1 = 0; j1 < s1.in_dim; ++j1) {
      Mat b1 = unvec(s1.m.col(i1 + j1 * s1.in_dim), s1.out_dim, s1.out_dim);
      for (Eigen::Index i2 = 0; i2 < s2.in_dim; ++i2)
        for (Eigen::Index j2 = 0; j2 < s2.in_dim; ++j2) {
          Mat b2 = unvec(s2.m.col(i2 + j2 * s2.in_dim), s2.out_dim, s2.out_dim);
          Eigen::Index col = (i1 * s2.in_dim + i2) +
                             (j1 * s2.in_dim + j2) * in_dim;
          out.m.col(col) = vec(kron(b1, b2));
        }
    }
  return out;
}

bool superop_approx_equal(const Superoperator& a, const Superoperator& b,
                          double tol) {
  return a.in_dim == b.in_dim && a.out_dim == b.out_dim &&
         max_abs(a.m - b.m) <= tol;
}

Superoperator traceout_superop(const VarName& q, const Environment& env) {
  return kraus_superop({bra_select(q, env, 0), bra_select(q, env, 1)});
}

Superoperator proj_superop(const VarName& q, const Environment& env, int k) {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  p(k, k) = 1.0;
  return conjugation_superop(gate_on(q, env, p));
}

Mat choi(const Superoperator& s) {
  Eigen::Index di = s.in_dim, dout = s.out_dim;
  Mat c = Mat::Zero(di * dout, di * dout);
  for (Eigen::Index i = 0; i < di; ++i)
    for (Eigen::Index j = 0; j < di; ++j) {
      Mat block = unvec(s.m.col(i + j * di), dout, dout);
      c.block(i * dout, j * dout, dout, dout) = block;
    }
  return c;
}

Superoperator superop_from_choi(const Mat& c, Eigen::Index in_dim,
                                Eigen::Index out_dim) {
  if (c.rows() != in_dim * out_dim || c.cols() != in_dim * out_dim)
    throw ShapeMismatch("superop_from_choi: dimension mismatch");
  Superoperator s = zero_superop(in_dim, out_dim);
  for (Eigen::Index i = 0; i < in_dim; ++i)
    for (Eigen::Index j = 0; j < in_dim; ++j)
      s.m.col(i + j * in_dim) =
          vec(c.block(i * out_dim, j * out_dim, out_dim, out_dim));
  return s;
}

namespace {

double min_eigenvalue(const Mat& h) {
  Mat sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

bool is_completely_positive(const Superoperator& s, double tol) {
  Mat c = choi(s);
  if (max_abs(c - c.adjoint()) > kHermTol * std::max(1.0, max_abs(c)))
    return false;  // not Hermitian-preserving, hence not CP
  return min_eigenvalue(c) >= -tol;
}

bool is_trace_nonincreasing(const Superoperator& s, double tol) {
  // Tr S(rho) = Tr(W rho) with vec(W†) = m† vec(I); trace non-increase on
  // every density matrix is I − W ⪰ 0.
  Mat id = Mat::Identity(s.out_dim, s.out_dim);
  Mat w = unvec(s.m.adjoint() * vec(id), s.in_dim, s.in_dim);
  return min_eigenvalue(Mat::Identity(s.in_dim, s.in_dim) - w) >= -tol;
}

bool loewner_leq(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw ShapeMismatch("loewner_leq: dimension mismatch");
  double scale = std::max(1.0, std::max(max_abs(a), max_abs(b)));
  if (max_abs(a - a.adjoint()) > kHermTol * scale)
    throw NotHermitian("loewner_leq: first argument");
  if (max_abs(b - b.adjoint()) > kHermTol * scale)
    throw NotHermitian("loewner_leq: second argument");
  return min_eigenvalue(b - a) >= -tol;
}

void validate_kraus(const KrausSet& ks) {
  if (ks.ops.empty() || ks.ops.size() != ks.vacuum_amps.size())
    throw InvalidKraus("Kraus operators and vacuum amplitudes must pair up");
  for (const auto& k : ks.ops)
    if (k.rows() != ks.ops[0].rows() || k.cols() != ks.ops[0].cols())
      throw InvalidKraus("Kraus operators of mixed shape");
  Mat acc = Mat::Zero(ks.ops[0].cols(), ks.ops[0].cols());
  for (const auto& k : ks.ops) acc += k.adjoint() * k;
  if (!loewner_leq(acc, Mat::Identity(acc.rows(), acc.cols())))
    throw InvalidKraus("sum K†K exceeds the identity");
  double lambda = 0;
  for (const auto& nu : ks.vacuum_amps) lambda += std::norm(nu);
  if (std::abs(lambda - 1.0) > 1e-9)
    throw InvalidKraus("vacuum amplitudes must satisfy sum |nu|^2 = 1");
}

}  // namespace qctl
