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

#ifndef QCTL_LINALG_HPP
#define QCTL_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qctl/syntax.hpp"

// Dense complex linear algebra over qubit registers.
//
// Conventions, fixed once for the whole project:
//  * The i-th variable of an environment (⪯-ascending) is the i-th qubit
//    factor, with the FIRST variable as the most significant bit:
//    |b_1 ... b_n> has basis index sum_i b_i 2^{n-i}.
//  * Operators are vectorized column-major: vec(rho)[i + j*d] = rho(i,j).
//    The matrix of a superoperator depends on this choice.
//  * Hilbert space of the empty environment has dimension 1.

namespace qctl {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPsdTol = 1e-9;    // min eigenvalue floor for PSD
inline constexpr double kHermTol = 1e-10;  // Hermiticity tolerance

struct EnvOverlap : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct VarMissing : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotHermitian : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidKraus : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ShapeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Mat kron(const Mat& a, const Mat& b);
Vec vec(const Mat& rho);
Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols);
double max_abs(const Mat& m);

// PERM_pi = sum |b_{pi(1)}...b_{pi(n)}><b_1...b_n| for a 0-based permutation
// pi of {0..n-1}: bit i of the output index is bit pi(i) of the input index.
Mat perm_matrix(const std::vector<int>& pi);

// |psi>_A ⊗ |phi>_B with the variables of both environments merged into
// ⪯-ascending order. Throws EnvOverlap when the environments intersect.
Vec ordered_tensor(const Vec& psi, const Environment& env_a, const Vec& phi,
                   const Environment& env_b);
// The merge permutation realizing ordered_tensor as PERM * (psi ⊗ phi).
std::vector<int> merge_permutation(const Environment& env_a,
                                   const Environment& env_b);

// Relabels the qubits of an operator: both orders list the same variables,
// and the result acts identically on states expressed in `to` order.
Mat reorder_qubits(const Mat& m, const std::vector<VarName>& from,
                   const std::vector<VarName>& to);

// Single-qubit embeddings at q's ⪯-position.
Mat gate_on(const VarName& q, const Environment& env, const Eigen::Matrix2cd& u);
// <k|_q ⊗ I: dim(env∖q) × dim(env); env must contain q.
Mat bra_select(const VarName& q, const Environment& env, int k);
// |k>_q ⊗ I: dim(env∪q) × dim(env); env must not contain q.
Mat ket_insert(const VarName& q, const Environment& env, int k);

// Shape-directed embedding: 2×2 gates, 1×2 bras (shrinking) and 2×1 kets
// (growing), per the in-scope projector/creation forms of the semantics.
Mat embed_on(const VarName& q, const Environment& env, const Mat& m2);

// A linear map on operators, stored as the (out_dim²) × (in_dim²) matrix
// acting on column-major vectorizations.
struct Superoperator {
  Eigen::Index in_dim = 1;
  Eigen::Index out_dim = 1;
  Mat m;

  Mat apply(const Mat& rho) const;
};

Superoperator identity_superop(Eigen::Index d);
Superoperator zero_superop(Eigen::Index in_dim, Eigen::Index out_dim);
// K (·) K†
Superoperator conjugation_superop(const Mat& k);
Superoperator kraus_superop(const std::vector<Mat>& ks);
Superoperator compose(const Superoperator& s2, const Superoperator& s1);
Superoperator add(const Superoperator& a, const Superoperator& b);
// S1 ⊗ S2 acting on the tensor product, factor 1 most significant.
Superoperator superop_tensor(const Superoperator& s1, const Superoperator& s2);
bool superop_approx_equal(const Superoperator& a, const Superoperator& b,
                          double tol);

// Tr_q and P_k^q = |k><k|_q (·) |k><k|_q over env (which must contain q).
Superoperator traceout_superop(const VarName& q, const Environment& env);
Superoperator proj_superop(const VarName& q, const Environment& env, int k);

// Choi matrix (I ⊗ S)(|Omega><Omega|) with |Omega> = sum_i |i>|i>,
// unnormalized; block (i,j) of size out_dim holds S(|i><j|).
Mat choi(const Superoperator& s);
Superoperator superop_from_choi(const Mat& c, Eigen::Index in_dim,
                                Eigen::Index out_dim);
bool is_completely_positive(const Superoperator& s, double tol = kPsdTol);
bool is_trace_nonincreasing(const Superoperator& s, double tol = kPsdTol);

// A ≤ B in the Löwner order: B − A PSD. Throws NotHermitian when either
// argument fails Hermiticity within kHermTol.
bool loewner_leq(const Mat& a, const Mat& b, double tol = kPsdTol);

// Kraus operators of a common shape with their vacuum amplitudes nu_i.
// Invariants: sum K†K ≤ I + 1e-9 (Löwner) and sum |nu|² = 1 ± 1e-9.
struct KrausSet {
  std::vector<Mat> ops;
  std::vector<Cplx> vacuum_amps;
};

void validate_kraus(const KrausSet& ks);  // throws InvalidKraus

}  // namespace qctl

#endif  // QCTL_LINALG_HPP
