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

#ifndef QCTL_SYNTH_HPP
#define QCTL_SYNTH_HPP

#include "qctl/vacext.hpp"
#include "qctl/wellformed.hpp"

namespace qctl {

struct NotUnitary : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotSubUnitary : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Fresh ancilla names `_a0, _a1, ...`, skipping anything already claimed.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(const std::set<VarName>& used) : used_(used) {}
  void claim(const Environment& env);
  void claim(const std::set<VarName>& names);
  VarName fresh();

 private:
  std::set<VarName> used_;
  int next_ = 0;
};

// A unitary acting nontrivially on exactly the basis indices i < j, with the
// 2×2 core oriented so row 0 corresponds to index i.
struct TwoLevelFactor {
  Eigen::Index i, j;
  Eigen::Matrix2cd core;
};

// Factors U into two-level unitaries: two_level_product(factors, d) equals U
// (square input), or has U as its first columns (isometry input, cols < rows).
std::vector<TwoLevelFactor> two_level_decompose(const Mat& u);
Mat two_level_product(const std::vector<TwoLevelFactor>& fs, Eigen::Index d);

// Extends a sub-unitary (U†U ≤ I) to a square unitary, padded to a power of
// two, with U in the top-left corner; the defect is completed through the
// PSD square root of I − U†U and a QR complement.
Mat complete_subunitary(const Mat& u);

// Statement of single-qubit gates and nested qcase controls whose denotation
// is (U(·)U†, U) on `env`. Gray-code routing turns each two-level factor into
// fully-controlled gates.
StmtPtr unitary_to_program(const Mat& u, const Environment& env,
                           FreshNames& fresh);
StmtPtr unitary_to_program(const Mat& u, const Environment& env);

// Statement denoting (U(·)U†, U) for a sub-unitary U: ancilla preparation,
// the completed unitary, a measurement cascade funnelling failure into a
// non-terminating loop, then discards and renames down to out_env.
StmtPtr subunitary_to_program(const Mat& u, const Environment& in_env,
                              const Environment& out_env, FreshNames& fresh);
StmtPtr subunitary_to_program(const Mat& u, const Environment& in_env,
                              const Environment& out_env);

// Stacks the Kraus operators into one sub-unitary column block over fresh
// ancilla qubits: (C,F) = (Tr_anc, <anc_state| ⊗ I) ∘ (U(·)U†, U).
struct KrausFactorization {
  Mat u;                // dim(anc_env ∪ out_env) × dim(in_env), sub-unitary
  Environment anc_env;  // 2^|anc_env| = padded Kraus count
  Vec anc_state;        // sum_i nu_i |e_i>, unit norm
};
KrausFactorization stack_kraus(const KrausSet& ks, const Environment& in_env,
                               const Environment& out_env, FreshNames& fresh);

// Universality: a program (in_env; S; out_env) with denotation v, within
// numerical tolerance. Throws InvalidVacExt when validate(v) fails.
Program synthesize(const VacExt& v);

// Unitary with U|0...0> = psi (psi unit), via a phase-aligned Householder
// reflection.
Mat state_prep_unitary(const Vec& psi);

// The non-terminating loop gadget over a fresh control qubit.
StmtPtr loop_stmt(const VarName& fresh_var);
// rename p -> q: new qbit q; swap; discard p.
StmtPtr rename_stmt(const VarName& p, const VarName& q);

}  // namespace qctl

#endif  // QCTL_SYNTH_HPP
