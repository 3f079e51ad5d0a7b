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

#ifndef QCTL_VACEXT_HPP
#define QCTL_VACEXT_HPP

#include "qctl/linalg.hpp"
#include "qctl/syntax.hpp"

namespace qctl {

struct EnvMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ControlInEnv : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidVacExt : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A vacuum-extended operation with unit vacuum weight, represented as the
// pair (C, F): C maps operators on H_in to operators on H_out, and F is the
// transformation matrix sum_i conj(nu_i) K_i. Membership in the semantic
// domain means the extension below is completely positive and trace
// non-increasing.
struct VacExt {
  Superoperator C;
  Mat F;  // dim(out_env) × dim(in_env)
  Environment in_env, out_env;
};

VacExt identity_vacext(const Environment& env);
VacExt zero_vacext(const Environment& in_env, const Environment& out_env);
bool vacext_approx_equal(const VacExt& a, const VacExt& b, double tol);
double vacext_distance(const VacExt& a, const VacExt& b);  // max-entry

// The extension acting on H_in ⊕ Vac (basis index dim(in) is |vac>):
//   [[rho_AA, rho_Av], [rho_vA, rho_vv]]
//     |-> [[C(rho_AA), F rho_Av], [rho_vA F†, rho_vv]].
// Equivalently the Kraus-sum map of {K_i ⊕ nu_i |vac><vac|}.
Superoperator extend(const VacExt& v);

// True iff extend(v) is completely positive and trace non-increasing.
bool validate(const VacExt& v);

// (D, G) ∘ (C, F) = (D∘C, GF); requires d1.out_env == d2.in_env.
VacExt compose(const VacExt& d2, const VacExt& d1);

// meas_q[(C0,F0),(C1,F1)] = (C0∘P0^q + C1∘P1^q, F0 |0><0|_q). Both operands
// must share input environment (containing q) and output environment.
VacExt meas_bar(const VarName& q, const VacExt& d0, const VacExt& d1);

// qcase_q[(C0,F0),(C1,F1)]: on input blocks [[A,B],[C,D]] with respect to q,
// produces [[C0(A), F0 B F1†],[F1 C F0†, C1(D)]] with transformation matrix
// |0><0|_q ⊗ F0 + |1><1|_q ⊗ F1; q is inserted at its ⪯-position on both
// sides. Operands share environments, which must not contain q.
VacExt qcase_bar(const VarName& q, const VacExt& d0, const VacExt& d1);

// (C, F) with C the Kraus-sum superoperator and F = sum conj(nu_i) K_i.
VacExt kraus_to_vacext(const KrausSet& ks, const Environment& in_env,
                       const Environment& out_env);

// The measurement branch selectors of the meas decomposition law:
// T0(rho) = (|0><0|_q ⊕ |vac><vac|) rho (…), T1(rho) = |1><1|_q rho |1><1|_q,
// as superoperators on the extended space. Used by verification tests.
Superoperator extended_selector(const VarName& q, const Environment& env,
                                int k);

}  // namespace qctl

#endif  // QCTL_VACEXT_HPP
