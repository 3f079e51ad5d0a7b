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

#ifndef QCTL_DENSEM_HPP
#define QCTL_DENSEM_HPP

#include "qctl/vacext.hpp"
#include "qctl/wellformed.hpp"

namespace qctl {

struct LfpConfig {
  double tol = 1e-12;  // max-entry convergence threshold over (C, F)
  int max_iter = 2000;
};

struct NotWellFormed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DenoteResult {
  VacExt v;
  // Worst while loop encountered: final iterate delta, iteration count, and
  // whether every loop met the tolerance. A non-converged result is still a
  // valid lower bound of the least fixed point (the iterates are monotone).
  double residual = 0.0;
  int iterations = 0;
  bool converged = true;
};

// [[S]]_Γ per the compositional rules; while loops are Kleene-iterated from
// (0,0) with exact-fixpoint short-circuit. Throws NotWellFormed.
DenoteResult denote(const Program& prog, const LfpConfig& cfg = {});
DenoteResult denote(const Environment& in_env, const StmtPtr& stmt,
                    const LfpConfig& cfg = {});

// Kleene iterates of the while functional for inspection/tests:
// iterates[k] is the k-th application of the functional to (0,0), k = 0..n.
std::vector<VacExt> while_iterates(const VarName& q, const VacExt& body,
                                   int n);

}  // namespace qctl

#endif  // QCTL_DENSEM_HPP
