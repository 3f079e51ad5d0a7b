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

#ifndef QCTL_ANALYSIS_HPP
#define QCTL_ANALYSIS_HPP

#include <optional>

#include "qctl/densem.hpp"
#include "qctl/opsem.hpp"

namespace qctl {

struct NotDistinct : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cross-check of the two semantics on one input: C(|psi><psi|) against the
// ensemble's density sum, and F|psi> against its default-weighted state sum.
// The transformation side is exact at any fuel (truncated derivations carry
// default bit 0), so only the density side gets the truncated-mass allowance.
struct AdequacyReport {
  double density_residual = 0.0;
  double transform_residual = 0.0;
  double truncated_mass = 0.0;
  bool verdict = false;
};

AdequacyReport check_adequacy(const Program& prog, const Vec& psi,
                              const EvalOptions& opts = {}, double tol = 1e-6,
                              const LfpConfig& cfg = {});

// p(S, |psi>) = Tr(C(|psi><psi|)) / Tr(|psi><psi|). Throws ZeroInput.
double probability_denotational(const Program& prog, const Vec& psi,
                                const LfpConfig& cfg = {});

// A compatible closing context with p(ctx[S1]) - p(ctx[S2]) = lambda_0, the
// leading eigenvalue of the prepared-state output difference.
struct Distinguisher {
  Context ctx;
  Vec prepared_input;  // the state the context feeds into the hole
  double p_gap;        // |lambda_0|
};

// Constructs the distinguishing context for programs with distinct
// denotations: prepare a maximizing input, run the hole, rotate the
// difference's eigenbasis onto the computational basis, then accept only
// outcome 0...0 (anything else diverges). When only the transformation
// matrices differ, the hole is first wrapped in a qcase against a padding
// statement. Throws NotDistinct if the denotations agree within tol.
Distinguisher make_distinguisher(const Program& p1, const Program& p2,
                                 double tol = 1e-9, const LfpConfig& cfg = {});

struct EquivVerdict {
  bool equivalent = false;
  std::optional<Distinguisher> witness;  // present iff not equivalent
};

// Full abstraction: observational equivalence is decided by comparing
// denotations entrywise; a witness context is produced on inequality.
EquivVerdict equivalent(const Program& p1, const Program& p2,
                        double tol = 1e-9, const LfpConfig& cfg = {});

}  // namespace qctl

#endif  // QCTL_ANALYSIS_HPP
