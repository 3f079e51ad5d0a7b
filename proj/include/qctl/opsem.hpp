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

#ifndef QCTL_OPSEM_HPP
#define QCTL_OPSEM_HPP

#include "qctl/linalg.hpp"
#include "qctl/wellformed.hpp"

namespace qctl {

struct IllFormed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ZeroInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Configuration {
  StmtPtr stmt;
  Vec state;  // subnormalized, dim 2^|env|
  Environment env;
};

// One big-step derivation target: final state plus the default bit.
struct Value {
  Vec state;
  int default_bit = 0;
};

// The fuel-bounded prefix of the output ensemble. `items` holds one entry per
// enumerated derivation (multiset semantics); derivations cut off by fuel are
// accounted for by `truncated_mass`, an upper bound on their total squared
// norm. The value (0,0) is never stored.
struct OutputEnsemble {
  std::vector<Value> items;
  double truncated_mass = 0.0;
  Environment out_env;

  double mass() const;  // sum of squared norms over items
};

struct EvalOptions {
  // Number of (W1) unrollings enumerated per while node; derivations needing
  // more contribute to truncated_mass instead. Running out of fuel is not an
  // error.
  int fuel = 64;
  // Items with default bit 0 and squared norm below this are folded into
  // truncated_mass. Exact zeros are always dropped; the default item never is.
  double prune_eps = 0.0;
};

OutputEnsemble eval(const Configuration& cfg, const EvalOptions& opts = {});

// Certified bracket of the termination probability: the exact value lies in
// [p_lower, p_upper] = [sum_i |psi'_i|^2, + truncated_mass] / |psi|^2.
std::pair<double, double> probability(const Program& prog, const Vec& psi,
                                      const EvalOptions& opts = {});

// The unique derivation with default bit 1; follows (D0)/(M0)/(W0) only and
// therefore needs no fuel.
Value default_value(const Configuration& cfg);

}  // namespace qctl

#endif  // QCTL_OPSEM_HPP
