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
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every tolerance is pinned in code next to its check.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qctl/analysis.hpp"
#include "qctl/parser.hpp"
#include "qctl/synth.hpp"
#include "../testutil.hpp"

using namespace qctl;
using namespace qctl::testing;

namespace {

// Denotations produced by criteria 1-8, revalidated wholesale by criterion 9.
std::vector<VacExt> g_denotations;

VacExt track(const VacExt& v) {
  g_denotations.push_back(v);
  return v;
}

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      detail = msg;
    }
  }
  void require_le(double value, double bound, const std::string& what) {
    if (value > bound && ok) {
      ok = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s = %.3g exceeds %.3g", what.c_str(),
                    value, bound);
      detail = buf;
    }
  }
};

// --------------------------------------------------------------------------
// 1. CNOT/SWAP golden (tolerance 1e-12)
// --------------------------------------------------------------------------
Check criterion_cnot_swap() {
  Check c;
  Environment ct{"c", "t"};
  VacExt dcnot = track(denote(ct, cnot_stmt("c", "t")).v);
  c.require_le(max_abs(dcnot.C.m - conjugation_superop(cnot_matrix()).m), 1e-12,
               "CNOT C distance");
  c.require_le(max_abs(dcnot.F - cnot_matrix()), 1e-12, "CNOT F distance");

  Environment pq{"p", "q"};
  VacExt dswap = track(denote(pq, swap_stmt("p", "q")).v);
  c.require_le(max_abs(dswap.C.m - conjugation_superop(swap_matrix()).m), 1e-12,
               "SWAP C distance");
  c.require_le(max_abs(dswap.F - swap_matrix()), 1e-12, "SWAP F distance");
  return c;
}

// --------------------------------------------------------------------------
// 2. COIN golden: (Tr(.)|0><0|, |0><0|) within 1e-9 in <= 200 iterations;
//    probability bracket contains 1 with width <= 2^-60 at fuel 60
//    (1e-12 slack for double-precision summation).
// --------------------------------------------------------------------------
Check criterion_coin() {
  Check c;
  Environment q{"q"};
  DenoteResult res = denote(q, coin_stmt("q"));
  track(res.v);
  c.require(res.converged, "lfp did not converge");
  c.require(res.iterations <= 200, "lfp took more than 200 iterations");
  Mat k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, 0;
  k1 << 0, 1, 0, 0;
  Superoperator limit = kraus_superop({k0, k1});  // Tr(.)|0><0|
  c.require_le(max_abs(res.v.C.m - limit.m), 1e-9, "COIN C distance");
  c.require_le(max_abs(res.v.F - k0), 1e-9, "COIN F distance");

  Program coin = make_program(q, coin_stmt("q"));
  Rng rng(2026);
  std::vector<Vec> inputs;
  Vec ab(2);
  ab << 0.6, 0.8;
  inputs.push_back(ab);
  inputs.push_back(named_gate("H").mat.col(0));
  inputs.push_back(random_state(rng, 2));
  for (const Vec& psi : inputs) {
    auto [lo, hi] = probability(coin, psi, EvalOptions{60, 0.0});
    c.require(lo <= 1.0 + 1e-12 && hi >= 1.0 - 1e-12,
              "bracket does not contain 1");
    c.require_le(hi - lo, std::pow(2.0, -60) + 1e-12, "bracket width");
  }
  return c;
}

// --------------------------------------------------------------------------
// 3. LOOP golden: exactly (0,0), fixpoint short-circuit <= 3 iterations,
//    probability bracket (0,0).
// --------------------------------------------------------------------------
Check criterion_loop() {
  Check c;
  DenoteResult res = denote(Environment{}, loop_example("r"));
  track(res.v);
  c.require(max_abs(res.v.C.m) == 0.0, "C is not exactly zero");
  c.require(max_abs(res.v.F) == 0.0, "F is not exactly zero");
  c.require(res.iterations <= 3, "fixpoint not detected within 3 iterations");

  Vec unit(1);
  unit << 1;
  auto [lo, hi] = probability(make_program(Environment{}, loop_example("r")),
                              unit, EvalOptions{64, 0.0});
  c.require(lo == 0.0 && hi == 0.0, "probability bracket is not (0,0)");
  return c;
}

// --------------------------------------------------------------------------
// 4. QCOIN1 golden: the qcase of COIN1 with itself reproduces the printed
//    superoperator table and F matrix (1e-12), and is not observationally
//    equivalent to the lifted COIN1.
// --------------------------------------------------------------------------
Check criterion_qcoin1() {
  Check c;
  VacExt coin1 = track(denote(Environment{}, coin1_stmt("q")).v);
  VacExt qc = track(qcase_bar("p", coin1, coin1));

  auto unit2 = [](int i, int j) {
    Mat m = Mat::Zero(2, 2);
    m(i, j) = 1;
    return m;
  };
  Mat e00 = Mat::Zero(4, 4), e01 = Mat::Zero(4, 4), e10 = Mat::Zero(4, 4),
      e11 = Mat::Zero(4, 4);
  e00(0, 0) = e00(1, 1) = 0.5;
  e01(0, 2) = 0.5;
  e10(2, 0) = 0.5;
  e11(2, 2) = e11(3, 3) = 0.5;
  c.require_le(max_abs(qc.C.apply(unit2(0, 0)) - e00), 1e-12, "block (0,0)");
  c.require_le(max_abs(qc.C.apply(unit2(0, 1)) - e01), 1e-12, "block (0,1)");
  c.require_le(max_abs(qc.C.apply(unit2(1, 0)) - e10), 1e-12, "block (1,0)");
  c.require_le(max_abs(qc.C.apply(unit2(1, 1)) - e11), 1e-12, "block (1,1)");
  Mat f(4, 2);
  f << 1 / std::sqrt(2.0), 0, 0, 0, 0, 1 / std::sqrt(2.0), 0, 0;
  c.require_le(max_abs(qc.F - f), 1e-12, "F matrix");

  Environment p{"p"};
  Program qcoin = make_program(p, qcase("p", coin1_stmt("q"), coin1_stmt("q")));
  Program lifted = make_program(p, coin1_stmt("q"));
  EquivVerdict v = equivalent(qcoin, lifted);
  track(denote(qcoin).v);
  track(denote(lifted).v);
  c.require(!v.equivalent, "QCOIN1 compared equivalent to lifted COIN1");
  c.require(v.witness.has_value() && v.witness->p_gap > 1e-6,
            "missing or degenerate witness");
  return c;
}

// --------------------------------------------------------------------------
// 5. Measurement encoding: 25 randomized branch pairs over <= 2 extra
//    qubits; denotational equality within 1e-9 and ensemble equality after
//    pruning.
// --------------------------------------------------------------------------
Check criterion_meas_encoding() {
  Check c;
  Rng rng(501);
  std::vector<Environment> envs = {Environment{"q"}, Environment{"q", "r"},
                                   Environment{"q", "r", "s"}};
  for (int trial = 0; trial < 25; ++trial) {
    const Environment& env = envs[trial % envs.size()];
    StmtGen gen{rng, {"r", "s"}};
    StmtPtr s0 = gen.balanced_avoiding(env, "q'", 3);
    StmtPtr s1 = gen.balanced_avoiding(env, "q'", 3);
    Program enc = make_program(env, meas_encoding("q", "q'", s0, s1));
    Program dir = make_program(env, meas("q", s0, s1));
    VacExt de = track(denote(enc).v);
    VacExt dd = track(denote(dir).v);
    c.require_le(vacext_distance(de, dd), 1e-9, "denotational distance");

    Vec psi = random_state(rng, env.dim());
    EvalOptions opts{6, 0.0};
    OutputEnsemble ea = eval({enc.stmt, psi, env}, opts);
    OutputEnsemble eb = eval({dir.stmt, psi, env}, opts);
    c.require(ensembles_equal(ea, eb, 1e-12),
              "ensembles differ after pruning (0,0)");
    if (!c.ok) break;
  }
  return c;
}

// --------------------------------------------------------------------------
// 6/7. Adequacy and probability-subdistribution suites over 200 random
//      well-formed programs (<= 3 qubits, AST depth <= 4, fuel 64).
// --------------------------------------------------------------------------
struct SuiteCase {
  Program prog;
  AdequacyReport report;
  int defaults = 0;
  double mass_plus_truncated = 0.0;
  double input_norm2 = 1.0;
};

const std::vector<SuiteCase>& random_suite() {
  static const std::vector<SuiteCase> cases = [] {
    std::vector<SuiteCase> out;
    Rng rng(600);
    EvalOptions opts{64, 1e-9};
    for (int i = 0; i < 200; ++i) {
      SuiteCase sc;
      sc.prog = random_program(rng, 3, 4);
      Vec psi = random_state(rng, sc.prog.in_env.dim());
      sc.input_norm2 = psi.squaredNorm();
      sc.report = check_adequacy(sc.prog, psi, opts, 1e-6);
      track(denote(sc.prog).v);
      OutputEnsemble ens = eval({sc.prog.stmt, psi, sc.prog.in_env}, opts);
      for (const auto& v : ens.items) sc.defaults += v.default_bit;
      sc.mass_plus_truncated = ens.mass() + ens.truncated_mass;
      out.push_back(std::move(sc));
    }
    return out;
  }();
  return cases;
}

Check criterion_adequacy() {
  Check c;
  int idx = 0;
  for (const auto& sc : random_suite()) {
    ++idx;
    if (!sc.report.verdict) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "case %d: density %.3g (mass %.3g), transform %.3g", idx,
                    sc.report.density_residual, sc.report.truncated_mass,
                    sc.report.transform_residual);
      c.require(false, buf);
      break;
    }
  }
  return c;
}

Check criterion_prob_distr() {
  Check c;
  int idx = 0;
  for (const auto& sc : random_suite()) {
    ++idx;
    c.require(sc.defaults == 1, "case " + std::to_string(idx) +
                                    ": default count " +
                                    std::to_string(sc.defaults));
    c.require_le(sc.mass_plus_truncated, sc.input_norm2 + 1e-9,
                 "case " + std::to_string(idx) + ": probability sum");
    if (!c.ok) break;
  }
  return c;
}

// --------------------------------------------------------------------------
// 8. Interchange law: 100 random valid operand quadruples, 1e-10.
// --------------------------------------------------------------------------
Check criterion_interchange() {
  Check c;
  Rng rng(800);
  Environment g1{"r"}, g2{"s"}, g3{"t"};
  for (int trial = 0; trial < 100; ++trial) {
    VacExt a0 = track(random_vacext(rng, g1, g2, 2));
    VacExt a1 = track(random_vacext(rng, g1, g2, 2));
    VacExt b0 = track(random_vacext(rng, g2, g3, 2));
    VacExt b1 = track(random_vacext(rng, g2, g3, 2));
    VacExt lhs = track(compose(qcase_bar("q", b0, b1), qcase_bar("q", a0, a1)));
    VacExt rhs = track(qcase_bar("q", compose(b0, a0), compose(b1, a1)));
    c.require_le(vacext_distance(lhs, rhs), 1e-10,
                 "trial " + std::to_string(trial));
    if (!c.ok) break;
  }
  return c;
}

// --------------------------------------------------------------------------
// 9. Every denotation produced by criteria 1-8 validates: extended Choi
//    min eigenvalue >= -1e-9 and trace non-increasing.
// --------------------------------------------------------------------------
Check criterion_validity() {
  Check c;
  c.require(!g_denotations.empty(), "no denotations were collected");
  int idx = 0;
  for (const auto& v : g_denotations) {
    ++idx;
    if (!validate(v)) {
      c.require(false, "denotation " + std::to_string(idx) + " of " +
                           std::to_string(g_denotations.size()) + " invalid");
      break;
    }
  }
  return c;
}

// --------------------------------------------------------------------------
// 10. Universality round-trip: 50 random Kraus-generated pairs on <= 2
//     qubits, denote(synthesize(v)) == v within 1e-7.
// --------------------------------------------------------------------------
Check criterion_universality() {
  Check c;
  Rng rng(1000);
  std::vector<std::pair<Environment, Environment>> shapes = {
      {Environment{}, Environment{}},
      {Environment{"q"}, Environment{"q"}},
      {Environment{"q"}, Environment{}},
      {Environment{}, Environment{"q"}},
      {Environment{"p", "q"}, Environment{"p", "q"}},
      {Environment{"p", "q"}, Environment{"r"}},
      {Environment{"q"}, Environment{"q", "r"}},
  };
  for (int trial = 0; trial < 50; ++trial) {
    const auto& [in_env, out_env] = shapes[trial % shapes.size()];
    int kraus = 1 + (trial % 2);
    VacExt v = random_vacext(rng, in_env, out_env, kraus);
    Program p = synthesize(v);
    VacExt back = denote(p).v;
    double dist = vacext_distance(back, v);
    if (dist > 1e-7) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "trial %d (%s -> %s): distance %.3g",
                    trial, to_string(in_env).c_str(),
                    to_string(out_env).c_str(), dist);
      c.require(false, buf);
      break;
    }
  }
  return c;
}

// --------------------------------------------------------------------------
// 11. Full-abstraction witnesses: 20 random distinct pairs; the context's
//     denotational probability gap matches the predicted leading eigenvalue
//     within 1e-6; equal-denotation pairs produce no witness.
// --------------------------------------------------------------------------
Check criterion_witness() {
  Check c;
  Rng rng(1100);
  Vec unit(1);
  unit << 1;
  int distinct = 0;
  int guard = 0;
  while (distinct < 20 && guard++ < 400 && c.ok) {
    Program p1 = random_program(rng, 2, 4);
    StmtGen gen{rng, {"p", "q"}};
    Program p2 = p1;
    for (int attempt = 0; attempt < 50; ++attempt) {
      auto [s2, out2] = gen.anystmt(p1.in_env, 4);
      if (out2 == p1.out_env) {
        p2 = Program{p1.in_env, s2, out2};
        break;
      }
    }
    EquivVerdict v = equivalent(p1, p2);
    if (v.equivalent) {
      c.require(!v.witness.has_value(), "equal pair produced a witness");
      continue;
    }
    ++distinct;
    const Distinguisher& d = *v.witness;
    c.require(compatible(d.ctx, p1) && compatible(d.ctx, p2),
              "witness context is not compatible");
    double pa = probability_denotational(
        make_program(Environment{}, substitute(d.ctx, p1.stmt)), unit);
    double pb = probability_denotational(
        make_program(Environment{}, substitute(d.ctx, p2.stmt)), unit);
    c.require_le(std::abs(std::abs(pa - pb) - d.p_gap), 1e-6,
                 "gap mismatch on pair " + std::to_string(distinct));
  }
  c.require(distinct >= 20,
            "found only " + std::to_string(distinct) + " distinct pairs");

  // Known equal-denotation pairs must come back without witnesses.
  Environment q{"q"};
  EquivVerdict dp =
      equivalent(make_program(q, coin_stmt("q")),
                 make_program(q, seq(discard("q"), new_qbit("q"))));
  c.require(dp.equivalent && !dp.witness.has_value(),
            "COIN vs discard-prepare must be equivalent without witness");
  return c;
}

// --------------------------------------------------------------------------
// 12. Rename golden: [[rename p -> q]] = (I_{p->q}, I_{p->q}) within 1e-12.
// --------------------------------------------------------------------------
Check criterion_rename() {
  Check c;
  StmtPtr ren = seq(new_qbit("q"), seq(swap_stmt("p", "q"), discard("p")));
  VacExt d = denote(Environment{"p"}, ren).v;
  c.require(d.out_env == Environment{"q"}, "output environment is not {q}");
  c.require_le(max_abs(d.C.m - Mat::Identity(4, 4)), 1e-12, "C distance");
  c.require_le(max_abs(d.F - Mat::Identity(2, 2)), 1e-12, "F distance");
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Entry> criteria = {
      {"CNOT/SWAP golden (1e-12)", criterion_cnot_swap},
      {"COIN golden: limit 1e-9, bracket width 2^-60 at fuel 60",
       criterion_coin},
      {"LOOP golden: exact (0,0), <=3 iterations, bracket (0,0)",
       criterion_loop},
      {"QCOIN1 golden table (1e-12) and non-equivalence", criterion_qcoin1},
      {"measurement encoding: 25 pairs, denotational 1e-9 + ensembles",
       criterion_meas_encoding},
      {"adequacy: 200 random programs, fuel 64, tol 1e-6 + mass",
       criterion_adequacy},
      {"probability subdistribution and unique default", criterion_prob_distr},
      {"interchange law: 100 quadruples (1e-10)", criterion_interchange},
      {"validity of all produced denotations", criterion_validity},
      {"universality round-trip: 50 pairs (1e-7)", criterion_universality},
      {"full-abstraction witnesses: 20 pairs, gap = lambda0 (1e-6)",
       criterion_witness},
      {"rename golden (1e-12)", criterion_rename},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check c = criteria[i].run();
    if (c.ok) {
      std::printf("[PASS] %2zu. %s\n", i + 1, criteria[i].name);
    } else {
      ++failures;
      std::printf("[FAIL] %2zu. %s: %s\n", i + 1, criteria[i].name,
                  c.detail.c_str());
    }
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
