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

#include <doctest.h>

#include "qctl/parser.hpp"
#include "qctl/synth.hpp"
#include "testutil.hpp"

using namespace qctl;
using namespace qctl::testing;

TEST_CASE("two-level product reconstructs the source unitary") {
  Rng rng(71);
  for (Eigen::Index d : {2, 4, 8}) {
    Mat u = haar_unitary(rng, d);
    auto fs = two_level_decompose(u);
    CHECK(max_abs(two_level_product(fs, d) - u) < 1e-10);
    CHECK(fs.size() <= static_cast<size_t>(d * (d - 1) / 2 + d));
    for (const auto& f : fs) {
      CHECK(f.i < f.j);
      CHECK(is_unitary_gate(f.core, 1e-10));
    }
  }
  // Isometry input: the product's leading columns reconstruct it.
  Mat iso = haar_unitary(rng, 8).leftCols(3);
  auto fs = two_level_decompose(iso);
  CHECK(max_abs(two_level_product(fs, 8).leftCols(3) - iso) < 1e-10);
  CHECK_THROWS_AS(two_level_decompose(2.0 * Mat::Identity(2, 2)), NotUnitary);
}

TEST_CASE("complete_subunitary goldens") {
  Rng rng(73);
  // A unitary completes to itself.
  Mat u = haar_unitary(rng, 4);
  CHECK(max_abs(complete_subunitary(u) - u) < 1e-12);

  // (1/sqrt2) I_2 pads to a 4x4 unitary keeping the top-left block.
  Mat half = Mat::Identity(2, 2) / std::sqrt(2.0);
  Mat c = complete_subunitary(half);
  REQUIRE(c.rows() == 4);
  CHECK(max_abs(c.topLeftCorner(2, 2) - half) < 1e-12);
  CHECK(max_abs(c.adjoint() * c - Mat::Identity(4, 4)) < 1e-12);

  // <0| (1x2) completes inside 2x2 with top row (1, 0).
  Mat bra0(1, 2);
  bra0 << 1, 0;
  Mat cb = complete_subunitary(bra0);
  REQUIRE(cb.rows() == 2);
  CHECK(max_abs(cb.row(0) - bra0) < 1e-12);
  CHECK(max_abs(cb.adjoint() * cb - Mat::Identity(2, 2)) < 1e-12);

  CHECK_THROWS_AS(complete_subunitary(2.0 * Mat::Identity(2, 2)),
                  NotSubUnitary);
}

TEST_CASE("unitary_to_program emits the textbook CNOT") {
  Environment q{"q"};
  CHECK(equal(unitary_to_program(named_gate("X").mat, q), unitary("q", named_gate("X"))));
  CHECK(pretty(unitary_to_program(named_gate("X").mat, q)) == "q *= X");

  Environment ct{"c", "t"};
  StmtPtr s = unitary_to_program(cnot_matrix(), ct);
  CHECK(pretty(s) == "qcase c (0 -> skip, 1 -> t *= X)");
  CHECK(equal(s, cnot_stmt("c", "t")));
}

TEST_CASE("unitary_to_program matches the denotation on random unitaries") {
  Rng rng(79);
  Environment pqr{"p", "q", "r"};
  for (int trial = 0; trial < 4; ++trial) {
    Mat u = haar_unitary(rng, 8);
    StmtPtr s = unitary_to_program(u, pqr);
    VacExt d = denote(pqr, s).v;
    CHECK(max_abs(d.C.m - conjugation_superop(u).m) < 1e-8);
    CHECK(max_abs(d.F - u) < 1e-8);
    CHECK(check(pqr, s).value() == pqr);
  }
  // SWAP as a worked case.
  Environment pq{"p", "q"};
  VacExt d = denote(pq, unitary_to_program(swap_matrix(), pq)).v;
  CHECK(max_abs(d.F - swap_matrix()) < 1e-10);
}

TEST_CASE("unitary_to_program handles the empty register as a global phase") {
  Environment none{};
  Mat ph(1, 1);
  ph(0, 0) = std::polar(1.0, 0.7);
  StmtPtr s = unitary_to_program(ph, none);
  VacExt d = denote(none, s).v;
  CHECK(std::abs(d.F(0, 0) - ph(0, 0)) < 1e-12);
  CHECK(max_abs(d.C.m - Mat::Identity(1, 1)) < 1e-12);
}

TEST_CASE("subunitary_to_program goldens") {
  Environment q{"q"};
  // The identity is denotationally skip.
  VacExt d = denote(q, subunitary_to_program(Mat::Identity(2, 2), q, q)).v;
  CHECK(vacext_distance(d, identity_vacext(q)) < 1e-12);

  // <0|_q behaves like a post-selected discard.
  Mat bra0(1, 2);
  bra0 << 1, 0;
  StmtPtr s = subunitary_to_program(bra0, q, Environment{});
  VacExt got = denote(q, s).v;
  CHECK(got.out_env == Environment{});
  CHECK(max_abs(got.F - bra0) < 1e-8);
  CHECK(max_abs(got.C.m - conjugation_superop(bra0).m) < 1e-8);

  // A scaled isometry (the COIN1-style factor shape).
  Rng rng(83);
  Environment qr{"q", "r"};
  Mat iso = haar_unitary(rng, 4).leftCols(2) / std::sqrt(2.0);
  VacExt di = denote(q, subunitary_to_program(iso, q, qr)).v;
  CHECK(max_abs(di.F - iso) < 1e-8);
  CHECK(max_abs(di.C.m - conjugation_superop(iso).m) < 1e-8);
}

TEST_CASE("subunitary_to_program renames across environments") {
  // Pure relabeling p -> q through the identity sub-unitary.
  Environment p{"p"}, q{"q"};
  StmtPtr s = subunitary_to_program(Mat::Identity(2, 2), p, q);
  VacExt d = denote(p, s).v;
  CHECK(d.out_env == q);
  CHECK(max_abs(d.F - Mat::Identity(2, 2)) < 1e-10);
  CHECK(max_abs(d.C.m - Mat::Identity(4, 4)) < 1e-10);
}

TEST_CASE("stack_kraus factorizes the vacuum extension") {
  Rng rng(89);
  // Single identity Kraus: U = I and no ancillas.
  FreshNames fresh;
  Environment q{"q"};
  KrausSet id{{Mat::Identity(2, 2)}, {1.0}};
  KrausFactorization kf = stack_kraus(id, q, q, fresh);
  CHECK(kf.anc_env.size() == 0);
  CHECK(max_abs(kf.u - Mat::Identity(2, 2)) == 0);

  // Random sets recompose: (Tr_anc, <psi| ⊗ I) ∘ (U(.)U†, U) = (C, F).
  for (int trial = 0; trial < 10; ++trial) {
    Environment in{"p", "q"}, out{"q"};
    int m = 3;
    KrausSet ks = random_kraus(rng, in.dim(), out.dim(), m);
    FreshNames fn;
    fn.claim(in);
    fn.claim(out);
    KrausFactorization f = stack_kraus(ks, in, out, fn);
    Environment wide = env_union(f.anc_env, out);
    CHECK(loewner_leq(f.u.adjoint() * f.u, Mat::Identity(in.dim(), in.dim())));

    // The projector side is itself a Kraus-built pair: {<e_i| ⊗ I} with the
    // vacuum amplitudes carried by the ancilla state.
    KrausSet proj;
    for (Eigen::Index i = 0; i < f.anc_env.dim(); ++i) {
      Mat b = Mat::Identity(wide.dim(), wide.dim());
      Environment cur = wide;
      Eigen::Index rest = f.anc_env.dim();
      for (const auto& a : f.anc_env) {
        rest /= 2;
        int bit = static_cast<int>((i / rest) % 2);
        b = bra_select(a, cur, bit) * b;
        cur = cur.without(a);
      }
      proj.ops.push_back(b);
      proj.vacuum_amps.push_back(f.anc_state(i));
    }
    VacExt projector = kraus_to_vacext(proj, wide, out);
    VacExt stacked{conjugation_superop(f.u), f.u, in, wide};
    VacExt recomposed = compose(projector, stacked);
    VacExt want = kraus_to_vacext(ks, in, out);
    CHECK(vacext_distance(recomposed, want) < 1e-9);
  }
}

TEST_CASE("synthesize round-trips simple targets") {
  Environment q{"q"};
  // Identity.
  Program pid = synthesize(identity_vacext(q));
  CHECK(vacext_distance(denote(pid).v, identity_vacext(q)) < 1e-7);

  // The COIN limit (Tr(.)|0><0|, |0><0|).
  VacExt coin = denote(q, coin_stmt("q")).v;
  Program pcoin = synthesize(coin);
  CHECK(pcoin.in_env == q);
  CHECK(pcoin.out_env == q);
  CHECK(vacext_distance(denote(pcoin).v, coin) < 1e-7);

  CHECK_THROWS_AS(synthesize(VacExt{identity_superop(2),
                                    2.0 * Mat::Identity(2, 2), q, q}),
                  InvalidVacExt);
}

TEST_CASE("COIN1's Kraus data reconstructs its denotation and resynthesizes") {
  // [[COIN1]]_∅ has Kraus {(1/sqrt2)|0>, (1/sqrt2)|1>} with vacuum
  // amplitudes (1, 0).
  Environment none{}, q{"q"};
  Mat k0(2, 1), k1(2, 1);
  k0 << 1 / std::sqrt(2.0), 0;
  k1 << 0, 1 / std::sqrt(2.0);
  KrausSet ks{{k0, k1}, {1.0, 0.0}};
  VacExt target = kraus_to_vacext(ks, none, q);
  VacExt coin1 = denote(none, coin1_stmt("q")).v;
  CHECK(vacext_distance(target, coin1) < 1e-12);

  Program p = synthesize(target);
  CHECK(vacext_distance(denote(p).v, coin1) < 1e-7);
}

TEST_CASE("synthesize round-trips random Kraus-generated pairs") {
  Rng rng(97);
  for (int trial = 0; trial < 6; ++trial) {
    Environment in{"q"}, out{"q"};
    VacExt v = random_vacext(rng, in, out, 2);
    Program p = synthesize(v);
    CHECK(p.in_env == in);
    CHECK(p.out_env == out);
    VacExt back = denote(p).v;
    CHECK(vacext_distance(back, v) < 1e-7);
    // Ancillas never leak into the interface and stay clear of the envs.
    for (const auto& name : vars_of(*p.stmt))
      if (name[0] == '_') {
        CHECK(!in.contains(name));
        CHECK(!out.contains(name));
      }
  }
}

TEST_CASE("synthesize pads odd Kraus counts to a power of two") {
  Rng rng(103);
  Environment q{"q"};
  VacExt v = random_vacext(rng, q, q, 3);  // pads to 4, two ancilla qubits
  Program p = synthesize(v);
  CHECK(vacext_distance(denote(p).v, v) < 1e-7);
}

TEST_CASE("synthesize handles environment-changing targets") {
  Rng rng(101);
  Environment in{"p", "q"}, out{"r"};
  VacExt v = random_vacext(rng, in, out, 2);
  Program p = synthesize(v);
  CHECK(p.out_env == out);
  CHECK(vacext_distance(denote(p).v, v) < 1e-7);
}

TEST_CASE("loop and rename gadgets have the expected denotations") {
  Environment q{"q"};
  VacExt loop = denote(q, loop_stmt("_a0")).v;
  CHECK(max_abs(loop.C.m) == 0);
  CHECK(max_abs(loop.F) == 0);

  VacExt ren = denote(Environment{"p"}, rename_stmt("p", "q")).v;
  CHECK(ren.out_env == Environment{"q"});
  CHECK(max_abs(ren.F - Mat::Identity(2, 2)) < 1e-12);
}
