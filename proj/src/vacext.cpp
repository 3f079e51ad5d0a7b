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

#include "qctl/vacext.hpp"

namespace qctl {

VacExt identity_vacext(const Environment& env) {
  return {identity_superop(env.dim()), Mat::Identity(env.dim(), env.dim()), env,
          env};
}

VacExt zero_vacext(const Environment& in_env, const Environment& out_env) {
  return {zero_superop(in_env.dim(), out_env.dim()),
          Mat::Zero(out_env.dim(), in_env.dim()), in_env, out_env};
}

double vacext_distance(const VacExt& a, const VacExt& b) {
  return std::max(max_abs(a.C.m - b.C.m), max_abs(a.F - b.F));
}

bool vacext_approx_equal(const VacExt& a, const VacExt& b, double tol) {
  return a.in_env == b.in_env && a.out_env == b.out_env &&
         vacext_distance(a, b) <= tol;
}

Superoperator extend(const VacExt& v) {
  Eigen::Index di = v.in_env.dim(), dout = v.out_env.dim();
  if (v.C.in_dim != di || v.C.out_dim != dout || v.F.rows() != dout ||
      v.F.cols() != di)
    throw ShapeMismatch("extend: inconsistent VacExt shapes");
  Eigen::Index ei = di + 1, eo = dout + 1;
  Superoperator s = zero_superop(ei, eo);
  auto out_col = [&](Eigen::Index i, Eigen::Index j) {
    return s.m.col(i + j * ei);
  };
  for (Eigen::Index i = 0; i < di; ++i)
    for (Eigen::Index j = 0; j < di; ++j) {
      // C(E_ij) embedded in the A-block of the output.
      Vec inner = v.C.m.col(i + j * di);
      auto col = out_col(i, j);
      for (Eigen::Index r = 0; r < dout; ++r)
        for (Eigen::Index c = 0; c < dout; ++c)
          col(r + c * eo) = inner(r + c * dout);
    }
  for (Eigen::Index i = 0; i < di; ++i) {
    // E_{i,vac} |-> (F e_i) <vac| and its adjoint.
    auto col = out_col(i, di);
    for (Eigen::Index r = 0; r < dout; ++r) col(r + dout * eo) = v.F(r, i);
    auto colA = out_col(di, i);
    for (Eigen::Index c = 0; c < dout; ++c)
      colA(dout + c * eo) = std::conj(v.F(c, i));
  }
  s.m(dout + dout * eo, di + di * ei) = 1.0;  // vac |-> vac, lambda = 1
  return s;
}

bool validate(const VacExt& v) {
  Superoperator ext = extend(v);
  return is_completely_positive(ext) && is_trace_nonincreasing(ext);
}

VacExt compose(const VacExt& d2, const VacExt& d1) {
  if (!(d1.out_env == d2.in_env))
    throw EnvMismatch("compose: " + to_string(d1.out_env) + " vs " +
                      to_string(d2.in_env));
  return {compose(d2.C, d1.C), d2.F * d1.F, d1.in_env, d2.out_env};
}

VacExt meas_bar(const VarName& q, const VacExt& d0, const VacExt& d1) {
  if (!(d0.in_env == d1.in_env) || !(d0.out_env == d1.out_env))
    throw EnvMismatch("meas_bar: operand environments differ");
  if (!d0.in_env.contains(q))
    throw VarMissing("meas_bar: control '" + q + "' not in environment");
  Superoperator c = add(compose(d0.C, proj_superop(q, d0.in_env, 0)),
                        compose(d1.C, proj_superop(q, d1.in_env, 1)));
  Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero();
  p0(0, 0) = 1.0;
  Mat f = d0.F * gate_on(q, d0.in_env, p0);
  return {std::move(c), std::move(f), d0.in_env, d0.out_env};
}

VacExt qcase_bar(const VarName& q, const VacExt& d0, const VacExt& d1) {
  if (!(d0.in_env == d1.in_env) || !(d0.out_env == d1.out_env))
    throw EnvMismatch("qcase_bar: operand environments differ");
  if (d0.in_env.contains(q) || d0.out_env.contains(q))
    throw ControlInEnv("qcase_bar: control '" + q + "' occurs in the operands");
  Environment qin = d0.in_env.with(q);
  Environment qout = d0.out_env.with(q);
  Mat b0 = bra_select(q, qin, 0), b1 = bra_select(q, qin, 1);
  Mat i0 = ket_insert(q, d0.out_env, 0), i1 = ket_insert(q, d0.out_env, 1);
  Mat x = i0 * d0.F * b0;  // |0><0|_q ⊗ F0, q at its sorted position
  Mat y = i1 * d1.F * b1;
  Superoperator c = zero_superop(qin.dim(), qout.dim());
  c.m = kron(i0.conjugate(), i0) * d0.C.m * kron(b0.conjugate(), b0) +
        kron(i1.conjugate(), i1) * d1.C.m * kron(b1.conjugate(), b1) +
        kron(y.conjugate(), x) + kron(x.conjugate(), y);
  return {std::move(c), x + y, qin, qout};
}

VacExt kraus_to_vacext(const KrausSet& ks, const Environment& in_env,
                       const Environment& out_env) {
  validate_kraus(ks);
  if (ks.ops[0].cols() != in_env.dim() || ks.ops[0].rows() != out_env.dim())
    throw InvalidKraus("kraus_to_vacext: environment dimensions differ");
  Mat f = Mat::Zero(out_env.dim(), in_env.dim());
  for (size_t i = 0; i < ks.ops.size(); ++i)
    f += std::conj(ks.vacuum_amps[i]) * ks.ops[i];
  return {kraus_superop(ks.ops), std::move(f), in_env, out_env};
}

Superoperator extended_selector(const VarName& q, const Environment& env,
                                int k) {
  Eigen::Index d = env.dim();
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  p(k, k) = 1.0;
  Mat sel = Mat::Zero(d + 1, d + 1);
  sel.topLeftCorner(d, d) = gate_on(q, env, p);
  if (k == 0) sel(d, d) = 1.0;  // |0><0|_q ⊕ |vac><vac|
  return conjugation_superop(sel);
}

}  // namespace qctl
