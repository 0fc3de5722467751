// Copyright 2026 The qconnect Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qconnect/connection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qconnect {

namespace {

bool end_ready(const Matrix& A0, const QParameter& q) {
  return resonance_classes(A0, q, spectral_shift_bound(A0, q)).empty();
}

ConnectionTriple assemble(const RationalMatrixSystem& sys, const RationalMatrix& gauge, int K) {
  TruncatedMatrixSeries zero = reduce_at_zero(sys, K);
  TruncatedMatrixSeries inf = reduce_at_infty(sys, K);
  std::vector<cplx> gens = zero.A0.dunford.eigenvalues;
  for (cplx c : inf.A0.dunford.eigenvalues) gens.push_back(c);
  SingularLocus sigma = zero.locus;
  return {sys, gauge, std::move(zero), std::move(inf), std::move(sigma), std::move(gens)};
}

// f applied to the semi-simple part, evaluated on the annulus representative
// of each eigenvalue.
Matrix apply_to_bar(const std::function<cplx(cplx)>& f, const DunfordPair& d, const QParameter& q) {
  return apply_to_ss([&](cplx c) { return f(annulus_decompose(c, q).cbar); }, d);
}

}  // namespace

bool ready_for_reduction(const RationalMatrixSystem& sys) {
  if (!is_strictly_fuchsian(sys).strict()) return false;
  return end_ready(constant_term(sys, End::Zero), sys.q) && end_ready(constant_term(sys, End::Infinity), sys.q);
}

ConnectionTriple build_triple(const RationalMatrixSystem& sys, int K, Normalization policy) {
  sys.validate();
  const FuchsianReport rep = is_strictly_fuchsian(sys);
  if (!rep.strict()) {
    std::string msg = "build_triple: system is not strictly fuchsian";
    for (const std::string& d : rep.diagnostics) msg += "; " + d;
    throw DomainError(msg);
  }
  const bool normalize =
      policy == Normalization::Always || (policy == Normalization::IfNeeded && !ready_for_reduction(sys));
  if (!normalize) return assemble(sys, RationalMatrix::identity(sys.n()), K);
  const NormalizedSystem ns = normalize_both(sys);
  return assemble(ns.system, ns.gauge, K);
}

ConnectionTriple tensor_triple(const ConnectionTriple& t1, const ConnectionTriple& t2, int K) {
  const RationalMatrixSystem sys{t1.system.A.kron(t2.system.A), t1.q()};
  if (!ready_for_reduction(sys)) {
    throw ContractError("tensor_triple: the tensor system is resonant; normalize the factors first");
  }
  return assemble(sys, RationalMatrix::identity(sys.n()), K);
}

Matrix ConnectionTriple::M(cplx z) const {
  const Matrix F0 = eval_gauge(at_zero, z);
  const Matrix Finf = eval_gauge(at_infinity, z);
  return Finf.fullPivLu().solve(F0);
}

Matrix connection_P(const ConnectionTriple& t, cplx z, const SeriesTolerance& tol) {
  const Matrix e0 = e_matrix(t.A0().dunford, z, t.q(), tol);
  const Matrix einf = e_matrix(t.Ainf().dunford, z, t.q(), tol);
  return einf.fullPivLu().solve(t.M(z) * e0);
}

Matrix gamma_path(const ConnectionTriple& t, cplx z0) {
  const Matrix M = t.M(z0);
  const double scale = std::pow(matrix_scale(M), static_cast<double>(M.rows()));
  if (!(std::abs(M.determinant()) > 1e-10 * scale)) {
    throw NumericFailure("gamma_path: M(z0) is singular at " + to_string(z0));
  }
  return M;
}

Matrix pbreve(const ConnectionTriple& t, cplx a, const SeriesTolerance& tol) {
  const QParameter& q = t.q();
  const CharacterSpec ga = CharacterSpec::g(a, q);
  auto g_of = [&](cplx c) { return char_eval(ga, c, q); };
  const Matrix g0 = apply_to_bar(g_of, t.A0().dunford, q);
  const Matrix ginf = apply_to_bar(g_of, t.Ainf().dunford, q);
  Matrix middle = t.M(a);
  const bool u0 = !t.A0().dunford.unipotent_trivial();
  const bool uinf = !t.Ainf().dunford.unipotent_trivial();
  if (u0 || uinf) {
    const cplx l = qlog(a, q, tol);
    if (u0) middle = middle * unipotent_pow(t.A0().dunford.u, l);
    if (uinf) middle = unipotent_pow(t.Ainf().dunford.u, -l) * middle;
  }
  return ginf.fullPivLu().solve(middle * g0);
}

Matrix pbreve_via_psi(const ConnectionTriple& t, cplx a, const SeriesTolerance& tol) {
  const QParameter& q = t.q();
  auto psi_of = [&](cplx c) { return psi(a, c, q, tol); };
  const Matrix p0 = apply_to_ss(psi_of, t.A0().dunford);
  const Matrix pinf = apply_to_ss(psi_of, t.Ainf().dunford);
  return pinf.fullPivLu().solve(connection_P(t, a, tol) * p0);
}

std::vector<Matrix> connection_group_sample(const ConnectionTriple& t, const std::vector<cplx>& points, bool twisted,
                                            const SeriesTolerance& tol) {
  std::vector<Matrix> values;
  values.reserve(points.size());
  for (cplx a : points) values.push_back(twisted ? pbreve(t, a, tol) : connection_P(t, a, tol));
  std::vector<Matrix> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) out.push_back(values[i].fullPivLu().solve(values[i + 1]));
  return out;
}

double twisted_tensor_check(const ConnectionTriple& t1, const ConnectionTriple& t2, const ConnectionTriple& t12,
                            cplx z, const SeriesTolerance& tol) {
  const QParameter& q = t1.q();
  const Matrix lhs = connection_P(t12, z, tol);
  const Matrix phi_inf = phi_cocycle(t1.Ainf().A, t2.Ainf().A, z, q, tol);
  const Matrix phi_0 = phi_cocycle(t1.A0().A, t2.A0().A, z, q, tol);
  const Matrix inner = kron(connection_P(t1, z, tol), connection_P(t2, z, tol));
  const Matrix rhs = phi_0.transpose().fullPivLu().solve((phi_inf * inner).transpose()).transpose();
  return (lhs - rhs).norm();
}

double twisted_tensor_check(const ConnectionTriple& t1, const ConnectionTriple& t2, cplx z,
                            const SeriesTolerance& tol) {
  return twisted_tensor_check(t1, t2, tensor_triple(t1, t2, t1.at_zero.order()), z, tol);
}

cplx rank1_regular_p(const std::vector<cplx>& u, const std::vector<cplx>& v, cplx z, const QParameter& q,
                     const SeriesTolerance& tol) {
  if (u.size() != v.size() || u.empty()) throw DomainError("rank1_regular_p: u and v must have equal nonzero length");
  cplx pu{1.0, 0.0}, pv{1.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    pu *= u[i];
    pv *= v[i];
  }
  if (std::abs(pu - pv) > 1e-10 * std::max(std::abs(pu), std::abs(pv))) {
    throw DomainError("rank1_regular_p: prod u must equal prod v");
  }
  cplx out{1.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    out *= u[i] * theta(z / u[i], q, tol, ThetaConvention::Reflected);
    out /= v[i] * theta(z / v[i], q, tol, ThetaConvention::Reflected);
  }
  return out;
}

cplx rank2_unipotent_p(const RationalFunction& a, cplx z, const QParameter& q, int N) {
  if (!a.finite_at_zero() || std::abs(a(0.0)) > 1e-12 || !a.finite_at_infinity() ||
      std::abs(a.at_infinity()) > 1e-12) {
    throw DomainError("rank2_unipotent_p: a must vanish at 0 and at infinity");
  }
  cplx sum = a(z);
  double scale = std::max(1.0, std::abs(sum));
  for (int dir : {1, -1}) {
    int small = 0;
    cplx x = z;
    int n = 1;
    for (; n <= N && small < 3; ++n) {
      x = dir > 0 ? x * q.q() : x / q.q();
      const cplx term = a(x);
      sum += term;
      scale = std::max(scale, std::abs(term));
      small = std::abs(term) < 1e-14 * scale ? small + 1 : 0;
    }
    if (small < 3) throw NumericFailure("rank2_unipotent_p: bilateral sum did not converge");
  }
  return sum;
}

RationalMatrixSystem rank1_system(const std::vector<cplx>& u, const std::vector<cplx>& v, const QParameter& q,
                                  cplx constant) {
  Polynomial num = Polynomial::constant(constant);
  Polynomial den = Polynomial::constant(1.0);
  for (cplx r : u) num = num * Polynomial({1.0, -1.0 / r});
  for (cplx r : v) den = den * Polynomial({1.0, -1.0 / r});
  RationalMatrix A(1, 1);
  A(0, 0) = RationalFunction(num, den);
  return {A, q};
}

RationalMatrixSystem rank2_unipotent_system(const RationalFunction& a, const QParameter& q) {
  RationalMatrix A = RationalMatrix::identity(2);
  A(0, 1) = a;
  return {A, q};
}

}  // namespace qconnect
