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

#ifndef QCONNECT_CONNECTION_HPP
#define QCONNECT_CONNECTION_HPP

#include <vector>

#include "qconnect/reduction.hpp"

namespace qconnect {

enum class Normalization { Never, IfNeeded, Always };

/// (A^(0), M, A^(inf)) with M = F_inf^{-1} F_0 built from the two local gauges.
struct ConnectionTriple {
  RationalMatrixSystem system;  // the (possibly normalized) system actually reduced
  RationalMatrix normalizing_gauge;
  TruncatedMatrixSeries at_zero;
  TruncatedMatrixSeries at_infinity;
  SingularLocus sigma;
  std::vector<cplx> exponent_group_gens;

  const QParameter& q() const { return system.q; }
  const FlatObject& A0() const { return at_zero.A0; }
  const FlatObject& Ainf() const { return at_infinity.A0; }
  int n() const { return system.n(); }

  Matrix M(cplx z) const;
};

/// True when A(0) and A(inf) are invertible and free of resonance.
bool ready_for_reduction(const RationalMatrixSystem& sys);

ConnectionTriple build_triple(const RationalMatrixSystem& sys, int K = kDefaultOrder,
                              Normalization policy = Normalization::IfNeeded);

/// Triple of A1 (x) A2, reduced without normalization (ContractError if the
/// tensor system is resonant).
ConnectionTriple tensor_triple(const ConnectionTriple& t1, const ConnectionTriple& t2, int K = kDefaultOrder);

/// Birkhoff matrix P = e_{A_inf}(z)^{-1} M(z) e_{A_0}(z); elliptic.
Matrix connection_P(const ConnectionTriple& t, cplx z, const SeriesTolerance& tol = {});

/// M(z0) as an isomorphism of fibres; rejects effectively singular values.
Matrix gamma_path(const ConnectionTriple& t, cplx z0);

/// Twisted matrix as the composition
/// g_a(Abar_inf_s)^{-1} A_inf_u^{-l_q(a)} M(a) A_0_u^{l_q(a)} g_a(Abar_0_s).
Matrix pbreve(const ConnectionTriple& t, cplx a, const SeriesTolerance& tol = {});

/// The same matrix through psi: psi_a(A_inf_s)^{-1} P(a) psi_a(A_0_s). Agrees
/// with pbreve when the exponents lie in the fundamental annulus.
Matrix pbreve_via_psi(const ConnectionTriple& t, cplx a, const SeriesTolerance& tol = {});

/// V(a_i)^{-1} V(a_{i+1}) with V = P or P-breve.
std::vector<Matrix> connection_group_sample(const ConnectionTriple& t, const std::vector<cplx>& points,
                                            bool twisted, const SeriesTolerance& tol = {});

/// ||P_{1(x)2}(z) - Phi_inf(z) (P_1(z) (x) P_2(z)) Phi_0(z)^{-1}||.
double twisted_tensor_check(const ConnectionTriple& t1, const ConnectionTriple& t2, cplx z,
                            const SeriesTolerance& tol = {});
double twisted_tensor_check(const ConnectionTriple& t1, const ConnectionTriple& t2,
                            const ConnectionTriple& t12, cplx z, const SeriesTolerance& tol = {});

/// prod_i u_i Theta(-z/u_i) / (v_i Theta(-z/v_i)); requires prod u = prod v.
cplx rank1_regular_p(const std::vector<cplx>& u, const std::vector<cplx>& v, cplx z, const QParameter& q,
                     const SeriesTolerance& tol = {});

/// sum_{n in Z} a(q^n z) for a with a(0) = a(inf) = 0; at most N terms per side.
cplx rank2_unipotent_p(const RationalFunction& a, cplx z, const QParameter& q, int N = 400);

/// Scalar system prod (1 - z/u_i) / (1 - z/v_i), optionally times a constant.
RationalMatrixSystem rank1_system(const std::vector<cplx>& u, const std::vector<cplx>& v, const QParameter& q,
                                  cplx constant = 1.0);
/// [[1, a(z)], [0, 1]].
RationalMatrixSystem rank2_unipotent_system(const RationalFunction& a, const QParameter& q);

}  // namespace qconnect

#endif  // QCONNECT_CONNECTION_HPP
