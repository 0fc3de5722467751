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

#ifndef QCONNECT_MATFUN_HPP
#define QCONNECT_MATFUN_HPP

#include <functional>
#include <vector>

#include "qconnect/qcore.hpp"
#include "qconnect/thetafn.hpp"

namespace qconnect {

/// Kronecker product with the pair (i1, i2) sent to i1 + p1 * i2 (0-based),
/// p1 the row count of A: the index of the left factor runs fastest.
Matrix kron(const Matrix& A, const Matrix& B);

/// Multiplicative Dunford decomposition A = s u = u s.
///
/// The distinct eigenvalues of s are stored with their algebraic
/// multiplicities together with the spectral projectors of s, so that any
/// f(A) = f(s) = sum_k f(c_k) P_k is evaluated without an eigenbasis.
struct DunfordPair {
  Matrix s;
  Matrix u;
  std::vector<cplx> eigenvalues;
  std::vector<int> multiplicities;
  std::vector<Matrix> projectors;

  bool unipotent_trivial(double tol = 1e-12) const;
};

/// Eigenvalues closer than this (relative to max(1,|c|)) are one cluster.
inline constexpr double kClusterGap = 1e-8;

DunfordPair dunford(const Matrix& A);

using ScalarMap = std::function<cplx(cplx)>;

Matrix apply_to_ss(const ScalarMap& f, const DunfordPair& d);
Matrix apply_to_ss(const ScalarMap& f, const Matrix& A);

/// U^lambda = sum_k binom(lambda, k) (U - I)^k for unipotent U.
Matrix unipotent_pow(const Matrix& U, cplx lambda);

/// Canonical solution e_{q,A}(z) = e_{q,A_s}(z) A_u^{l_q(z)} of X(qz) = A X(z).
Matrix e_matrix(const Matrix& A, cplx z, const QParameter& q, const SeriesTolerance& tol = {});
Matrix e_matrix(const DunfordPair& d, cplx z, const QParameter& q, const SeriesTolerance& tol = {});

/// Phi(A_s, B_s)(z) = e_{q,A_s (x) B_s}^{-1} (e_{q,A_s} (x) e_{q,B_s}); elliptic in z.
Matrix phi_cocycle(const Matrix& A, const Matrix& B, cplx z, const QParameter& q,
                   const SeriesTolerance& tol = {});

/// Unique X with q^k X A0 - A0 X = rhs. Throws ResonanceError when
/// q^k Sp(A0) meets Sp(A0).
Matrix solve_intertwine(int k, const Matrix& A0, const Matrix& rhs, const QParameter& q);

/// Spectral norm-ish scale max(1, ||A||_F) used for relative tolerances.
double matrix_scale(const Matrix& A);

std::vector<cplx> eigenvalues(const Matrix& A);

}  // namespace qconnect

#endif  // QCONNECT_MATFUN_HPP
