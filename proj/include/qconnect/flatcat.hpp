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

#ifndef QCONNECT_FLATCAT_HPP
#define QCONNECT_FLATCAT_HPP

#include <map>
#include <vector>

#include "qconnect/matfun.hpp"

namespace qconnect {

/// A constant invertible matrix viewed as the system X(qz) = A X(z).
struct FlatObject {
  Matrix A;
  DunfordPair dunford;
  std::vector<AnnulusDecomposition> annulus_spectrum;

  static FlatObject make(const Matrix& A, const QParameter& q);
  int n() const { return static_cast<int>(A.rows()); }
  /// X (x) Y with the kron index convention.
  FlatObject tensor(const FlatObject& other, const QParameter& q) const;
};

/// (gamma, lambda), acting on flat objects by gamma(A_s) A_u^lambda.
struct GaloisElement {
  CharacterSpec gamma;
  cplx lambda{0.0, 0.0};

  GaloisElement operator*(const GaloisElement& o) const { return {gamma * o.gamma, lambda + o.lambda}; }
  /// True when gamma(q) = 1, i.e. a group element rather than a groupoid arrow.
  bool in_group(const QParameter& q, double tol = 1e-10) const;
};

/// F(z) = sum_k F_k z^k, finite support.
struct LaurentMatrixMorphism {
  std::map<int, Matrix> terms;

  Matrix operator()(cplx z) const;
  /// ||F(qz) A - B F(z)||.
  double intertwining_residual(const Matrix& A, const Matrix& B, cplx z, const QParameter& q) const;
};

struct DegreeWindow {
  int lo;
  int hi;
};

/// Degrees k with min|Sp B| / max|Sp A| <= |q|^k <= max|Sp B| / min|Sp A|.
DegreeWindow required_window(const FlatObject& A, const FlatObject& B, const QParameter& q);

/// Basis of the Laurent-polynomial morphisms A -> B, i.e. solutions of
/// q^k F_k A = B F_k. Throws ContractError when the window misses a degree
/// allowed by the spectra.
std::vector<LaurentMatrixMorphism> hom_space(const FlatObject& A, const FlatObject& B, const QParameter& q,
                                             DegreeWindow window);
std::vector<LaurentMatrixMorphism> hom_space(const FlatObject& A, const FlatObject& B, const QParameter& q);

Matrix act(const GaloisElement& g, const FlatObject& X, const QParameter& q);

/// ||F(gamma(q) z0) act(g,A) - act(g,B) F(z0)||.
double naturality_check(const GaloisElement& g, const LaurentMatrixMorphism& F, const FlatObject& A,
                        const FlatObject& B, cplx z0, const QParameter& q);
/// Same with an explicit target point z1 in place of gamma(q) z0.
double naturality_check(const GaloisElement& g, const LaurentMatrixMorphism& F, const FlatObject& A,
                        const FlatObject& B, cplx z0, cplx z1, const QParameter& q);

/// ||act(g, X (x) Y) - act(g,X) (x) act(g,Y)||.
double tensor_compat_check(const GaloisElement& g, const FlatObject& X, const FlatObject& Y, const QParameter& q);

/// Jordan block sizes of J_n(1) (x) J_p(1), largest first.
std::vector<int> jordan_tensor_decompose(int n, int p);

/// Whether the line through x is fixed by every act((gamma, 0)) for diagonal
/// A_s = diag(eigenvalues).
bool eigen_line_condition(const std::vector<cplx>& eigenvalues, const Vector& x,
                          const std::vector<CharacterSpec>& gammas, const QParameter& q);

}  // namespace qconnect

#endif  // QCONNECT_FLATCAT_HPP
