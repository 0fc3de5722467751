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

#ifndef QCONNECT_RATSYS_HPP
#define QCONNECT_RATSYS_HPP

#include <string>
#include <vector>

#include "qconnect/polynomial.hpp"
#include "qconnect/qcore.hpp"

namespace qconnect {

/// The system X(qz) = A(z) X(z).
struct RationalMatrixSystem {
  RationalMatrix A;
  QParameter q;

  int n() const { return A.rows(); }
  /// Validates squareness and det A != 0.
  void validate() const;
};

/// (sigma_q F)^{-1} A F.
RationalMatrixSystem gauge_transform(const RationalMatrixSystem& sys, const RationalMatrix& F);

struct SingularLocus {
  std::vector<cplx> points;  // in C*, clustered
  std::vector<int> multiplicities;
  bool at_zero = false;      // pole of A or zero of det A at 0
  bool at_infinity = false;  // same at infinity

  /// Representatives folded into the fundamental annulus.
  std::vector<cplx> modulo_q(const QParameter& q) const;
};

SingularLocus singular_locus(const RationalMatrixSystem& sys);

struct FuchsianReport {
  bool at_zero = false;
  bool at_infinity = false;
  std::vector<std::string> diagnostics;

  bool strict() const { return at_zero && at_infinity; }
};

FuchsianReport is_strictly_fuchsian(const RationalMatrixSystem& sys);

/// Eigenvalue indices with c_i = q^k c_j, k != 0.
struct ResonantPair {
  int i;
  int j;
  long long k;
};

std::vector<ResonantPair> resonance_classes(const Matrix& A0, const QParameter& q, int max_shift);
/// ln(max|c| / min|c|) / ln|q|, rounded up; a safe max_shift.
int spectral_shift_bound(const Matrix& A0, const QParameter& q);

enum class End { Zero, Infinity };

struct NormalizedSystem {
  RationalMatrixSystem system;
  RationalMatrix gauge;  // system = gauge_transform(original, gauge)
  int steps = 0;
  int rational_steps = 0;  // shears that used the rational fallback
};

/// Shears exponents at the chosen end into the fundamental annulus. Each step
/// gauges by phi(z) P + (I - P), P a spectral projector of the constant term;
/// phi is z^{+-1} when that keeps the other end strictly fuchsian, otherwise a
/// rational function equal to z^{+-1} up to a unit at this end and constant at
/// the other.
NormalizedSystem normalize_nonresonant(const RationalMatrixSystem& sys, End at,
                                       bool rational_only = false);
/// Both ends: 0 first, then infinity with rational shears so 0 is untouched.
NormalizedSystem normalize_both(const RationalMatrixSystem& sys);

/// Constant term of the system at the given end.
Matrix constant_term(const RationalMatrixSystem& sys, End at);

bool exponents_in_annulus(const Matrix& A0, const QParameter& q);

}  // namespace qconnect

#endif  // QCONNECT_RATSYS_HPP
