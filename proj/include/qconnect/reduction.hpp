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

#ifndef QCONNECT_REDUCTION_HPP
#define QCONNECT_REDUCTION_HPP

#include <vector>

#include "qconnect/flatcat.hpp"
#include "qconnect/ratsys.hpp"

namespace qconnect {

inline constexpr int kDefaultOrder = 40;
inline constexpr int kMaxOrder = 200;

/// Gauge F with F(qz) A0 = A(z) F(z), F = I at the base point, stored as
/// F_0..F_K in z (base 0) or in w = 1/z (base infinity).
struct TruncatedMatrixSeries {
  End base;
  FlatObject A0;
  std::vector<Matrix> coeffs;
  std::vector<Matrix> system_coeffs;  // local Taylor coefficients of A
  double trust_radius;  // |z| <= r at 0, |z| >= r at infinity
  RationalMatrixSystem system;
  SingularLocus locus;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  /// max_k ||q^{+-k} F_k A0 - sum_j A_j F_{k-j}|| relative to max(1, ||A||).
  double recurrence_residual() const;
};

TruncatedMatrixSeries reduce_at_zero(const RationalMatrixSystem& sys, int K = kDefaultOrder);
TruncatedMatrixSeries reduce_at_infty(const RationalMatrixSystem& sys, int K = kDefaultOrder);

struct GaugeValue {
  Matrix value;
  int continuation_steps = 0;
  double tail_estimate = 0.0;
};

/// Refuses points within this relative distance of q^Z S(A).
inline constexpr double kUnsafeDistance = 1e-6;

GaugeValue eval_gauge_detailed(const TruncatedMatrixSeries& series, cplx z);
Matrix eval_gauge(const TruncatedMatrixSeries& series, cplx z);

/// Throws PoleProximity if z is within kUnsafeDistance of q^Z s for some s.
void require_safe(cplx z, const std::vector<cplx>& spirals, const QParameter& q, const char* what);

/// A(q^{-1}z) A(q^{-2}z) ... for systems with A(0) = I, at most N factors.
Matrix product_solution_regular(const RationalMatrixSystem& sys, cplx z, int N = 400);

}  // namespace qconnect

#endif  // QCONNECT_REDUCTION_HPP
