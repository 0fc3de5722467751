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

#ifndef QCONNECT_TESTS_FIXTURES_HPP
#define QCONNECT_TESTS_FIXTURES_HPP

#include "qconnect/connection.hpp"

namespace fixtures {

using namespace qconnect;

inline const QParameter& q4() {
  static const QParameter q = QParameter::from_q(4.0);
  return q;
}

inline RationalFunction z_over_1_plus_z2() { return {Polynomial({0.0, 1.0}), Polynomial({1.0, 0.0, 1.0})}; }

inline RationalMatrixSystem unipotent() { return rank2_unipotent_system(z_over_1_plus_z2(), q4()); }

inline RationalMatrixSystem rank1_regular() { return rank1_system({2.0, 3.0}, {6.0, 1.0}, q4()); }

inline RationalMatrixSystem constant(const Matrix& A) { return {RationalMatrix::constant(A), q4()}; }

inline RationalMatrixSystem scalar(const RationalFunction& f, const QParameter& q = q4()) {
  RationalMatrix A(1, 1);
  A(0, 0) = f;
  return {A, q};
}

// Bilateral sum p(z) for a = z / (1 + z^2), q = 4, from 40-digit summation.
struct BilateralValue {
  cplx z;
  cplx p;
};
inline const BilateralValue kBilateral[] = {
    {{0.7, 0.2}, {1.1339928361992035, 0.0059073981532257685}},
    {{-1.3, 0.5}, {-1.1337408988337507, -0.0093212415880487695}},
    {{2.2, -0.9}, {1.1253087967848735, -0.0072441388451824925}},
};

// p(zb) / p(za) for the rank-one regular example, za = 0.8+0.3i, zb = 1.9-0.6i.
inline constexpr cplx kRank1Ratio{0.70668496770892417, 0.0024321500972973799};

}  // namespace fixtures

#endif  // QCONNECT_TESTS_FIXTURES_HPP
