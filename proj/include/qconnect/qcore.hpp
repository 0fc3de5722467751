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

#ifndef QCONNECT_QCORE_HPP
#define QCONNECT_QCORE_HPP

#include "qconnect/types.hpp"

namespace qconnect {

/// The deformation parameter q = exp(-2 i pi tau), Im tau > 0, so |q| > 1.
///
/// Either q or tau may be supplied. When built from q the principal
/// logarithm fixes tau with Re tau in (-1/2, 1/2].
class QParameter {
 public:
  static QParameter from_tau(cplx tau);
  static QParameter from_q(cplx q);

  cplx tau() const { return tau_; }
  cplx q() const { return q_; }
  double abs_q() const { return std::abs(q_); }
  /// ln|q| = 2 pi Im tau.
  double log_abs_q() const { return log_abs_q_; }

  /// q^y := exp(-2 i pi tau y) for real or complex y.
  cplx pow(cplx y) const { return std::exp(-kTwoPiI * tau_ * y); }
  /// q^n by repeated multiplication.
  cplx ipow(long long n) const { return qconnect::ipow(q_, n); }

 private:
  QParameter(cplx tau, cplx q);
  cplx tau_;
  cplx q_;
  double log_abs_q_;
};

/// c = q^epsilon * cbar with 1 <= |cbar| < |q|.
struct AnnulusDecomposition {
  cplx c;
  long long epsilon;
  cplx cbar;
};

/// z = u * q^y with |u| = 1 and y real.
struct CStarSplit {
  cplx z;
  cplx u;
  double y;
};

/// Continuous character of C*: u q^y -> u^alpha * exp(2 i pi beta y).
struct CharacterSpec {
  long long alpha = 0;
  cplx beta{0.0, 0.0};

  static CharacterSpec trivial() { return {0, 0.0}; }
  static CharacterSpec gamma1() { return {1, 0.0}; }
  static CharacterSpec gamma2() { return {0, 1.0}; }
  static CharacterSpec gamma2_pow(cplx b) { return {0, b}; }
  /// delta_alpha: u q^y -> q^{alpha y}.
  static CharacterSpec delta(cplx alpha, const QParameter& q);
  /// g_a = delta_{log_q a}; sends q to a.
  static CharacterSpec g(cplx a, const QParameter& q);

  /// Pointwise product of characters.
  CharacterSpec operator*(const CharacterSpec& other) const {
    return {alpha + other.alpha, beta + other.beta};
  }
  CharacterSpec inverse() const { return {-alpha, -beta}; }
};

AnnulusDecomposition annulus_decompose(cplx c, const QParameter& q);
CStarSplit split(cplx z, const QParameter& q);

/// Branch of log_q with the cut along q^R: u = exp(2 i pi x_r), x_r in [0,1),
/// result y - x_r / tau.
cplx log_q(cplx z, const QParameter& q);

cplx char_eval(const CharacterSpec& spec, cplx z, const QParameter& q);

/// A character gamma with gamma(q) b = c, namely g_{c/b}.
CharacterSpec groupoid_connector(cplx b, cplx c, const QParameter& q);

/// Relative distance from z to the spiral s q^Z, measured after folding z/s
/// into the fundamental annulus (distance to 1 or to q there).
double spiral_distance(cplx z, cplx s, const QParameter& q);

/// Distance from z to q^Z in absolute terms (nearest q^k).
double distance_to_q_lattice(cplx z, const QParameter& q);

}  // namespace qconnect

#endif  // QCONNECT_QCORE_HPP
