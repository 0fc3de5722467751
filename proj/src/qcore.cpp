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

#include "qconnect/qcore.hpp"

#include <cmath>
#include <sstream>

namespace qconnect {

std::string to_string(cplx z) {
  std::ostringstream out;
  out.precision(17);
  out << '(' << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return out.str();
}

QParameter::QParameter(cplx tau, cplx q) : tau_(tau), q_(q), log_abs_q_(std::log(std::abs(q))) {}

QParameter QParameter::from_tau(cplx tau) {
  if (!(tau.imag() > 0.0)) {
    throw DomainError("tau must lie in the upper half plane, got " + to_string(tau));
  }
  return QParameter(tau, std::exp(-kTwoPiI * tau));
}

QParameter QParameter::from_q(cplx q) {
  if (!(std::abs(q) > 1.0) || !std::isfinite(std::abs(q))) {
    throw DomainError("|q| must exceed 1, got q = " + to_string(q));
  }
  // q = exp(-2 i pi tau)  <=>  tau = i log(q) / (2 pi)
  const cplx tau = cplx{0.0, 1.0} * std::log(q) / (2.0 * kPi);
  return QParameter(tau, q);
}

CharacterSpec CharacterSpec::delta(cplx alpha, const QParameter& q) {
  return {0, -q.tau() * alpha};
}

CharacterSpec CharacterSpec::g(cplx a, const QParameter& q) {
  return delta(log_q(a, q), q);
}

AnnulusDecomposition annulus_decompose(cplx c, const QParameter& q) {
  if (c == cplx{0.0, 0.0}) throw DomainError("annulus_decompose: c must be nonzero");
  auto eps = static_cast<long long>(std::floor(std::log(std::abs(c)) / q.log_abs_q()));
  cplx cbar = c * q.ipow(-eps);
  // Rounding can put |cbar| a hair outside [1, |q|).
  if (std::abs(cbar) < 1.0) {
    --eps;
    cbar *= q.q();
  } else if (std::abs(cbar) >= q.abs_q()) {
    ++eps;
    cbar /= q.q();
  }
  return {c, eps, cbar};
}

CStarSplit split(cplx z, const QParameter& q) {
  if (z == cplx{0.0, 0.0}) throw DomainError("split: z must be nonzero");
  const double y = std::log(std::abs(z)) / q.log_abs_q();
  cplx u = z * q.pow(-y);
  u /= std::abs(u);
  return {z, u, y};
}

cplx log_q(cplx z, const QParameter& q) {
  const CStarSplit s = split(z, q);
  double xr = std::arg(s.u) / (2.0 * kPi);
  if (xr < 0.0) xr += 1.0;
  if (xr >= 1.0) xr -= 1.0;
  return cplx{s.y, 0.0} - xr / q.tau();
}

cplx char_eval(const CharacterSpec& spec, cplx z, const QParameter& q) {
  const CStarSplit s = split(z, q);
  return ipow(s.u, spec.alpha) * std::exp(kTwoPiI * spec.beta * s.y);
}

CharacterSpec groupoid_connector(cplx b, cplx c, const QParameter& q) {
  if (b == cplx{0.0, 0.0} || c == cplx{0.0, 0.0}) {
    throw DomainError("groupoid_connector: base points must be nonzero");
  }
  return CharacterSpec::g(c / b, q);
}

double spiral_distance(cplx z, cplx s, const QParameter& q) {
  const AnnulusDecomposition d = annulus_decompose(z / s, q);
  return std::min(std::abs(d.cbar - 1.0), std::abs(d.cbar - q.q()) / q.abs_q());
}

double distance_to_q_lattice(cplx z, const QParameter& q) {
  const AnnulusDecomposition d = annulus_decompose(z, q);
  const cplx lower = q.ipow(d.epsilon);
  return std::min(std::abs(z - lower), std::abs(z - lower * q.q()));
}

}  // namespace qconnect
