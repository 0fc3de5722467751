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

#ifndef QCONNECT_TYPES_HPP
#define QCONNECT_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qconnect {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

// Error taxonomy. The CLI maps ContractError/DomainError to exit code 1 and
// everything derived from NumericFailure to exit code 2.

/// Input violates a documented precondition (bad argument, singular input).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Caller-side contract violation (window too small, K out of range, ...).
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

/// Numerical evaluation could not be carried out reliably.
class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation point too close to a pole / zero spiral.
class PoleProximity : public NumericFailure {
 public:
  PoleProximity(const std::string& what, cplx spiral_point)
      : NumericFailure(what), spiral_point_(spiral_point) {}
  cplx spiral_point() const { return spiral_point_; }

 private:
  cplx spiral_point_;
};

/// Two spectra meet where a unique intertwiner was required.
class ResonanceError : public NumericFailure {
 public:
  ResonanceError(const std::string& what, cplx first, cplx second)
      : NumericFailure(what), first_(first), second_(second) {}
  cplx first() const { return first_; }
  cplx second() const { return second_; }

 private:
  cplx first_;
  cplx second_;
};

/// Integer power by repeated squaring; exact for q^n with small n.
inline cplx ipow(cplx base, long long n) {
  if (n < 0) return 1.0 / ipow(base, -n);
  cplx result{1.0, 0.0};
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

std::string to_string(cplx z);

}  // namespace qconnect

#endif  // QCONNECT_TYPES_HPP
