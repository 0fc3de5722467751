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

#ifndef QCONNECT_THETAFN_HPP
#define QCONNECT_THETAFN_HPP

#include <span>
#include <vector>

#include "qconnect/kernels/series_kernel.hpp"
#include "qconnect/qcore.hpp"

namespace qconnect {

/// Truncation control for theta-type series.
struct SeriesTolerance {
  double target = 1e-15;  // absolute bound on the discarded tail
  int max_terms = 200;    // per side of the bilateral sum

  void validate() const;
  /// Applies QCONNECT_MAX_TERMS from the environment when set.
  SeriesTolerance with_env_override() const;
};

/// Which theta the characters are built on. Standard is the series
/// sum_n q^{-n(n-1)/2} z^n itself (zeros on -q^Z); Reflected evaluates it
/// at -z (zeros on q^Z).
enum class ThetaConvention { Standard, Reflected };

/// Direct: fold z into the fundamental annulus and sum the series. Modular:
/// sum the Jacobi-transformed series, which stays accurate as |q| -> 1.
enum class ThetaMethod { Auto, Direct, Modular };

/// Sign s in Theta(qz) = s * qz * Theta(z) for the series as printed.
inline constexpr double kThetaShiftSign = 1.0;

/// log Theta(z) (any branch) together with z Theta'(z) / Theta(z).
struct ThetaLog {
  cplx log_value;
  cplx zdlog;
  int terms;  // half-width of the truncation actually used
};

ThetaLog theta_log(cplx z, const QParameter& q, const SeriesTolerance& tol = {},
                   ThetaMethod method = ThetaMethod::Auto);

cplx theta(cplx z, const QParameter& q, const SeriesTolerance& tol = {},
           ThetaConvention conv = ThetaConvention::Standard);

/// q-logarithm l_q(z) = z Theta'(z) / Theta(z); l_q(qz) = l_q(z) + 1.
cplx qlog(cplx z, const QParameter& q, const SeriesTolerance& tol = {},
          ThetaConvention conv = ThetaConvention::Standard);

/// q-character e_{q,c}(z) = z^{eps(c)} Theta(z) / Theta(z / cbar).
cplx qchar(cplx c, cplx z, const QParameter& q, const SeriesTolerance& tol = {},
           ThetaConvention conv = ThetaConvention::Standard);

/// phi(c,d)(z) = e_{q,c}(z) e_{q,d}(z) / e_{q,cd}(z), an elliptic function.
cplx cocycle_phi(cplx c, cplx d, cplx z, const QParameter& q, const SeriesTolerance& tol = {});

/// Twisting scalar psi_a(c) = g_a(c) / e_{q,c}(a); depends on cbar only.
cplx psi(cplx a, cplx c, const QParameter& q, const SeriesTolerance& tol = {});

/// Grid evaluation of Theta through the batched series kernel.
std::vector<cplx> theta_batch(std::span<const cplx> points, const QParameter& q,
                              const SeriesTolerance& tol = {},
                              kernels::Isa isa = kernels::active_isa());

/// Grid evaluation of l_q through the batched series kernel.
std::vector<cplx> qlog_batch(std::span<const cplx> points, const QParameter& q,
                             const SeriesTolerance& tol = {},
                             kernels::Isa isa = kernels::active_isa());

/// Relative tolerance used to decide that a point sits on a zero spiral of theta.
inline constexpr double kThetaZeroTolerance = 1e-8;

}  // namespace qconnect

#endif  // QCONNECT_THETAFN_HPP
