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

#ifndef QCONNECT_KERNELS_SERIES_KERNEL_HPP
#define QCONNECT_KERNELS_SERIES_KERNEL_HPP

// Batched bilateral power sums
//
//   s0(z) = sum_{n=-N}^{N} w_n z^n,      s1(z) = sum_{n=-N}^{N} n w_n z^n
//
// over many evaluation points sharing one coefficient table. This is the
// inner loop of theta / q-logarithm evaluation on point grids. Data is laid
// out structure-of-arrays (separate real and imaginary planes) so that the
// AVX2 variant can process four points per register.
//
// Every variant evaluates the positive half by Horner in z and the negative
// half by Horner in 1/z, in the same order, so results agree to a few ulps.

#include <cstddef>
#include <span>
#include <string_view>

namespace qconnect::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// True when the AVX2 variant was compiled in and the CPU supports AVX2+FMA.
bool avx2_available();

/// The variant chosen at runtime: AVX2 when available unless the environment
/// variable QCONNECT_FORCE_SCALAR is set.
Isa active_isa();

/// Coefficient table for n = -N..N; index n + N.
struct SeriesCoefficients {
  std::span<const double> re;
  std::span<const double> im;
  int half_width = 0;  // N
};

struct PointBatch {
  std::span<const double> re;
  std::span<const double> im;
};

struct SumBatch {
  std::span<double> s0_re;
  std::span<double> s0_im;
  std::span<double> s1_re;
  std::span<double> s1_im;
};

void bilateral_sums_scalar(const SeriesCoefficients& w, const PointBatch& z, const SumBatch& out);
#if defined(QCONNECT_BUILD_AVX2)
void bilateral_sums_avx2(const SeriesCoefficients& w, const PointBatch& z, const SumBatch& out);
#endif

/// Dispatches to the requested variant (falls back to scalar when the
/// requested one is unavailable).
void bilateral_sums(const SeriesCoefficients& w, const PointBatch& z, const SumBatch& out,
                    Isa isa = active_isa());

}  // namespace qconnect::kernels

#endif  // QCONNECT_KERNELS_SERIES_KERNEL_HPP
