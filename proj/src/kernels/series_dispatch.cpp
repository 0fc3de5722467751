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

#include <cstdlib>

#include "qconnect/kernels/series_kernel.hpp"

namespace qconnect::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Avx2:
      return "avx2";
    case Isa::Scalar:
      break;
  }
  return "scalar";
}

bool avx2_available() {
#if defined(QCONNECT_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported;
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa chosen = [] {
    if (std::getenv("QCONNECT_FORCE_SCALAR") != nullptr) return Isa::Scalar;
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
  }();
  return chosen;
}

void bilateral_sums(const SeriesCoefficients& w, const PointBatch& z, const SumBatch& out, Isa isa) {
#if defined(QCONNECT_BUILD_AVX2)
  if (isa == Isa::Avx2 && avx2_available()) {
    bilateral_sums_avx2(w, z, out);
    return;
  }
#else
  (void)isa;
#endif
  bilateral_sums_scalar(w, z, out);
}

}  // namespace qconnect::kernels
