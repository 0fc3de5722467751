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

// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher
// after a cpuid check.

#include <immintrin.h>

#include <cstddef>

#include "qconnect/kernels/series_kernel.hpp"

namespace qconnect::kernels {

namespace {

struct C4 {
  __m256d re;
  __m256d im;
};

inline C4 mul(const C4& a, const C4& b) {
  return {_mm256_fmsub_pd(a.re, b.re, _mm256_mul_pd(a.im, b.im)),
          _mm256_fmadd_pd(a.re, b.im, _mm256_mul_pd(a.im, b.re))};
}

inline C4 add_broadcast(const C4& a, double re, double im) {
  return {_mm256_add_pd(a.re, _mm256_set1_pd(re)), _mm256_add_pd(a.im, _mm256_set1_pd(im))};
}

inline C4 broadcast(double re, double im) { return {_mm256_set1_pd(re), _mm256_set1_pd(im)}; }

}  // namespace

void bilateral_sums_avx2(const SeriesCoefficients& w, const PointBatch& z, const SumBatch& out) {
  const int n_half = w.half_width;
  const std::size_t count = z.re.size();
  const std::size_t vec_end = count - count % 4;

  for (std::size_t k = 0; k < vec_end; k += 4) {
    const C4 zk{_mm256_loadu_pd(&z.re[k]), _mm256_loadu_pd(&z.im[k])};
    const __m256d norm = _mm256_fmadd_pd(zk.re, zk.re, _mm256_mul_pd(zk.im, zk.im));
    const C4 tk{_mm256_div_pd(zk.re, norm),
                _mm256_div_pd(_mm256_sub_pd(_mm256_setzero_pd(), zk.im), norm)};

    C4 p0 = broadcast(w.re[2 * n_half], w.im[2 * n_half]);
    C4 p1 = broadcast(n_half * w.re[2 * n_half], n_half * w.im[2 * n_half]);
    for (int n = n_half - 1; n >= 0; --n) {
      const double wr = w.re[n + n_half];
      const double wi = w.im[n + n_half];
      p0 = add_broadcast(mul(p0, zk), wr, wi);
      p1 = add_broadcast(mul(p1, zk), n * wr, n * wi);
    }

    C4 q0 = broadcast(0.0, 0.0);
    C4 q1 = broadcast(0.0, 0.0);
    if (n_half > 0) {
      q0 = broadcast(w.re[0], w.im[0]);
      q1 = broadcast(-n_half * w.re[0], -n_half * w.im[0]);
      for (int m = n_half - 1; m >= 1; --m) {
        const double wr = w.re[n_half - m];
        const double wi = w.im[n_half - m];
        q0 = add_broadcast(mul(q0, tk), wr, wi);
        q1 = add_broadcast(mul(q1, tk), -m * wr, -m * wi);
      }
      q0 = mul(q0, tk);
      q1 = mul(q1, tk);
    }

    _mm256_storeu_pd(&out.s0_re[k], _mm256_add_pd(p0.re, q0.re));
    _mm256_storeu_pd(&out.s0_im[k], _mm256_add_pd(p0.im, q0.im));
    _mm256_storeu_pd(&out.s1_re[k], _mm256_add_pd(p1.re, q1.re));
    _mm256_storeu_pd(&out.s1_im[k], _mm256_add_pd(p1.im, q1.im));
  }

  if (vec_end < count) {
    const PointBatch tail{z.re.subspan(vec_end), z.im.subspan(vec_end)};
    const SumBatch tail_out{out.s0_re.subspan(vec_end), out.s0_im.subspan(vec_end),
                            out.s1_re.subspan(vec_end), out.s1_im.subspan(vec_end)};
    bilateral_sums_scalar(w, tail, tail_out);
  }
}

}  // namespace qconnect::kernels
