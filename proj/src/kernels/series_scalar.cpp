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

#include <cstddef>

#include "qconnect/kernels/series_kernel.hpp"

namespace qconnect::kernels {

namespace {

struct C {
  double re;
  double im;
};

inline C mul(C a, C b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline C add(C a, C b) { return {a.re + b.re, a.im + b.im}; }

}  // namespace

void bilateral_sums_scalar(const SeriesCoefficients& w, const PointBatch& z, const SumBatch& out) {
  const int n_half = w.half_width;
  const std::size_t count = z.re.size();
  for (std::size_t k = 0; k < count; ++k) {
    const C zk{z.re[k], z.im[k]};
    const double norm = zk.re * zk.re + zk.im * zk.im;
    const C tk{zk.re / norm, -zk.im / norm};

    // n = N .. 0 in z
    C p0{w.re[2 * n_half], w.im[2 * n_half]};
    C p1{n_half * p0.re, n_half * p0.im};
    for (int n = n_half - 1; n >= 0; --n) {
      const C wn{w.re[n + n_half], w.im[n + n_half]};
      p0 = add(mul(p0, zk), wn);
      p1 = add(mul(p1, zk), C{n * wn.re, n * wn.im});
    }

    // m = N .. 1 in t = 1/z, coefficient w_{-m}
    C q0{0.0, 0.0};
    C q1{0.0, 0.0};
    if (n_half > 0) {
      q0 = {w.re[0], w.im[0]};
      q1 = {-n_half * q0.re, -n_half * q0.im};
      for (int m = n_half - 1; m >= 1; --m) {
        const C wm{w.re[n_half - m], w.im[n_half - m]};
        q0 = add(mul(q0, tk), wm);
        q1 = add(mul(q1, tk), C{-m * wm.re, -m * wm.im});
      }
      q0 = mul(q0, tk);
      q1 = mul(q1, tk);
    }

    out.s0_re[k] = p0.re + q0.re;
    out.s0_im[k] = p0.im + q0.im;
    out.s1_re[k] = p1.re + q1.re;
    out.s1_im[k] = p1.im + q1.im;
  }
}

}  // namespace qconnect::kernels
