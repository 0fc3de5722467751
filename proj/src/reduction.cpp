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

#include "qconnect/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qconnect {

namespace {

TruncatedMatrixSeries reduce(const RationalMatrixSystem& sys, int K, End base) {
  if (K < 1 || K > kMaxOrder) throw ContractError("reduction order K must lie in 1.." + std::to_string(kMaxOrder));
  sys.validate();
  const FuchsianReport rep = is_strictly_fuchsian(sys);
  if (base == End::Zero ? !rep.at_zero : !rep.at_infinity) {
    throw DomainError(std::string("reduction: system is not strictly fuchsian at ") +
                      (base == End::Zero ? "0" : "infinity"));
  }
  std::vector<Matrix> a = base == End::Zero ? sys.A.taylor_at_zero(K) : sys.A.taylor_at_infinity(K);
  const Matrix& A0 = a[0];
  const int sign = base == End::Zero ? 1 : -1;
  const Eigen::Index n = A0.rows();

  std::vector<Matrix> F{Matrix::Identity(n, n)};
  for (int k = 1; k <= K; ++k) {
    Matrix rhs = Matrix::Zero(n, n);
    for (int j = 1; j <= k; ++j) rhs += a[static_cast<std::size_t>(j)] * F[static_cast<std::size_t>(k - j)];
    F.push_back(solve_intertwine(sign * k, A0, rhs, sys.q));
  }

  SingularLocus locus = singular_locus(sys);
  double radius;
  if (locus.points.empty()) {
    radius = base == End::Zero ? std::numeric_limits<double>::infinity() : 0.0;
  } else if (base == End::Zero) {
    double m = std::numeric_limits<double>::infinity();
    for (cplx s : locus.points) m = std::min(m, std::abs(s));
    radius = 0.9 * m / sys.q.abs_q();
  } else {
    double m = 0.0;
    for (cplx s : locus.points) m = std::max(m, std::abs(s));
    radius = m * sys.q.abs_q() / 0.9;
  }
  return {base, FlatObject::make(A0, sys.q), std::move(F), std::move(a), radius, sys, std::move(locus)};
}

struct SeriesSum {
  Matrix value;
  double tail;
};

// Sums sum_k F_k x^k and estimates the discarded tail from the geometric
// ratio between the largest terms of the last two windows of five. Windows
// rather than single terms keep series with vanishing odd or even
// coefficients from reporting a zero tail.
SeriesSum sum_series(const std::vector<Matrix>& F, cplx x) {
  Matrix acc = Matrix::Zero(F[0].rows(), F[0].cols());
  for (auto it = F.rbegin(); it != F.rend(); ++it) acc = acc * x + *it;
  const int K = static_cast<int>(F.size()) - 1;
  const double ax = std::abs(x);
  auto window_max = [&](int hi) {
    double m = 0.0;
    for (int k = std::max(1, hi - 4); k <= hi; ++k)
      m = std::max(m, F[static_cast<std::size_t>(k)].norm() * std::pow(ax, k));
    return m;
  };
  const double last = window_max(K);
  const double earlier = K > 5 ? window_max(K - 5) : 0.0;
  double tail = 0.0;
  if (last > 0.0) {
    if (earlier <= 0.0) {
      tail = std::numeric_limits<double>::infinity();
    } else {
      const double rho = std::pow(last / earlier, 0.2);
      tail = rho < 1.0 ? last * rho / (1.0 - rho) : std::numeric_limits<double>::infinity();
    }
  }
  return {acc, tail};
}

}  // namespace

TruncatedMatrixSeries reduce_at_zero(const RationalMatrixSystem& sys, int K) { return reduce(sys, K, End::Zero); }
TruncatedMatrixSeries reduce_at_infty(const RationalMatrixSystem& sys, int K) {
  return reduce(sys, K, End::Infinity);
}

double TruncatedMatrixSeries::recurrence_residual() const {
  const int sign = base == End::Zero ? 1 : -1;
  const Matrix& A0m = A0.A;
  double scale = 1.0;
  for (const Matrix& a : system_coeffs) scale = std::max(scale, a.norm());
  double worst = 0.0;
  for (int k = 0; k <= order(); ++k) {
    Matrix r = system.q.ipow(sign * k) * coeffs[static_cast<std::size_t>(k)] * A0m;
    for (int j = 0; j <= k; ++j)
      r -= system_coeffs[static_cast<std::size_t>(j)] * coeffs[static_cast<std::size_t>(k - j)];
    double fk = 1.0;
    for (int j = 0; j <= k; ++j) fk = std::max(fk, coeffs[static_cast<std::size_t>(j)].norm());
    worst = std::max(worst, r.norm() / (scale * fk));
  }
  return worst;
}

void require_safe(cplx z, const std::vector<cplx>& spirals, const QParameter& q, const char* what) {
  for (cplx s : spirals) {
    if (spiral_distance(z, s, q) < kUnsafeDistance) {
      throw PoleProximity(std::string(what) + ": point " + to_string(z) + " lies on the singular spiral " +
                              to_string(s) + "·q^Z",
                          s);
    }
  }
}

GaugeValue eval_gauge_detailed(const TruncatedMatrixSeries& series, cplx z) {
  if (z == cplx{0.0, 0.0}) throw DomainError("eval_gauge: z must be nonzero");
  const QParameter& q = series.system.q;
  require_safe(z, series.locus.points, q, "eval_gauge");
  const Eigen::Index n = series.A0.A.rows();
  const bool at_zero = series.base == End::Zero;

  // Continuation product: left factor L and right power of A0 (or its inverse).
  Matrix left = Matrix::Identity(n, n);
  int steps = 0;
  cplx x = z;
  const double tail_tol = 1e-14;
  for (;; ++steps) {
    if (steps > 400) throw NumericFailure("eval_gauge: continuation did not reach the trusted disk");
    const bool inside = at_zero ? std::abs(x) <= series.trust_radius : std::abs(x) >= series.trust_radius;
    if (inside) {
      const SeriesSum s = sum_series(series.coeffs, at_zero ? x : 1.0 / x);
      if (s.tail <= tail_tol * std::max(1.0, s.value.norm())) {
        Matrix right = Matrix::Identity(n, n);
        if (steps > 0) {
          const Matrix base = at_zero ? Matrix(series.A0.A.inverse()) : series.A0.A;
          for (int i = 0; i < steps; ++i) right = right * base;
        }
        return {left * s.value * right, steps, s.tail};
      }
    }
    if (at_zero) {
      // F(x) = A(x/q) F(x/q) A0^{-1}
      x /= q.q();
      left = left * series.system.A.eval(x);
    } else {
      // F(x) = A(x)^{-1} F(qx) A_inf
      left = left * series.system.A.eval(x).inverse();
      x *= q.q();
    }
  }
}

Matrix eval_gauge(const TruncatedMatrixSeries& series, cplx z) { return eval_gauge_detailed(series, z).value; }

Matrix product_solution_regular(const RationalMatrixSystem& sys, cplx z, int N) {
  const Eigen::Index n = sys.n();
  const Matrix I = Matrix::Identity(n, n);
  if (!sys.A.finite_at_zero() || (sys.A.eval(0.0) - I).norm() > 1e-10) {
    throw DomainError("product_solution_regular: A(0) must be the identity");
  }
  require_safe(z, singular_locus(sys).points, sys.q, "product_solution_regular");
  Matrix acc = I;
  cplx x = z;
  for (int i = 1; i <= N; ++i) {
    x /= sys.q.q();
    const Matrix factor = sys.A.eval(x);
    acc = acc * factor;
    if ((factor - I).norm() < 1e-17 * std::max(1.0, acc.norm())) return acc;
  }
  throw NumericFailure("product_solution_regular: product did not converge in " + std::to_string(N) + " factors");
}

}  // namespace qconnect
