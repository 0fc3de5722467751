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

#include "qconnect/ratsys.hpp"

#include <algorithm>
#include <cmath>

#include "qconnect/matfun.hpp"

namespace qconnect {

namespace {

// Exponent of c measured with a little slack so |c| = |q|^k (1 - 1e-15)
// counts as being on the inner boundary of the annulus.
long long snapped_epsilon(cplx c, const QParameter& q) {
  return static_cast<long long>(std::floor(std::log(std::abs(c)) / q.log_abs_q() + 1e-9));
}

}  // namespace

void RationalMatrixSystem::validate() const {
  if (A.rows() != A.cols() || A.rows() == 0) throw DomainError("system matrix must be square and non-empty");
  if (A.determinant().is_zero()) throw DomainError("det A is identically zero");
}

RationalMatrixSystem gauge_transform(const RationalMatrixSystem& sys, const RationalMatrix& F) {
  if (F.rows() != sys.n() || F.cols() != sys.n()) throw DomainError("gauge_transform: dimension mismatch");
  if (F.determinant().is_zero()) throw DomainError("gauge_transform: det F is identically zero");
  const RationalMatrix Fq_inv = F.scaled(sys.q.q()).inverse();
  return {Fq_inv * sys.A * F, sys.q};
}

std::vector<cplx> SingularLocus::modulo_q(const QParameter& q) const {
  std::vector<cplx> out;
  for (cplx p : points) {
    const cplx r = annulus_decompose(p, q).cbar;
    const bool seen = std::any_of(out.begin(), out.end(), [&](cplx s) { return spiral_distance(r, s, q) < 1e-8; });
    if (!seen) out.push_back(r);
  }
  return out;
}

SingularLocus singular_locus(const RationalMatrixSystem& sys) {
  std::vector<cplx> raw;
  SingularLocus out;
  auto take_roots = [&](const Polynomial& p) {
    for (cplx r : p.roots()) {
      if (std::abs(r) < 1e-12) {
        out.at_zero = true;
      } else {
        raw.push_back(r);
      }
    }
  };
  for (int i = 0; i < sys.n(); ++i)
    for (int j = 0; j < sys.n(); ++j) take_roots(sys.A(i, j).den());
  const RationalFunction det = sys.A.determinant();
  take_roots(det.num());
  if (!sys.A.finite_at_infinity() || det.num().degree() < det.den().degree()) out.at_infinity = true;

  // Cluster at 1e-6 to count multiplicities.
  for (cplx r : raw) {
    bool merged = false;
    for (std::size_t k = 0; k < out.points.size(); ++k) {
      if (std::abs(out.points[k] - r) <= 1e-6 * std::max(1.0, std::abs(r))) {
        ++out.multiplicities[k];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.points.push_back(r);
      out.multiplicities.push_back(1);
    }
  }
  return out;
}

FuchsianReport is_strictly_fuchsian(const RationalMatrixSystem& sys) {
  FuchsianReport rep;
  auto check = [&](bool finite, auto value, const char* where, bool& flag) {
    if (!finite) {
      rep.diagnostics.push_back(std::string("pole at ") + where);
      return;
    }
    const Matrix M = value();
    const double scale = std::pow(matrix_scale(M), static_cast<double>(M.rows()));
    if (!(std::abs(M.determinant()) > 1e-10 * scale)) {
      rep.diagnostics.push_back(std::string("singular constant term at ") + where);
      return;
    }
    flag = true;
  };
  check(sys.A.finite_at_zero(), [&] { return sys.A.eval(0.0); }, "0", rep.at_zero);
  check(sys.A.finite_at_infinity(), [&] { return sys.A.at_infinity(); }, "infinity", rep.at_infinity);
  return rep;
}

int spectral_shift_bound(const Matrix& A0, const QParameter& q) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (cplx c : eigenvalues(A0)) {
    lo = std::min(lo, std::abs(c));
    hi = std::max(hi, std::abs(c));
  }
  return static_cast<int>(std::ceil(std::log(hi / lo) / q.log_abs_q())) + 1;
}

std::vector<ResonantPair> resonance_classes(const Matrix& A0, const QParameter& q, int max_shift) {
  const std::vector<cplx> c = eigenvalues(A0);
  std::vector<ResonantPair> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (i == j) continue;
      const double scale = std::max(std::abs(c[i]), std::abs(c[j]));
      if (std::abs(c[i] - c[j]) <= 1e-8 * scale) continue;  // same exponent, not "distinct"
      const auto k = std::llround(std::log(std::abs(c[i] / c[j])) / q.log_abs_q());
      if (k == 0 || std::llabs(k) > max_shift) continue;
      if (std::abs(c[i] - q.ipow(k) * c[j]) <= 1e-8 * std::abs(c[i]))
        out.push_back({static_cast<int>(i), static_cast<int>(j), k});
    }
  return out;
}

bool exponents_in_annulus(const Matrix& A0, const QParameter& q) {
  for (cplx c : eigenvalues(A0))
    if (snapped_epsilon(c, q) != 0) return false;
  return true;
}

Matrix constant_term(const RationalMatrixSystem& sys, End at) {
  return at == End::Zero ? sys.A.eval(0.0) : sys.A.at_infinity();
}

namespace {

// phi(z) P + (I - P) with phi given as a rational function.
RationalMatrix shear_gauge(const Matrix& P, const RationalFunction& phi) {
  const int n = static_cast<int>(P.rows());
  RationalMatrix F(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx delta = (i == j) ? 1.0 : 0.0;
      F(i, j) = phi * RationalFunction::constant(P(i, j)) + RationalFunction::constant(delta - P(i, j));
    }
  return F;
}

// A point of C* away from every singular spiral, used as the pole of the
// rational shear.
cplx pick_shear_pole(const RationalMatrixSystem& sys) {
  const SingularLocus locus = singular_locus(sys);
  for (int k = 0; k < 64; ++k) {
    const cplx zeta = std::polar(1.0 + 0.37 * std::abs(sys.q.q() - 1.0) * ((k % 5) + 1) / 6.0, 0.41 + 0.73 * k);
    bool ok = spiral_distance(zeta, 1.0, sys.q) > 1e-2 && spiral_distance(zeta, -1.0, sys.q) > 1e-2;
    for (cplx s : locus.points) ok = ok && spiral_distance(zeta, s, sys.q) > 1e-2;
    if (ok) return zeta;
  }
  throw NumericFailure("normalize: could not place the rational shear pole");
}

RationalFunction shear_factor(End at, int direction, bool rational, cplx zeta) {
  const Polynomial z = Polynomial::monomial(1);
  const Polynomial one = Polynomial::constant(1.0);
  RationalFunction phi;
  if (!rational) {
    phi = RationalFunction(z, one);
  } else if (at == End::Zero) {
    phi = RationalFunction(z, Polynomial({1.0, -1.0 / zeta}));  // z / (1 - z/zeta)
  } else {
    phi = RationalFunction(Polynomial({-zeta, 1.0}), one);  // z - zeta
  }
  if (direction < 0) phi = RationalFunction::constant(1.0) / phi;
  return phi;
}

}  // namespace

NormalizedSystem normalize_nonresonant(const RationalMatrixSystem& sys, End at, bool rational_only) {
  const FuchsianReport start = is_strictly_fuchsian(sys);
  if (!start.strict()) throw DomainError("normalize_nonresonant: system is not strictly fuchsian");

  NormalizedSystem out{sys, RationalMatrix::identity(sys.n()), 0, 0};
  for (int guard = 0; guard < 64; ++guard) {
    const Matrix A0 = constant_term(out.system, at);
    const DunfordPair d = dunford(A0);
    std::size_t target = d.eigenvalues.size();
    for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
      if (snapped_epsilon(d.eigenvalues[k], sys.q) != 0) {
        target = k;
        break;
      }
    }
    if (target == d.eigenvalues.size()) {
      const auto pairs = resonance_classes(A0, sys.q, spectral_shift_bound(A0, sys.q));
      if (!pairs.empty()) {
        const cplx a = eigenvalues(A0)[static_cast<std::size_t>(pairs.front().i)];
        const cplx b = eigenvalues(A0)[static_cast<std::size_t>(pairs.front().j)];
        throw ResonanceError("normalize_nonresonant: exponents on the annulus boundary remain resonant", a, b);
      }
      return out;
    }

    const int direction = snapped_epsilon(d.eigenvalues[target], sys.q) > 0 ? 1 : -1;
    const Matrix& P = d.projectors[target];
    RationalMatrixSystem next = out.system;
    RationalMatrix step;
    bool accepted = false;
    if (!rational_only) {
      step = shear_gauge(P, shear_factor(at, direction, false, 0.0));
      next = gauge_transform(out.system, step);
      accepted = is_strictly_fuchsian(next).strict();
    }
    if (!accepted) {
      const cplx zeta = pick_shear_pole(out.system);
      step = shear_gauge(P, shear_factor(at, direction, true, zeta));
      next = gauge_transform(out.system, step);
      if (!is_strictly_fuchsian(next).strict()) {
        throw NumericFailure("normalize_nonresonant: shear broke strict fuchsianity");
      }
      ++out.rational_steps;
    }
    out.system = next;
    out.gauge = out.gauge * step;
    ++out.steps;
  }
  throw NumericFailure("normalize_nonresonant: no convergence after 64 shearing steps");
}

NormalizedSystem normalize_both(const RationalMatrixSystem& sys) {
  NormalizedSystem first = normalize_nonresonant(sys, End::Zero);
  NormalizedSystem second = normalize_nonresonant(first.system, End::Infinity, /*rational_only=*/true);
  second.gauge = first.gauge * second.gauge;
  second.steps += first.steps;
  second.rational_steps += first.rational_steps;
  return second;
}

}  // namespace qconnect
