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

#include "qconnect/thetafn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace qconnect {

namespace {

// Below this Im(tau) the direct series cancels badly; use the modular form.
constexpr double kModularThreshold = 0.15;

struct CoefficientTable {
  int half_width = 0;
  std::vector<double> re;
  std::vector<double> im;
};

// Smallest N with the first omitted terms (times n, for the derivative sum)
// below the target on both sides, for |z| in [1, |q|).
int direct_half_width(const QParameter& q, const SeriesTolerance& tol) {
  const double lq = q.log_abs_q();
  const double log_target = std::log(tol.target) - std::log(4.0);
  for (int n = 2; n <= tol.max_terms; ++n) {
    const double m = n + 1.0;
    const double pos = lq * (-m * (m - 1.0) / 2.0 + m) + std::log(m);
    const double neg = -lq * m * (m + 1.0) / 2.0 + std::log(m);
    if (std::max(pos, neg) < log_target) return n;
  }
  throw NumericFailure("theta series: no truncation below " + std::to_string(tol.max_terms) +
                       " terms reaches target " + std::to_string(tol.target));
}

CoefficientTable direct_coefficients(const QParameter& q, int n_half) {
  CoefficientTable table;
  table.half_width = n_half;
  table.re.resize(2 * n_half + 1);
  table.im.resize(2 * n_half + 1);
  const cplx log_q_principal = std::log(q.q());
  for (int n = -n_half; n <= n_half; ++n) {
    const double expo = -0.5 * n * (n - 1.0);
    const cplx w = std::exp(expo * log_q_principal);
    table.re[n + n_half] = w.real();
    table.im[n + n_half] = w.imag();
  }
  return table;
}

// log of q^{m(m+1)/2} zbar^m, the factor relating Theta(q^m zbar) to Theta(zbar).
cplx shift_log(const QParameter& q, long long m, cplx zbar) {
  const double tri = 0.5 * static_cast<double>(m) * static_cast<double>(m + 1);
  return tri * std::log(q.q()) + static_cast<double>(m) * std::log(zbar);
}

ThetaLog theta_log_direct(cplx z, const QParameter& q, const SeriesTolerance& tol) {
  const AnnulusDecomposition d = annulus_decompose(z, q);
  const int n_half = direct_half_width(q, tol);
  const CoefficientTable table = direct_coefficients(q, n_half);

  const double zr = d.cbar.real();
  const double zi = d.cbar.imag();
  double s0r = 0, s0i = 0, s1r = 0, s1i = 0;
  kernels::bilateral_sums_scalar({table.re, table.im, n_half}, {{&zr, 1}, {&zi, 1}},
                                 {{&s0r, 1}, {&s0i, 1}, {&s1r, 1}, {&s1i, 1}});
  const cplx s0{s0r, s0i};
  const cplx s1{s1r, s1i};
  return {std::log(s0) + shift_log(q, d.epsilon, d.cbar), s1 / s0 + static_cast<double>(d.epsilon),
          n_half};
}

// Theta(zbar) = (-i tau)^{-1/2} sum_n exp(-i pi (n - nu)^2 / tau), nu = x - tau/2,
// zbar = exp(2 i pi x). The Gaussian terms peak at n ~ Re nu.
ThetaLog theta_log_modular(cplx z, const QParameter& q, const SeriesTolerance& tol) {
  const AnnulusDecomposition d = annulus_decompose(z, q);
  const cplx tau = q.tau() - std::round(q.tau().real());
  const cplx x = std::log(d.cbar) / kTwoPiI;
  const cplx nu = x - 0.5 * tau;
  const long long center = std::llround(nu.real());
  const cplx factor = cplx{0.0, -kPi} / tau;

  auto exponent = [&](long long n) {
    const cplx dn = static_cast<double>(n) - nu;
    return factor * dn * dn;
  };

  double e_max = exponent(center).real();
  for (long long n = center - 1; n <= center + 1; ++n) e_max = std::max(e_max, exponent(n).real());

  cplx s0{0.0, 0.0};
  cplx s1{0.0, 0.0};
  auto accumulate = [&](long long n) {
    const cplx dn = static_cast<double>(n) - nu;
    const cplx term = std::exp(exponent(n) - e_max);
    s0 += term;
    s1 += dn * term;
    return std::abs(term) * (1.0 + std::abs(dn));
  };
  accumulate(center);
  for (int k = 1; k <= tol.max_terms; ++k) {
    const double edge = std::max(accumulate(center - k), accumulate(center + k));
    if (k >= 2 && edge < 0.25 * tol.target * std::abs(s0)) {
      const cplx log_val = -0.5 * std::log(cplx{0.0, -1.0} * tau) + e_max + std::log(s0) +
                           shift_log(q, d.epsilon, d.cbar);
      return {log_val, s1 / (tau * s0) + static_cast<double>(d.epsilon), k};
    }
  }
  throw NumericFailure("theta modular series: no convergence within " +
                       std::to_string(tol.max_terms) + " terms");
}

bool use_modular(const QParameter& q, ThetaMethod method) {
  if (method == ThetaMethod::Direct) return false;
  if (method == ThetaMethod::Modular) return true;
  return q.tau().imag() < kModularThreshold;
}

// to_z maps the theta argument back to the caller's variable so the reported
// spiral point is a point of the z-plane.
void check_theta_zero(cplx w, const QParameter& q, const char* what, cplx to_z = 1.0) {
  // zeros of the standard theta sit on -q^Z
  if (spiral_distance(w, -1.0, q) < kThetaZeroTolerance) {
    const AnnulusDecomposition d = annulus_decompose(-w, q);
    const long long k = std::abs(d.cbar - 1.0) < std::abs(d.cbar - q.q()) / q.abs_q() ? d.epsilon
                                                                                   : d.epsilon + 1;
    const cplx spiral_point = -q.ipow(k) * to_z;
    throw PoleProximity(std::string(what) + ": point " + to_string(w * to_z) +
                            " is within tolerance of the singular point " + to_string(spiral_point),
                        spiral_point);
  }
}

cplx reflect(cplx z, ThetaConvention conv) { return conv == ThetaConvention::Reflected ? -z : z; }

}  // namespace

void SeriesTolerance::validate() const {
  if (!(target >= 1e-15) || !std::isfinite(target)) {
    throw DomainError("SeriesTolerance.target must be >= 1e-15");
  }
  if (max_terms < 1 || max_terms > 200) {
    throw DomainError("SeriesTolerance.max_terms must lie in [1, 200]");
  }
}

SeriesTolerance SeriesTolerance::with_env_override() const {
  SeriesTolerance out = *this;
  if (const char* env = std::getenv("QCONNECT_MAX_TERMS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') throw DomainError("QCONNECT_MAX_TERMS is not an integer");
    out.max_terms = static_cast<int>(value);
  }
  out.validate();
  return out;
}

ThetaLog theta_log(cplx z, const QParameter& q, const SeriesTolerance& tol, ThetaMethod method) {
  tol.validate();
  if (z == cplx{0.0, 0.0}) throw DomainError("theta: z must be nonzero");
  return use_modular(q, method) ? theta_log_modular(z, q, tol) : theta_log_direct(z, q, tol);
}

cplx theta(cplx z, const QParameter& q, const SeriesTolerance& tol, ThetaConvention conv) {
  return std::exp(theta_log(reflect(z, conv), q, tol).log_value);
}

cplx qlog(cplx z, const QParameter& q, const SeriesTolerance& tol, ThetaConvention conv) {
  const cplx w = reflect(z, conv);
  check_theta_zero(w, q, "qlog", reflect(1.0, conv));
  return theta_log(w, q, tol).zdlog;
}

cplx qchar(cplx c, cplx z, const QParameter& q, const SeriesTolerance& tol, ThetaConvention conv) {
  if (z == cplx{0.0, 0.0}) throw DomainError("qchar: z must be nonzero");
  const AnnulusDecomposition d = annulus_decompose(c, q);
  if (d.cbar == cplx{1.0, 0.0}) return ipow(z, d.epsilon);
  const cplx w = reflect(z, conv);
  check_theta_zero(w / d.cbar, q, "qchar", reflect(d.cbar, conv));
  const ThetaLog num = theta_log(w, q, tol);
  const ThetaLog den = theta_log(w / d.cbar, q, tol);
  return ipow(z, d.epsilon) * std::exp(num.log_value - den.log_value);
}

cplx cocycle_phi(cplx c, cplx d, cplx z, const QParameter& q, const SeriesTolerance& tol) {
  return qchar(c, z, q, tol) * qchar(d, z, q, tol) / qchar(c * d, z, q, tol);
}

cplx psi(cplx a, cplx c, const QParameter& q, const SeriesTolerance& tol) {
  return char_eval(CharacterSpec::g(a, q), c, q) / qchar(c, a, q, tol);
}

namespace {

struct BatchResult {
  std::vector<cplx> log_value;
  std::vector<cplx> zdlog;
};

BatchResult theta_log_batch(std::span<const cplx> points, const QParameter& q,
                            const SeriesTolerance& tol, kernels::Isa isa) {
  tol.validate();
  BatchResult out;
  out.log_value.resize(points.size());
  out.zdlog.resize(points.size());
  if (use_modular(q, ThetaMethod::Auto)) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      const ThetaLog t = theta_log(points[k], q, tol);
      out.log_value[k] = t.log_value;
      out.zdlog[k] = t.zdlog;
    }
    return out;
  }

  const int n_half = direct_half_width(q, tol);
  const CoefficientTable table = direct_coefficients(q, n_half);
  const std::size_t count = points.size();
  std::vector<double> zr(count), zi(count), s0r(count), s0i(count), s1r(count), s1i(count);
  std::vector<AnnulusDecomposition> folded;
  folded.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (points[k] == cplx{0.0, 0.0}) throw DomainError("theta: z must be nonzero");
    folded.push_back(annulus_decompose(points[k], q));
    zr[k] = folded.back().cbar.real();
    zi[k] = folded.back().cbar.imag();
  }
  kernels::bilateral_sums({table.re, table.im, n_half}, {zr, zi}, {s0r, s0i, s1r, s1i}, isa);
  for (std::size_t k = 0; k < count; ++k) {
    const cplx s0{s0r[k], s0i[k]};
    const cplx s1{s1r[k], s1i[k]};
    out.log_value[k] = std::log(s0) + shift_log(q, folded[k].epsilon, folded[k].cbar);
    out.zdlog[k] = s1 / s0 + static_cast<double>(folded[k].epsilon);
  }
  return out;
}

}  // namespace

std::vector<cplx> theta_batch(std::span<const cplx> points, const QParameter& q,
                              const SeriesTolerance& tol, kernels::Isa isa) {
  BatchResult r = theta_log_batch(points, q, tol, isa);
  std::vector<cplx> values(points.size());
  std::transform(r.log_value.begin(), r.log_value.end(), values.begin(),
                 [](cplx l) { return std::exp(l); });
  return values;
}

std::vector<cplx> qlog_batch(std::span<const cplx> points, const QParameter& q,
                             const SeriesTolerance& tol, kernels::Isa isa) {
  for (cplx z : points) check_theta_zero(z, q, "qlog");
  return theta_log_batch(points, q, tol, isa).zdlog;
}

}  // namespace qconnect
