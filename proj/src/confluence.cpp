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

#include "qconnect/confluence.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace qconnect {

QParameter q_at(const QParameter& q0, double eps) { return QParameter::from_tau(eps * q0.tau()); }

std::vector<double> default_eps_list() {
  std::vector<double> out;
  for (int k = 2; k <= 7; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

namespace {

// x tau0 = u' + v' tau0 with u', v' real.
std::pair<double, double> tilde_split(cplx xprime, cplx tau0) {
  const cplx t = xprime * tau0;
  const double v = t.imag() / tau0.imag();
  return {t.real() - v * tau0.real(), v};
}

}  // namespace

cplx TildeCharacterSpec::eval(cplx xprime, cplx tau0) const {
  const auto [u, v] = tilde_split(xprime, tau0);
  switch (kind) {
    case Kind::Gamma1:
      return std::exp(kTwoPiI * w * u);
    case Kind::Gamma2:
      return std::exp(kTwoPiI * v);
    case Kind::Trivial:
      break;
  }
  return {1.0, 0.0};
}

cplx confluent_log(cplx z, const QParameter& q0) {
  if (z == cplx{0.0, 0.0}) throw DomainError("confluent_log: z must be nonzero");
  const cplx tau0 = q0.tau();
  const cplx x = std::log(z) / kTwoPiI;
  const double v = x.imag() / tau0.imag();
  double u = x.real() - v * tau0.real();
  const double shift = std::round(u);
  u -= shift;
  if (std::abs(std::abs(u) - 0.5) < 1e-6) throw DomainError("confluent_log: z lies on the cut -q0^R");
  return kTwoPiI * (u + v * tau0);
}

std::vector<double> char_limit_scan(const QParameter& q0, cplx gamma, cplx z, const std::vector<double>& eps) {
  const cplx target = std::exp(gamma * confluent_log(z, q0));
  std::vector<double> out;
  for (double e : eps) {
    const QParameter q = q_at(q0, e);
    out.push_back(std::abs(qchar(q.pow(gamma), z, q) - target));
  }
  return out;
}

std::vector<double> log_limit_scan(const QParameter& q0, cplx z, const std::vector<double>& eps) {
  const cplx target = confluent_log(z, q0);
  std::vector<double> out;
  for (double e : eps) {
    const QParameter q = q_at(q0, e);
    out.push_back(std::abs((q.q() - 1.0) * qlog(z, q) - target));
  }
  return out;
}

ConfluentFamily ConfluentFamily::standard(const QParameter& q0, const RationalMatrix& Btilde) {
  ConfluentFamily f{q0, Btilde, {}};
  f.builder = [q0, Btilde](double eps) {
    const QParameter q = q_at(q0, eps);
    const RationalMatrix A =
        RationalMatrix::identity(Btilde.rows()) + Btilde * RationalFunction::constant(q.q() - 1.0);
    return RationalMatrixSystem{A, q};
  };
  return f;
}

double ConfluentFamily::family_defect(double eps) const {
  const RationalMatrixSystem sys = at(eps);
  const RationalMatrix diff = (sys.A + RationalMatrix::identity(sys.n()) * RationalFunction::constant(-1.0)) *
                              RationalFunction::constant(1.0 / (sys.q.q() - 1.0));
  return diff.distance(Btilde);
}

LocalGeneratorScan local_gen_limit(const ConfluentFamily& family, const std::vector<double>& eps) {
  if (!family.Btilde.finite_at_zero()) throw DomainError("local_gen_limit: Btilde has a pole at 0");
  const Matrix B0 = family.Btilde.eval(0.0);
  const Eigen::Index n = B0.rows();
  // Differential non-resonance: no two eigenvalues of B(0) differ by a nonzero integer.
  const std::vector<cplx> ev = eigenvalues(B0);
  for (cplx a : ev)
    for (cplx b : ev) {
      const cplx d = a - b;
      const double k = std::round(d.real());
      if (k != 0.0 && std::abs(d - k) < 1e-8) {
        throw DomainError("local_gen_limit: B(0) is resonant (eigenvalues " + to_string(a) + " and " +
                          to_string(b) + ")");
      }
    }

  // Spectral projectors of B(0) shift its eigenvalues by 1 without moving;
  // shifting avoids a singular Dunford input when B(0) has eigenvalue 0.
  const DunfordPair dB = dunford(B0 + Matrix::Identity(n, n));
  const cplx tau0 = family.q0.tau();
  auto limit_of = [&](const TildeCharacterSpec& spec) {
    return apply_to_ss([&](cplx c) { return spec.eval(c - 1.0, tau0); }, dB);
  };
  const Matrix lim1 = limit_of(TildeCharacterSpec::gamma1(kGamma1LimitWinding));
  const Matrix lim2 = limit_of(TildeCharacterSpec::gamma2());

  LocalGeneratorScan out;
  for (double e : eps) {
    const RationalMatrixSystem sys = family.at(e);
    const FlatObject A0 = FlatObject::make(sys.A.eval(0.0), sys.q);
    const Matrix g1 = act({CharacterSpec::gamma1(), 0.0}, A0, sys.q);
    const Matrix g2 = act({CharacterSpec::gamma2(), 0.0}, A0, sys.q);
    Matrix power = Matrix::Identity(n, n);
    const auto m = static_cast<long long>(std::floor(1.0 / e));
    for (long long i = 0; i < m; ++i) power = power * g1;
    out.gamma1.push_back((power - lim1).norm());
    out.gamma2.push_back((g2 - lim2).norm());
  }
  return out;
}

namespace {

void require_off_rays(cplx z, const std::vector<cplx>& rays, const QParameter& q0) {
  for (cplx s : rays) {
    if (std::abs(split(z / s, q0).u - 1.0) < 1e-3) {
      throw DomainError("connection_limit_scan: probe " + to_string(z) + " lies on the spiral " + to_string(s) +
                        "·q0^R");
    }
  }
}

}  // namespace

std::vector<ScanRow> connection_limit_scan(const ConfluentFamily& family, const std::vector<double>& eps,
                                           const std::vector<Probe>& probes, int K) {
  std::vector<cplx> rays{1.0, -1.0};
  for (int i = 0; i < family.Btilde.rows(); ++i)
    for (int j = 0; j < family.Btilde.cols(); ++j)
      for (cplx r : family.Btilde(i, j).den().roots())
        if (std::abs(r) > 1e-12) rays.push_back(r);
  for (const Probe& p : probes) {
    require_off_rays(p.z1, rays, family.q0);
    require_off_rays(p.z2, rays, family.q0);
  }

  // values[e][p] = (P(z1), P(z2))
  std::vector<std::vector<std::pair<Matrix, Matrix>>> values;
  for (double e : eps) {
    const ConnectionTriple t = build_triple(family.at(e), K);
    std::vector<std::pair<Matrix, Matrix>> row;
    for (const Probe& p : probes) row.emplace_back(connection_P(t, p.z1), connection_P(t, p.z2));
    values.push_back(std::move(row));
  }
  std::size_t finest = 0;
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (eps[i] < eps[finest]) finest = i;

  std::vector<ScanRow> rows;
  for (std::size_t i = 0; i < eps.size(); ++i)
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const auto& [P1, P2] = values[i][p];
      double err;
      if (probes[p].same_slice) {
        err = (P1 - P2).norm();
      } else {
        const auto& [F1, F2] = values[finest][p];
        err = (P2.fullPivLu().solve(P1) - F2.fullPivLu().solve(F1)).norm();
      }
      rows.push_back({eps[i], static_cast<int>(p), err});
    }
  return rows;
}

bool non_increasing(const std::vector<double>& errors, double slack, double floor) {
  for (std::size_t i = 1; i < errors.size(); ++i)
    if (errors[i] > slack * errors[i - 1] && errors[i] > floor) return false;
  return true;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "eps,probe,error\n" << std::setprecision(17);
  for (const ScanRow& r : rows) os << r.eps << ',' << r.probe << ',' << r.error << '\n';
  return os.str();
}

std::string scan_csv(const std::vector<double>& eps, const std::vector<double>& errors, int probe) {
  std::vector<ScanRow> rows;
  for (std::size_t i = 0; i < eps.size() && i < errors.size(); ++i) rows.push_back({eps[i], probe, errors[i]});
  return scan_csv(rows);
}

}  // namespace qconnect
