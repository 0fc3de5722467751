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

#ifndef QCONNECT_CONFLUENCE_HPP
#define QCONNECT_CONFLUENCE_HPP

#include <functional>
#include <string>
#include <vector>

#include "qconnect/connection.hpp"

namespace qconnect {

/// q_eps = q0^eps, i.e. tau_eps = eps * tau0.
QParameter q_at(const QParameter& q0, double eps);

/// Default scan: eps = 2^-k, k = 2..7.
std::vector<double> default_eps_list();

/// Character of C* in the differential limit, written on x' with z' = e^{2 i pi x'}
/// and x' tau0 = u' + v' tau0: gamma1~^w sends x' to e^{2 i pi w u'}, gamma2~
/// to e^{2 i pi v'}.
struct TildeCharacterSpec {
  enum class Kind { Trivial, Gamma1, Gamma2 };
  Kind kind = Kind::Trivial;
  cplx w{1.0, 0.0};

  static TildeCharacterSpec gamma1(cplx w = 1.0) { return {Kind::Gamma1, w}; }
  static TildeCharacterSpec gamma2() { return {Kind::Gamma2, 1.0}; }
  cplx eval(cplx xprime, cplx tau0) const;
};

/// log z = 2 i pi x with x = u + v tau0, u in (-1/2, 1/2); the cut is -q0^R.
cplx confluent_log(cplx z, const QParameter& q0);

/// |e_{q_eps, q_eps^gamma}(z) - z^gamma| for each eps.
std::vector<double> char_limit_scan(const QParameter& q0, cplx gamma, cplx z, const std::vector<double>& eps);
/// |(q_eps - 1) l_{q_eps}(z) - log z| for each eps.
std::vector<double> log_limit_scan(const QParameter& q0, cplx z, const std::vector<double>& eps);

/// A_eps = builder(eps); the default builder is I + (q_eps - 1) Btilde(z).
struct ConfluentFamily {
  QParameter q0;
  RationalMatrix Btilde;
  std::function<RationalMatrixSystem(double)> builder;

  static ConfluentFamily standard(const QParameter& q0, const RationalMatrix& Btilde);
  RationalMatrixSystem at(double eps) const { return builder(eps); }
  /// max coefficient distance of (A_eps - I)/(q_eps - 1) from Btilde.
  double family_defect(double eps) const;
};

struct LocalGeneratorScan {
  std::vector<double> gamma1;  // ||gamma1(A_eps(0))^{floor(1/eps)} - gamma1~^{-1}(e^{2 i pi B(0)})||
  std::vector<double> gamma2;  // ||gamma2(A_eps(0)) - gamma2~(e^{2 i pi B(0)})||
};

/// Winding exponent w of the renormalized gamma1 limit; see README.
inline constexpr double kGamma1LimitWinding = -1.0;

LocalGeneratorScan local_gen_limit(const ConfluentFamily& family, const std::vector<double>& eps);

struct Probe {
  cplx z1;
  cplx z2;
  bool same_slice;
};

struct ScanRow {
  double eps;
  int probe;
  double error;
};

/// Same-slice probes: ||P_eps(z1) - P_eps(z2)||. Across-slice probes:
/// ||D_eps - D_min|| with D = P(z2)^{-1} P(z1) and D_min its value at the
/// smallest eps.
std::vector<ScanRow> connection_limit_scan(const ConfluentFamily& family, const std::vector<double>& eps,
                                           const std::vector<Probe>& probes, int K = 60);

/// e_{i+1} <= slack * e_i for all i, ignoring entries already below floor
/// (round-off level).
bool non_increasing(const std::vector<double>& errors, double slack = 1.2, double floor = 1e-12);

std::string scan_csv(const std::vector<ScanRow>& rows);
std::string scan_csv(const std::vector<double>& eps, const std::vector<double>& errors, int probe = 0);

}  // namespace qconnect

#endif  // QCONNECT_CONFLUENCE_HPP
