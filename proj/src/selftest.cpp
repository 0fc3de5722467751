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

#include "qconnect/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "qconnect/confluence.hpp"

namespace qconnect {

namespace {

using Suite = std::function<void(std::vector<CheckResult>&)>;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  cplx annulus(const QParameter& q) { return std::polar(uniform(1.0, q.abs_q()), uniform(-kPi, kPi)); }
  cplx point(double lo = 0.2, double hi = 5.0) { return std::polar(uniform(lo, hi), uniform(-kPi, kPi)); }
  Matrix matrix(int n) {
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
    return M;
  }

 private:
  std::mt19937_64 rng_;
};

void record(std::vector<CheckResult>& out, const char* module, const char* name, double value, double threshold) {
  out.push_back({module, name, std::isfinite(value) && value < threshold, value, threshold});
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

void suite_qcore(std::vector<CheckResult>& out) {
  Sampler s(11);
  const QParameter q = QParameter::from_tau({0.13, 0.21});
  double id = 0.0, hom = 0.0, shift = 0.0;
  const CharacterSpec g2mt = CharacterSpec::gamma2_pow(-q.tau());
  for (int i = 0; i < 100; ++i) {
    const cplx z = s.point(0.01, 50.0);
    id = std::max(id, rel(char_eval(CharacterSpec::gamma1(), z, q) * char_eval(g2mt, z, q), z));
  }
  const std::vector<CharacterSpec> specs{CharacterSpec::gamma1(), CharacterSpec::gamma2(),
                                         CharacterSpec::gamma2_pow({0.3, 0.2}), CharacterSpec::delta(1.7, q),
                                         CharacterSpec::g({3.0, 1.0}, q)};
  for (const CharacterSpec& g : specs)
    for (int i = 0; i < 100; ++i) {
      const cplx a = s.point(0.1, 10.0), b = s.point(0.1, 10.0);
      hom = std::max(hom, rel(char_eval(g, a * b, q), char_eval(g, a, q) * char_eval(g, b, q)));
    }
  for (int i = 0; i < 20; ++i) {
    const cplx a = s.point(0.3, 3.0), z = s.point(0.3, 3.0);
    const cplx ratio = char_eval(CharacterSpec::g(q.q() * a, q), z, q) / char_eval(CharacterSpec::g(a, q), z, q);
    shift = std::max(shift, rel(ratio, char_eval(CharacterSpec::delta(1.0, q), z, q)));
  }
  // Both characters trivial at z forces z into q^Z.
  double kernel = 0.0;
  for (int k = 0; k < 7; ++k)
    for (double y : {-2.0, -1.0, 0.0, 0.5, 1.0, 1.3, 2.0}) {
      const cplx z = std::exp(kTwoPiI * (k / 7.0)) * q.pow(y);
      const bool t1 = std::abs(char_eval(CharacterSpec::gamma1(), z, q) - 1.0) < 1e-10;
      const bool t2 = std::abs(char_eval(CharacterSpec::gamma2(), z, q) - 1.0) < 1e-10;
      if (t1 && t2) kernel = std::max(kernel, distance_to_q_lattice(z, q) / std::abs(z));
      if (!(t1 && t2) && k == 0 && y == std::round(y)) kernel = 1.0;  // q^n must be in the kernel
    }
  record(out, "qcore", "gamma1 * gamma2^-tau = id", id, 1e-10);
  record(out, "qcore", "characters are homomorphisms", hom, 1e-10);
  record(out, "qcore", "g_qa / g_a = delta_1", shift, 1e-10);
  record(out, "qcore", "joint kernel is q^Z", kernel, 1e-8);
}

void suite_thetafn(std::vector<CheckResult>& out) {
  Sampler s(12);
  double fe = 0.0;
  for (double r : {1.5, 4.0, 10.0}) {
    const QParameter q = QParameter::from_q(std::polar(r, 0.7));
    for (int i = 0; i < 100; ++i) {
      const cplx z = s.annulus(q);
      const cplx lhs = theta(q.q() * z, q);
      fe = std::max(fe, std::abs(lhs - kThetaShiftSign * q.q() * z * theta(z, q)) / std::abs(lhs));
    }
  }
  const QParameter q = QParameter::from_q(4.0);
  double pw = 0.0, shift = 0.0, lg = 0.0;
  for (int n = -2; n <= 3; ++n)
    for (int i = 0; i < 10; ++i) {
      const cplx z = s.point(0.3, 3.0);
      pw = std::max(pw, rel(qchar(q.ipow(n), z, q), ipow(z, n)));
    }
  for (int i = 0; i < 20; ++i) {
    const cplx c = s.point(0.2, 8.0), z = s.point(0.3, 3.0);
    shift = std::max(shift, rel(qchar(c, q.q() * z, q) / qchar(c, z, q), c));
    lg = std::max(lg, std::abs(qlog(q.q() * z, q) - qlog(z, q) - 1.0));
  }
  // Every detected pole must sit on -cbar q^Z.
  double pole = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cplx c = s.point(0.5, 6.0);
    const cplx cbar = annulus_decompose(c, q).cbar;
    const cplx z = -cbar * q.ipow(s.integer(-2, 2)) * (1.0 + 1e-11);
    try {
      (void)qchar(c, z, q);
      pole = 1.0;
    } catch (const PoleProximity& e) {
      pole = std::max(pole, spiral_distance(e.spiral_point(), -cbar, q));
    }
  }
  record(out, "thetafn", "theta functional equation", fe, 1e-12);
  record(out, "thetafn", "e_{q,q^n} = z^n", pw, 1e-10);
  record(out, "thetafn", "e_{q,c}(qz) = c e_{q,c}(z)", shift, 1e-10);
  record(out, "thetafn", "l_q(qz) = l_q(z) + 1", lg, 1e-10);
  record(out, "thetafn", "poles reported on the cbar spiral", pole, 1e-6);
}

void suite_matfun(std::vector<CheckResult>& out) {
  Sampler s(13);
  const QParameter q = QParameter::from_q({3.0, 1.0});
  double fe = 0.0, assoc = 0.0, commute = 0.0, transport = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Matrix A = s.matrix(3) + 2.0 * Matrix::Identity(3, 3);
    const cplx z = s.point(0.5, 2.0);
    const Matrix E = e_matrix(A, z, q);
    fe = std::max(fe, (e_matrix(A, q.q() * z, q) - A * E).norm() / (A * E).norm());

    const Matrix X = s.matrix(2), Y = s.matrix(3), Z = s.matrix(2);
    assoc = std::max(assoc, (kron(kron(X, Y), Z) - kron(X, kron(Y, Z))).norm());

    const DunfordPair d = dunford(A);
    const Matrix C = A * A + 0.5 * A;  // commutes with A
    commute = std::max(commute, (C * d.s - d.s * C).norm() + (C * d.u - d.u * C).norm());

    const Matrix S = s.matrix(3) + 3.0 * Matrix::Identity(3, 3);
    const Matrix B = S * A * S.inverse();
    auto f = [](cplx c) { return std::sqrt(c) + c * c; };
    const DunfordPair dB = dunford(B);
    transport = std::max(transport, (S * apply_to_ss(f, d) - apply_to_ss(f, dB) * S).norm());
    transport = std::max(transport, (S * unipotent_pow(d.u, 0.3) - unipotent_pow(dB.u, 0.3) * S).norm());
  }
  record(out, "matfun", "e_{q,A}(qz) = A e_{q,A}(z)", fe, 1e-9);
  record(out, "matfun", "kron is associative", assoc, 1e-14);
  record(out, "matfun", "Dunford factors commute with commutants", commute, 1e-9);
  record(out, "matfun", "intertwining transport", transport, 1e-9);
}

void suite_flatcat(std::vector<CheckResult>& out) {
  Sampler s(14);
  const QParameter q = QParameter::from_q(4.0);
  double comp = 0.0, nat = 0.0, jordan = 0.0, density = 0.0;
  for (int i = 0; i < 10; ++i) {
    const FlatObject X = FlatObject::make(s.matrix(2) + 2.0 * Matrix::Identity(2, 2), q);
    const GaloisElement g1{{s.integer(-2, 2), cplx(s.integer(-2, 2))}, {s.uniform(-1, 1), s.uniform(-1, 1)}};
    const GaloisElement g2{{s.integer(-2, 2), cplx(s.integer(-2, 2))}, {s.uniform(-1, 1), 0.0}};
    comp = std::max(comp, (act(g1, X, q) * act(g2, X, q) - act(g1 * g2, X, q)).norm());
  }
  const std::vector<std::pair<Matrix, Matrix>> pairs{
      {Matrix::Identity(1, 1), Matrix::Constant(1, 1, q.q())},
      {Matrix::Constant(1, 1, 1.7), Matrix::Constant(1, 1, 1.7)},
      {Matrix{{2.0, 1.0}, {0.0, 2.0}}, Matrix{{8.0, 0.0}, {0.0, 2.0}}},
  };
  for (const auto& [a, b] : pairs) {
    const FlatObject A = FlatObject::make(a, q), B = FlatObject::make(b, q);
    for (const LaurentMatrixMorphism& F : hom_space(A, B, q))
      for (int i = 0; i < 5; ++i) {
        const GaloisElement g{{s.integer(-3, 3), cplx(s.integer(-3, 3))}, {s.uniform(-1, 1), s.uniform(-1, 1)}};
        nat = std::max(nat, naturality_check(g, F, A, B, s.point(0.5, 2.0), q));
      }
  }
  for (int n = 1; n <= 6; ++n)
    for (int p = 1; p <= 6; ++p) {
      const std::vector<int> sizes = jordan_tensor_decompose(n, p);
      int total = 0;
      for (std::size_t k = 0; k < sizes.size(); ++k) {
        total += sizes[k];
        if (k > 0 && sizes[k - 1] - sizes[k] != 2) jordan = 1.0;
      }
      if (total != n * p) jordan = 1.0;
    }
  // Lines fixed by gamma1 and gamma2 stay fixed under random q-killing characters.
  const std::vector<cplx> ev{2.0, 2.0 * q.q(), 3.0, {0.0, 1.5}};
  for (int trial = 0; trial < 50; ++trial) {
    Vector x = Vector::Zero(4);
    for (int k = 0; k < 4; ++k)
      if (s.integer(0, 1) == 1) x(k) = {s.uniform(-1, 1), s.uniform(-1, 1)};
    if (x.norm() == 0.0) x(0) = 1.0;
    if (!eigen_line_condition(ev, x, {CharacterSpec::gamma1(), CharacterSpec::gamma2()}, q)) continue;
    std::vector<CharacterSpec> random;
    for (int k = 0; k < 50; ++k) random.push_back({s.integer(-5, 5), cplx(s.integer(-5, 5))});
    if (!eigen_line_condition(ev, x, random, q)) density = 1.0;
  }
  record(out, "flatcat", "action composition", comp, 1e-10);
  record(out, "flatcat", "naturality over hom bases", nat, 1e-9);
  record(out, "flatcat", "plethysm progression", jordan, 0.5);
  record(out, "flatcat", "density proxy line transfer", density, 0.5);
}

void suite_ratsys(std::vector<CheckResult>& out) {
  const QParameter q = QParameter::from_q(4.0);
  RationalMatrix A(2, 2);
  A(0, 0) = RationalFunction::constant(1.0);
  A(0, 1) = RationalFunction(Polynomial({0.0, 1.0}), Polynomial({1.0, -1.0 / 3.0}));
  A(1, 0) = RationalFunction(Polynomial({0.0, 0.5}), Polynomial({1.0, 0.25}));
  A(1, 1) = RationalFunction(Polynomial({4.0, -1.0}), Polynomial({1.0, -0.5}));
  const RationalMatrixSystem sys{A, q};
  RationalMatrix F = RationalMatrix::identity(2);
  F(0, 1) = RationalFunction(Polynomial({0.0, 1.0}), Polynomial({1.0, -0.2}));
  const RationalMatrixSystem g = gauge_transform(sys, F);
  const RationalMatrixSystem back = gauge_transform(g, F.inverse());
  double round_trip = 0.0;
  for (cplx z : {cplx{0.7, 0.2}, cplx{-1.1, 0.9}, cplx{6.0, -2.0}})
    round_trip = std::max(round_trip, (back.A.eval(z) - A.eval(z)).norm() / A.eval(z).norm());

  // S(gauge(A,F)) within S(A), S(F) and q^{-1} S(F).
  std::vector<cplx> allowed = singular_locus(sys).points;
  for (cplx r : F(0, 1).den().roots()) {
    allowed.push_back(r);
    allowed.push_back(r / q.q());
  }
  double covariance = 0.0;
  for (cplx p : singular_locus(g).points) {
    double best = std::numeric_limits<double>::infinity();
    for (cplx a : allowed) best = std::min(best, std::abs(p - a) / std::abs(a));
    covariance = std::max(covariance, best);
  }
  const NormalizedSystem ns = normalize_nonresonant(sys, End::Zero);
  const Matrix A0 = constant_term(ns.system, End::Zero);
  const double normal =
      resonance_classes(A0, q, spectral_shift_bound(A0, q)).empty() && exponents_in_annulus(A0, q) ? 0.0 : 1.0;
  record(out, "ratsys", "gauge round trip", round_trip, 1e-10);
  record(out, "ratsys", "singular locus covariance", covariance, 1e-6);
  record(out, "ratsys", "normalized exponents non-resonant in annulus", normal, 0.5);
}

RationalFunction sample_a() { return {Polynomial({0.0, 1.0}), Polynomial({1.0, 0.0, 1.0})}; }

void suite_reduction(std::vector<CheckResult>& out) {
  Sampler s(16);
  const QParameter q = QParameter::from_q(4.0);
  const RationalMatrixSystem sys = rank2_unipotent_system(sample_a(), q);
  const TruncatedMatrixSeries f0 = reduce_at_zero(sys), finf = reduce_at_infty(sys);
  double gauge = 0.0, product = 0.0;
  const std::vector<cplx> spirals = singular_locus(sys).points;
  for (int i = 0; i < 20; ++i) {
    const cplx z = s.point(0.1, 20.0);
    for (const TruncatedMatrixSeries* f : {&f0, &finf}) {
      const Matrix lhs = eval_gauge(*f, q.q() * z) * f->A0.A;
      gauge = std::max(gauge, (lhs - sys.A.eval(z) * eval_gauge(*f, z)).norm() / std::max(1.0, lhs.norm()));
    }
    product = std::max(product, (product_solution_regular(sys, z) - eval_gauge(f0, z)).norm());
  }
  record(out, "reduction", "recurrence residual", std::max(f0.recurrence_residual(), finf.recurrence_residual()),
         1e-10);
  record(out, "reduction", "gauge functional equation", gauge, 1e-9);
  record(out, "reduction", "regular product agrees with series", product, 1e-8);
}

void suite_connection(std::vector<CheckResult>& out) {
  Sampler s(17);
  const QParameter q = QParameter::from_q(4.0);
  const ConnectionTriple t5 = build_triple(rank2_unipotent_system(sample_a(), q));
  const ConnectionTriple t4 = build_triple(rank1_system({2.0, 3.0}, {6.0, 1.0}, q));
  double ell = 0.0, inter = 0.0, comm = 0.0, func = 0.0;
  for (const ConnectionTriple* t : {&t4, &t5}) {
    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i) {
      const cplx z = s.point(0.3, 3.0);
      pts.push_back(z);
      ell = std::max(ell, (connection_P(*t, q.q() * z) - connection_P(*t, z)).norm());
      inter = std::max(inter, (t->M(q.q() * z) * t->A0().A - t->Ainf().A * t->M(z)).norm());
    }
    const std::vector<Matrix> samples = connection_group_sample(*t, pts, true);
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (std::size_t j = i + 1; j < samples.size(); ++j)
        comm = std::max(comm, (samples[i] * samples[j] - samples[j] * samples[i]).norm());
  }
  // Constant conjugation R gives a triple morphism (R^{-1}, R^{-1}).
  const Matrix R{{1.0, 0.5}, {-0.25, 2.0}};
  const RationalMatrixSystem base = rank2_unipotent_system(sample_a(), q);
  const RationalMatrixSystem conj = gauge_transform(base, RationalMatrix::constant(R));
  const ConnectionTriple tc = build_triple(conj);
  const Matrix S = R.inverse();
  for (int i = 0; i < 5; ++i) {
    const cplx z = s.point(0.3, 3.0);
    func = std::max(func, (S * t5.M(z) - tc.M(z) * S).norm());
  }
  record(out, "connection", "ellipticity of P", ell, 1e-8);
  record(out, "connection", "intertwining of M", inter, 1e-8);
  record(out, "connection", "functoriality of paths", func, 1e-9);
  record(out, "connection", "abelian samples commute", comm, 1e-9);
}

void suite_confluence(std::vector<CheckResult>& out) {
  const QParameter q0 = QParameter::from_tau({0.0, 0.25});
  const std::vector<double> eps = default_eps_list();
  const cplx z = std::polar(1.0, kPi / 3.0);
  const std::vector<double> ch = char_limit_scan(q0, {0.3, 0.1}, z, eps);
  const std::vector<double> lg = log_limit_scan(q0, z, eps);
  const double determinism = (ch == char_limit_scan(q0, {0.3, 0.1}, z, eps)) ? 0.0 : 1.0;
  double hom = 0.0;
  for (const TildeCharacterSpec& g : {TildeCharacterSpec::gamma1(-1.0), TildeCharacterSpec::gamma2()})
    for (double a : {0.3, -1.2, 2.5})
      for (double b : {0.7, 0.05})
        hom = std::max(hom, rel(g.eval(cplx{a, b} + cplx{b, -a}, q0.tau()),
                                g.eval({a, b}, q0.tau()) * g.eval({b, -a}, q0.tau())));
  record(out, "confluence", "character scan decreasing", non_increasing(ch) ? 0.0 : 1.0, 0.5);
  record(out, "confluence", "log scan decreasing", non_increasing(lg) ? 0.0 : 1.0, 0.5);
  record(out, "confluence", "scans deterministic", determinism, 0.5);
  record(out, "confluence", "tilde characters are homomorphisms", hom, 1e-10);
}

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> all{
      {"qcore", suite_qcore},         {"thetafn", suite_thetafn},       {"matfun", suite_matfun},
      {"flatcat", suite_flatcat},     {"ratsys", suite_ratsys},         {"reduction", suite_reduction},
      {"connection", suite_connection}, {"confluence", suite_confluence},
  };
  return all;
}

}  // namespace

std::vector<std::string> selftest_modules() {
  std::vector<std::string> out;
  for (const auto& [name, suite] : suites()) out.push_back(name);
  return out;
}

std::vector<CheckResult> run_selftest(const std::string& filter) {
  std::vector<CheckResult> out;
  for (const auto& [name, suite] : suites()) {
    if (!filter.empty() && filter != name) continue;
    try {
      suite(out);
    } catch (const std::exception& e) {
      out.push_back({name, std::string("suite raised: ") + e.what(), false, 1.0, 0.0});
    }
  }
  return out;
}

}  // namespace qconnect
