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

#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace qconnect;
using namespace fixtures;

namespace {

// A rank-one triple with semi-simple exponents c at 0 and d = 1.5 c at
// infinity, both in the fundamental annulus.
const cplx kC{1.5, 0.7};

ConnectionTriple annulus_rank1() { return build_triple(rank1_system({2.0}, {3.0}, q4(), kC)); }

}  // namespace

TEST_CASE("constant systems have trivial connection data") {
  const Matrix A{{2.0, 1.0}, {0.0, 2.0}};
  const ConnectionTriple t = build_triple(constant(A));
  CHECK((t.A0().A - A).norm() < 1e-15);
  CHECK((t.Ainf().A - A).norm() < 1e-15);
  for (cplx z : {cplx{0.3, 0.2}, cplx{-2.0, 5.0}}) {
    CHECK((t.M(z) - Matrix::Identity(2, 2)).norm() < 1e-14);
    CHECK((connection_P(t, z) - Matrix::Identity(2, 2)).norm() < 1e-12);
    CHECK((gamma_path(t, z) - Matrix::Identity(2, 2)).norm() < 1e-14);
  }
  for (const Matrix& g : connection_group_sample(t, {{0.5, 0.1}, {1.2, 0.3}, {-0.8, 2.0}}, false))
    CHECK((g - Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("unipotent example against the bilateral sum") {
  const ConnectionTriple t = build_triple(unipotent());
  for (const BilateralValue& v : kBilateral) {
    const Matrix M = t.M(v.z);
    CHECK(std::abs(M(0, 1) - v.p) < 1e-12 * std::abs(v.p));
    CHECK(std::abs(M(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(M(1, 0)) < 1e-14);
    CHECK(std::abs(rank2_unipotent_p(z_over_1_plus_z2(), v.z, q4()) - v.p) < 1e-12);
    // Regular triple: P, P-breve and the path all equal M.
    CHECK((connection_P(t, v.z) - M).norm() < 1e-12);
    CHECK((pbreve(t, v.z) - M).norm() < 1e-12);
    CHECK((gamma_path(t, v.z) - M).norm() < 1e-14);
  }
  const std::vector<cplx> pts{kBilateral[0].z, kBilateral[1].z};
  const Matrix g = connection_group_sample(t, pts, false).front();
  CHECK(std::abs(g(0, 1) - (kBilateral[1].p - kBilateral[0].p)) < 1e-12);
}

TEST_CASE("rank-one regular example against the theta closed form") {
  const ConnectionTriple t = build_triple(rank1_regular());
  const cplx za{0.8, 0.3}, zb{1.9, -0.6};
  const cplx ratio = connection_P(t, zb)(0, 0) / connection_P(t, za)(0, 0);
  CHECK(std::abs(ratio - kRank1Ratio) < 1e-12);
  for (cplx z : {za, zb, cplx{-0.4, 1.7}}) {
    CHECK(std::abs(connection_P(t, 4.0 * z)(0, 0) - connection_P(t, z)(0, 0)) < 1e-9);
    const cplx closed = rank1_regular_p({2.0, 3.0}, {6.0, 1.0}, z, q4());
    CHECK(std::abs(t.M(z)(0, 0) - closed) < 1e-10 * std::abs(closed));
  }
  CHECK(std::abs(rank1_regular_p({2.0, 5.0}, {2.0, 5.0}, {0.3, 0.9}, q4()) - 1.0) < 1e-14);
  CHECK_THROWS_AS(rank1_regular_p({2.0}, {3.0}, 1.0, q4()), DomainError);

  // Generic case: samples with multiplicatively independent moduli.
  const std::vector<Matrix> s = connection_group_sample(t, {{0.9, 0.2}, {1.6, 0.5}, {2.5, -1.2}}, false);
  REQUIRE(s.size() == 2);
  const double l0 = std::log(std::abs(s[0](0, 0))), l1 = std::log(std::abs(s[1](0, 0)));
  CHECK(std::abs(l0) > 1e-3);
  CHECK(std::abs(l1) > 1e-3);
  bool commensurable = false;
  for (int a = 1; a <= 12; ++a)
    for (int b = -12; b <= 12; ++b)
      if (b != 0 && std::abs(a * l0 - b * l1) < 1e-6) commensurable = true;
  CHECK_FALSE(commensurable);
}

TEST_CASE("twisted matrix on a semi-simple rank-one triple") {
  const ConnectionTriple t = annulus_rank1();
  const cplx d = kC * 1.5;
  REQUIRE(std::abs(t.Ainf().A(0, 0) - d) < 1e-12);
  for (cplx a : {cplx{0.7, 0.4}, cplx{1.9, -0.3}, cplx{-1.1, 2.6}}) {
    const cplx expect = t.M(a)(0, 0) * char_eval(CharacterSpec::g(a, q4()), kC, q4()) /
                        char_eval(CharacterSpec::g(a, q4()), d, q4());
    CHECK(std::abs(pbreve(t, a)(0, 0) - expect) < 1e-10 * std::abs(expect));
    CHECK(std::abs(pbreve_via_psi(t, a)(0, 0) - expect) < 1e-10 * std::abs(expect));
    const cplx g1c = char_eval(CharacterSpec::gamma1(), kC, q4());
    const cplx g1d = char_eval(CharacterSpec::gamma1(), d, q4());
    CHECK(std::abs(pbreve(t, 4.0 * a)(0, 0) - g1d * pbreve(t, a)(0, 0) / g1c) < 1e-8);
  }
}

TEST_CASE("tensor products of triples") {
  const ConnectionTriple u = build_triple(unipotent());
  const ConnectionTriple r = build_triple(rank1_regular());
  const ConnectionTriple unit = build_triple(constant(Matrix::Identity(1, 1)));
  const cplx z{0.9, 0.35};
  CHECK(twisted_tensor_check(u, u, z) < 1e-8);
  CHECK(twisted_tensor_check(u, unit, z) < 1e-9);
  CHECK(twisted_tensor_check(r, u, z) < 1e-8);
  const ConnectionTriple a = annulus_rank1();
  CHECK(twisted_tensor_check(a, a, z) < 1e-8);
  // Regular case: the twisted tensor product is the plain one.
  const ConnectionTriple uu = tensor_triple(u, u);
  CHECK((connection_P(uu, z) - kron(connection_P(u, z), connection_P(u, z))).norm() < 1e-8);
  CHECK((gamma_path(uu, z) - kron(gamma_path(u, z), gamma_path(u, z))).norm() < 1e-10);
}

TEST_CASE("functoriality under constant conjugation") {
  const Matrix R{{1.0, 0.5}, {-0.25, 2.0}};
  const ConnectionTriple t = build_triple(unipotent());
  const ConnectionTriple s = build_triple(gauge_transform(unipotent(), RationalMatrix::constant(R)));
  const cplx z{1.1, -0.2};
  CHECK((R.inverse() * t.M(z) - s.M(z) * R.inverse()).norm() < 1e-10);
}

TEST_CASE("guarded evaluation") {
  const ConnectionTriple t = build_triple(unipotent());
  CHECK_THROWS_AS(t.M({0.0, 4.0}), PoleProximity);
  CHECK_THROWS_AS(connection_P(t, {0.0, -0.25}), PoleProximity);
}

TEST_CASE("resonant systems are normalized on request") {
  RationalMatrix A(2, 2);
  A(0, 0) = RationalFunction::constant(1.0);
  A(0, 1) = RationalFunction::constant(0.0);
  A(1, 0) = RationalFunction::constant(0.0);
  A(1, 1) = RationalFunction(Polynomial({4.0, -2.0}), Polynomial({1.0, -1.0 / 3.0}));
  const RationalMatrixSystem sys{A, q4()};
  CHECK_FALSE(ready_for_reduction(sys));
  CHECK_THROWS_AS(build_triple(sys, kDefaultOrder, Normalization::Never), ResonanceError);
  const ConnectionTriple t = build_triple(sys);
  const cplx z{0.7, 0.45};
  CHECK((connection_P(t, 4.0 * z) - connection_P(t, z)).norm() < 1e-8);
}
