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

#include <random>

#include "qconnect/flatcat.hpp"

using namespace qconnect;

namespace {

const QParameter q4 = QParameter::from_q(4.0);

FlatObject scalar(cplx c) { return FlatObject::make(Matrix::Constant(1, 1, c), q4); }

}  // namespace

TEST_CASE("hom spaces between rank-one objects") {
  std::vector<LaurentMatrixMorphism> h = hom_space(scalar({1.7, 0.3}), scalar({1.7, 0.3}), q4);
  REQUIRE(h.size() == 1);
  REQUIRE(h[0].terms.size() == 1);
  CHECK(h[0].terms.begin()->first == 0);

  h = hom_space(scalar(1.0), scalar(q4.q()), q4);
  REQUIRE(h.size() == 1);
  REQUIRE(h[0].terms.size() == 1);
  CHECK(h[0].terms.begin()->first == 1);
  const cplx z{0.4, 0.9};
  CHECK(std::abs(h[0](z)(0, 0) / h[0].terms.begin()->second(0, 0) - z) < 1e-15);

  CHECK(hom_space(scalar(1.0), scalar({2.5, 1.0}), q4).empty());
  CHECK_THROWS_AS(hom_space(scalar(1.0), scalar(q4.q()), q4, DegreeWindow{-1, 0}), ContractError);
}

TEST_CASE("Galois action on flat objects") {
  const FlatObject X = FlatObject::make(Matrix{{2.0, 0.0}, {0.0, -1.0}}, q4);
  CHECK((act(GaloisElement{}, X, q4) - Matrix::Identity(2, 2)).norm() < 1e-15);
  CHECK((act({CharacterSpec::gamma1(), 0.0}, X, q4) - Matrix{{1.0, 0.0}, {0.0, -1.0}}).norm() < 1e-14);
  const FlatObject U = FlatObject::make(Matrix{{1.0, 1.0}, {0.0, 1.0}}, q4);
  const GaloisElement g{CharacterSpec::gamma2_pow({0.3, 0.1}), {0.4, -0.2}};
  CHECK((act(g, U, q4) - unipotent_pow(U.A, g.lambda)).norm() < 1e-14);
}

TEST_CASE("naturality and the groupoid constraint") {
  const FlatObject A = FlatObject::make(Matrix{{1.5, 1.0}, {0.0, 1.5}}, q4);
  const GaloisElement g{{1, cplx{2.0, 0.0}}, {0.3, 0.0}};
  REQUIRE(g.in_group(q4));
  const std::vector<LaurentMatrixMorphism> h = hom_space(A, A, q4);
  REQUIRE(h.size() == 2);
  for (const LaurentMatrixMorphism& F : h) CHECK(naturality_check(g, F, A, A, {0.3, 0.2}, q4) < 1e-10);

  const FlatObject one = scalar(1.0), qobj = scalar(q4.q());
  const LaurentMatrixMorphism Z = hom_space(one, qobj, q4).front();
  const cplx z0{0.7, 0.4}, z1{-1.3, 0.9};
  const GaloisElement arrow{groupoid_connector(z0, z1, q4), 0.0};
  CHECK(naturality_check(arrow, Z, one, qobj, z0, q4) < 1e-10);
  // A group element applied between distinct points fails by |z1 - z0| (up to unit factors).
  const double bad = naturality_check(GaloisElement{}, Z, one, qobj, z0, z1, q4);
  CHECK(bad == doctest::Approx(std::abs(z1 - z0) * std::abs(Z.terms.begin()->second(0, 0))).epsilon(1e-12));
}

TEST_CASE("tensor compatibility of the action") {
  const FlatObject X = FlatObject::make(Matrix{{2.0, 0.0}, {0.0, cplx{0.0, 3.0}}}, q4);
  const FlatObject Y = FlatObject::make(Matrix{{0.5, 0.0}, {0.0, 7.0}}, q4);
  CHECK(tensor_compat_check({{2, cplx{0.3, 0.0}}, 0.0}, X, Y, q4) < 1e-10);
  const FlatObject J = FlatObject::make(Matrix{{1.0, 1.0}, {0.0, 1.0}}, q4);
  CHECK(tensor_compat_check({CharacterSpec::trivial(), {0.37, 0.2}}, J, J, q4) < 1e-10);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix A(2, 2), B(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      A(i, j) = {u(rng), u(rng)};
      B(i, j) = {u(rng), u(rng)};
    }
  A += 2.0 * Matrix::Identity(2, 2);
  B += 2.0 * Matrix::Identity(2, 2);
  CHECK(tensor_compat_check({CharacterSpec::gamma2(), 0.7}, FlatObject::make(A, q4), FlatObject::make(B, q4), q4) <
        1e-9);
}

TEST_CASE("Jordan decomposition of tensor products") {
  CHECK(jordan_tensor_decompose(1, 4) == std::vector<int>{4});
  CHECK(jordan_tensor_decompose(2, 2) == std::vector<int>{3, 1});
  CHECK(jordan_tensor_decompose(3, 3) == std::vector<int>{5, 3, 1});
  CHECK(jordan_tensor_decompose(2, 5) == std::vector<int>{6, 4});
  CHECK_THROWS_AS(jordan_tensor_decompose(0, 2), DomainError);
}

TEST_CASE("eigen-line condition") {
  Vector e(2);
  e << 1.0, 0.0;
  CHECK(eigen_line_condition({2.0, 3.0}, e, {CharacterSpec::gamma1(), CharacterSpec::gamma2()}, q4));
  Vector x(2);
  x << 1.0, 1.0;
  CHECK(eigen_line_condition({2.0, 2.0}, x, {CharacterSpec::gamma1(), CharacterSpec::gamma2()}, q4));
  CHECK_FALSE(eigen_line_condition({2.0, 3.0}, x, {CharacterSpec::gamma1(), CharacterSpec::gamma2()}, q4));
  CHECK(eigen_line_condition({2.0, 8.0}, x, {CharacterSpec::gamma1(), CharacterSpec::gamma2()}, q4));
}
