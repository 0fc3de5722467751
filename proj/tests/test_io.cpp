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

#include "qconnect/connection.hpp"
#include "qconnect/io.hpp"

using namespace qconnect;
using io::json;

TEST_CASE("complex and matrix serialization") {
  CHECK(io::to_json(cplx{1.5, -2.0}) == json::array({1.5, -2.0}));
  CHECK(io::complex_from_json(json(3.0)) == cplx{3.0, 0.0});
  CHECK_THROWS_AS(io::complex_from_json(json("1+2i")), DomainError);
  const Matrix M{{1.0, cplx{0.0, 2.0}}, {-3.0, 4.5}};
  CHECK((io::matrix_from_json(io::to_json(M)) - M).norm() == 0.0);
}

TEST_CASE("system files") {
  const json doc = json::parse(R"({
    "q": [4, 0], "tau": [0, 0.5],
    "matrix": [[1, {"num": [[0, 0], [1, 0]], "den": [[1, 0], [0, 0], [1, 0]]}], [0, 1]]
  })");
  const RationalMatrixSystem sys = io::parse_system(doc);
  CHECK(std::abs(sys.q.tau() - cplx{0.0, 0.5}) < 1e-15);
  CHECK(std::abs(sys.A(0, 1)(2.0) - 0.4) < 1e-15);

  // Round trip through the serializer.
  const RationalMatrixSystem back = io::parse_system(io::to_json(sys));
  CHECK((back.A.eval({0.3, 0.2}) - sys.A.eval({0.3, 0.2})).norm() < 1e-15);

  CHECK_THROWS_AS(io::parse_system(json::parse(R"({"matrix": [[1]]})")), DomainError);
  CHECK_THROWS_AS(io::parse_system(json::parse(R"({"q": [4, 0], "matrix": [[1, 0]]})")), DomainError);
  CHECK_THROWS_AS(io::parse_system(json::parse(R"({"q": [4, 0], "matrix": [[0]]})")), DomainError);
  CHECK_THROWS_AS(io::parse_system(json::parse(R"({"q": [0.5, 0], "matrix": [[1]]})")), DomainError);
  CHECK_THROWS_AS(io::load_system("/nonexistent/system.json"), DomainError);
}

TEST_CASE("result documents round-trip") {
  io::ResultDocument doc("connect");
  doc.parameters()["order"] = 40;
  doc.outputs()["M"] = io::to_json(Matrix::Identity(2, 2));
  doc.diagnostics()["series_target"] = 1e-15;
  const std::string text = doc.dump(false);
  const io::ResultDocument back = io::ResultDocument::parse(text);
  CHECK(back.dump(false) == text);
  CHECK(io::ResultDocument::parse(doc.dump(true)).raw() == doc.raw());
  CHECK_THROWS_AS(io::ResultDocument::parse(R"({"command": "x"})"), DomainError);
}
