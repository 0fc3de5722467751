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

#include "qconnect/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace qconnect::io {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Polynomial& p) {
  json out = json::array();
  for (cplx c : p.coeffs()) out.push_back(to_json(c));
  if (out.empty()) out.push_back(to_json(cplx{0.0, 0.0}));
  return out;
}

json to_json(const RationalFunction& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

json to_json(const RationalMatrixSystem& sys) {
  json rows = json::array();
  for (int i = 0; i < sys.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < sys.n(); ++j) row.push_back(to_json(sys.A(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"tau", to_json(sys.q.tau())}, {"matrix", std::move(rows)}};
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw DomainError("expected a complex number as [re, im], got " + j.dump());
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw DomainError("expected a matrix as nested arrays");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw DomainError("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) M(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return M;
}

Polynomial polynomial_from_json(const json& j) {
  if (j.is_number()) return Polynomial::constant(j.get<double>());
  if (!j.is_array()) throw DomainError("expected a coefficient list, got " + j.dump());
  std::vector<cplx> c;
  for (const json& x : j) c.push_back(complex_from_json(x));
  return Polynomial(std::move(c));
}

RationalMatrix rational_matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw DomainError("expected a non-empty matrix of rational entries");
  const int n = static_cast<int>(rows.size());
  RationalMatrix A(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw DomainError("system matrix must be square");
    for (int k = 0; k < n; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      if (e.is_object()) {
        if (!e.contains("num")) throw DomainError("matrix entry needs \"num\"");
        const Polynomial num = polynomial_from_json(e["num"]);
        const Polynomial den = e.contains("den") ? polynomial_from_json(e["den"]) : Polynomial::constant(1.0);
        A(i, k) = RationalFunction(num, den);
      } else {
        A(i, k) = RationalFunction::constant(complex_from_json(e));
      }
    }
  }
  return A;
}

RationalMatrixSystem parse_system(const json& doc) {
  if (!doc.is_object()) throw DomainError("system file must be a JSON object");
  std::optional<QParameter> q;
  if (doc.contains("tau")) {
    q = QParameter::from_tau(complex_from_json(doc["tau"]));
  } else if (doc.contains("q")) {
    q = QParameter::from_q(complex_from_json(doc["q"]));
  } else {
    throw DomainError("system file needs \"q\" or \"tau\"");
  }
  if (!doc.contains("matrix")) throw DomainError("system file needs \"matrix\"");
  const RationalMatrix A = rational_matrix_from_json(doc["matrix"]);
  RationalMatrixSystem sys{A, *q};
  sys.validate();
  return sys;
}

RationalMatrixSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open system file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed system file: ") + e.what());
  }
  return parse_system(doc);
}

ResultDocument::ResultDocument(std::string command) {
  doc_["command"] = std::move(command);
  doc_["parameters"] = json::object();
  doc_["outputs"] = json::object();
  doc_["diagnostics"] = json::object();
}

std::string ResultDocument::dump(bool pretty) const { return doc_.dump(pretty ? 2 : -1) + "\n"; }

ResultDocument ResultDocument::parse(const std::string& text) {
  ResultDocument d;
  d.doc_ = json::parse(text);
  for (const char* key : {"command", "parameters", "outputs", "diagnostics"})
    if (!d.doc_.contains(key)) throw DomainError(std::string("result document lacks \"") + key + "\"");
  return d;
}

}  // namespace qconnect::io
