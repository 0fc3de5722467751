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

#ifndef QCONNECT_IO_HPP
#define QCONNECT_IO_HPP

#include <string>

#include <json.hpp>

#include "qconnect/ratsys.hpp"

namespace qconnect::io {

using json = nlohmann::ordered_json;

json to_json(cplx z);
json to_json(const Matrix& M);
json to_json(const Polynomial& p);
json to_json(const RationalFunction& f);
json to_json(const RationalMatrixSystem& sys);

/// Accepts [re, im] or a bare real number.
cplx complex_from_json(const json& j);
Matrix matrix_from_json(const json& j);
Polynomial polynomial_from_json(const json& j);

/// Rows of {"num": [...], "den": [...]} entries (or bare constants); no
/// invertibility check.
RationalMatrix rational_matrix_from_json(const json& rows);

/// Parses the system file layout:
///   {"q": [re, im]} or {"tau": [re, im]} (tau wins when both are present),
///   "matrix": rows of {"num": [[re, im], ...], "den": [[re, im], ...]}
/// with coefficients in ascending degree; "den" defaults to 1.
RationalMatrixSystem parse_system(const json& doc);
RationalMatrixSystem load_system(const std::string& path);

/// Machine-readable result of one CLI invocation.
class ResultDocument {
 public:
  explicit ResultDocument(std::string command);

  json& parameters() { return doc_["parameters"]; }
  json& outputs() { return doc_["outputs"]; }
  json& diagnostics() { return doc_["diagnostics"]; }
  const json& raw() const { return doc_; }

  std::string dump(bool pretty) const;
  static ResultDocument parse(const std::string& text);

 private:
  ResultDocument() = default;
  json doc_;
};

}  // namespace qconnect::io

#endif  // QCONNECT_IO_HPP
