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

#ifndef QCONNECT_POLYNOMIAL_HPP
#define QCONNECT_POLYNOMIAL_HPP

#include <vector>

#include "qconnect/types.hpp"

namespace qconnect {

/// Dense complex polynomial, coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  static Polynomial constant(cplx c) { return Polynomial({c}); }
  static Polynomial monomial(int degree, cplx c = 1.0);
  /// prod (z - r_i).
  static Polynomial from_roots(const std::vector<cplx>& roots);

  const std::vector<cplx>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  cplx coeff(int k) const;
  cplx leading() const { return c_.empty() ? cplx{0.0, 0.0} : c_.back(); }
  double norm() const;

  cplx operator()(cplx z) const;
  /// p(lambda z).
  Polynomial scaled(cplx lambda) const;
  /// z^deg p(1/z).
  Polynomial reversed() const;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cplx s) const;
  Polynomial operator-() const { return *this * cplx{-1.0, 0.0}; }

  /// Division by (z - r), remainder discarded.
  Polynomial deflate(cplx r) const;
  /// Drops leading coefficients below rel_tol * norm.
  Polynomial trimmed(double rel_tol = 1e-14) const;
  /// Number of vanishing low-order coefficients (relative test).
  int low_order_zeros(double rel_tol = 1e-12) const;
  /// Divides by z^k; the dropped coefficients are discarded.
  Polynomial shift_down(int k) const;

  /// Roots in C (zero roots included) via companion-matrix eigenvalues
  /// polished by Newton steps.
  std::vector<cplx> roots() const;

 private:
  std::vector<cplx> c_;
};

/// num / den with den monic and common roots removed.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Polynomial::constant(1.0)) {}
  RationalFunction(Polynomial num, Polynomial den);
  static RationalFunction constant(cplx c) { return {Polynomial::constant(c), Polynomial::constant(1.0)}; }
  static RationalFunction polynomial(Polynomial p) { return {std::move(p), Polynomial::constant(1.0)}; }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  cplx operator()(cplx z) const;
  /// Limit as z -> infinity; throws DomainError on a pole there.
  cplx at_infinity() const;
  bool finite_at_zero() const;
  bool finite_at_infinity() const;
  /// f(lambda z).
  RationalFunction scaled(cplx lambda) const;
  /// Taylor coefficients at 0 up to order K.
  std::vector<cplx> taylor_at_zero(int K) const;
  /// Taylor coefficients of w -> f(1/w) at w = 0 up to order K.
  std::vector<cplx> taylor_at_infinity(int K) const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator-() const { return {-num_, den_}; }

  /// Largest coefficient difference after bringing both to the same form.
  double distance(const RationalFunction& o) const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

/// Matrix with rational-function entries, stored row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);
  static RationalMatrix identity(int n);
  static RationalMatrix constant(const Matrix& M);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  RationalFunction& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
  const RationalFunction& operator()(int i, int j) const {
    return e_[static_cast<std::size_t>(i * cols_ + j)];
  }

  Matrix eval(cplx z) const;
  Matrix at_infinity() const;
  bool finite_at_zero() const;
  bool finite_at_infinity() const;
  RationalMatrix scaled(cplx lambda) const;
  std::vector<Matrix> taylor_at_zero(int K) const;
  std::vector<Matrix> taylor_at_infinity(int K) const;

  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix operator*(const RationalFunction& s) const;

  RationalFunction determinant() const;
  RationalMatrix adjugate() const;
  RationalMatrix inverse() const;
  /// Kronecker product in the index convention of qconnect::kron.
  RationalMatrix kron(const RationalMatrix& o) const;

  double distance(const RationalMatrix& o) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<RationalFunction> e_;
};

}  // namespace qconnect

#endif  // QCONNECT_POLYNOMIAL_HPP
