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

#include "qconnect/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qconnect/matfun.hpp"

namespace qconnect {

namespace {

// Root pairs closer than this (relative) are cancelled between num and den.
constexpr double kRootMatch = 1e-7;
// Roots this close (relative) are treated as one perturbed multiple root.
constexpr double kClusterRadius = 1e-2;

}  // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == cplx{0.0, 0.0}) c_.pop_back();
}

Polynomial Polynomial::monomial(int degree, cplx c) {
  std::vector<cplx> v(static_cast<std::size_t>(degree) + 1, cplx{0.0, 0.0});
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots) {
  Polynomial p = constant(1.0);
  for (cplx r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

cplx Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return {0.0, 0.0};
  return c_[static_cast<std::size_t>(k)];
}

double Polynomial::norm() const {
  double m = 0.0;
  for (cplx v : c_) m = std::max(m, std::abs(v));
  return m;
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{0.0, 0.0};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::scaled(cplx lambda) const {
  std::vector<cplx> v = c_;
  cplx p{1.0, 0.0};
  for (cplx& x : v) {
    x *= p;
    p *= lambda;
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::reversed() const { return Polynomial(std::vector<cplx>(c_.rbegin(), c_.rend())); }

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> v(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<cplx> v(std::max(c_.size(), o.c_.size()), cplx{0.0, 0.0});
  for (std::size_t k = 0; k < c_.size(); ++k) v[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) v[k] += o.c_[k];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<cplx> v(c_.size() + o.c_.size() - 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(cplx s) const {
  std::vector<cplx> v = c_;
  for (cplx& x : v) x *= s;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::deflate(cplx r) const {
  if (degree() < 1) return {};
  std::vector<cplx> q(c_.size() - 1);
  cplx carry{0.0, 0.0};
  for (std::size_t k = c_.size() - 1; k >= 1; --k) {
    carry = c_[k] + carry * r;
    q[k - 1] = carry;
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double scale = norm();
  std::vector<cplx> v = c_;
  while (!v.empty() && std::abs(v.back()) <= rel_tol * scale) v.pop_back();
  return Polynomial(std::move(v));
}

int Polynomial::low_order_zeros(double rel_tol) const {
  const double scale = norm();
  int k = 0;
  while (k < static_cast<int>(c_.size()) - 1 && std::abs(c_[static_cast<std::size_t>(k)]) <= rel_tol * scale) ++k;
  return k;
}

Polynomial Polynomial::shift_down(int k) const {
  if (k <= 0) return *this;
  if (k >= static_cast<int>(c_.size())) return {};
  return Polynomial(std::vector<cplx>(c_.begin() + k, c_.end()));
}

std::vector<cplx> Polynomial::roots() const {
  const Polynomial p = trimmed();
  std::vector<cplx> out;
  if (p.degree() < 1) return out;
  const int zeros = p.low_order_zeros();
  for (int k = 0; k < zeros; ++k) out.push_back({0.0, 0.0});
  const Polynomial r = p.shift_down(zeros);
  const int d = r.degree();
  if (d < 1) return out;

  Matrix companion = Matrix::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -r.coeff(i) / r.leading();
  Eigen::ComplexEigenSolver<Matrix> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericFailure("polynomial root finding did not converge");

  const Polynomial dr = r.derivative();
  for (Eigen::Index i = 0; i < d; ++i) {
    cplx x = solver.eigenvalues()(i);
    for (int step = 0; step < 3; ++step) {
      const cplx fx = r(x);
      const cplx dfx = dr(x);
      if (std::abs(dfx) < 1e-300) break;
      const cplx next = x - fx / dfx;
      // Newton on a multiple root can wander; keep only improving steps.
      if (std::abs(r(next)) >= std::abs(fx)) break;
      x = next;
    }
    out.push_back(x);
  }
  return out;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

namespace {

struct RootCluster {
  cplx center;
  int count;
};

std::vector<RootCluster> cluster_roots(const Polynomial& p) {
  const std::vector<cplx> roots = p.roots();
  std::vector<RootCluster> out;
  std::vector<cplx> sums;
  for (cplx r : roots) {
    bool merged = false;
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (std::abs(out[k].center - r) > kClusterRadius * std::max(1.0, std::abs(out[k].center))) continue;
      sums[k] += r;
      ++out[k].count;
      out[k].center = sums[k] / static_cast<double>(out[k].count);
      merged = true;
      break;
    }
    if (!merged) {
      out.push_back({r, 1});
      sums.push_back(r);
    }
  }
  // An m-fold root is a simple root of the (m-1)-th derivative; polish there.
  for (RootCluster& c : out) {
    if (c.count < 2) continue;
    Polynomial d = p;
    for (int k = 1; k < c.count; ++k) d = d.derivative();
    const Polynomial dd = d.derivative();
    for (int step = 0; step < 8; ++step) {
      const cplx slope = dd(c.center);
      if (std::abs(slope) < 1e-300) break;
      const cplx next = c.center - d(c.center) / slope;
      if (!(std::abs(next - c.center) < kClusterRadius * std::max(1.0, std::abs(c.center)))) break;
      c.center = next;
    }
  }
  return out;
}

}  // namespace

void RationalFunction::normalize() {
  num_ = num_.trimmed();
  den_ = den_.trimmed();
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1.0);
    return;
  }
  const int k = std::min(num_.low_order_zeros(), den_.low_order_zeros());
  num_ = num_.shift_down(k);
  den_ = den_.shift_down(k);

  if (num_.degree() > 0 && den_.degree() > 0) {
    // A multiple root comes back from the companion matrix as a spread-out
    // cluster, but the cluster mean stays accurate; match factors by means.
    const std::vector<RootCluster> cn = cluster_roots(num_);
    const std::vector<RootCluster> cd = cluster_roots(den_);
    std::vector<bool> used(cn.size(), false);
    for (const RootCluster& d : cd) {
      for (std::size_t i = 0; i < cn.size(); ++i) {
        if (used[i] || std::abs(cn[i].center - d.center) > kRootMatch * std::max(1.0, std::abs(d.center))) continue;
        used[i] = true;
        const cplx r = 0.5 * (cn[i].center + d.center);
        for (int k = 0; k < std::min(cn[i].count, d.count); ++k) {
          num_ = num_.deflate(r);
          den_ = den_.deflate(r);
        }
        break;
      }
    }
  }
  const cplx lead = den_.leading();
  num_ = num_ * (1.0 / lead);
  den_ = den_ * (1.0 / lead);
}

cplx RationalFunction::operator()(cplx z) const { return num_(z) / den_(z); }

bool RationalFunction::finite_at_zero() const {
  return std::abs(den_.coeff(0)) > 1e-12 * den_.norm() || num_.is_zero();
}

bool RationalFunction::finite_at_infinity() const { return num_.degree() <= den_.degree(); }

cplx RationalFunction::at_infinity() const {
  if (!finite_at_infinity()) throw DomainError("rational function has a pole at infinity");
  if (num_.degree() < den_.degree()) return {0.0, 0.0};
  return num_.leading() / den_.leading();
}

RationalFunction RationalFunction::scaled(cplx lambda) const { return {num_.scaled(lambda), den_.scaled(lambda)}; }

namespace {

std::vector<cplx> series_quotient(const Polynomial& n, const Polynomial& d, int K) {
  const cplx d0 = d.coeff(0);
  std::vector<cplx> c(static_cast<std::size_t>(K) + 1, cplx{0.0, 0.0});
  for (int k = 0; k <= K; ++k) {
    cplx acc = n.coeff(k);
    for (int j = 1; j <= std::min(k, d.degree()); ++j) acc -= d.coeff(j) * c[static_cast<std::size_t>(k - j)];
    c[static_cast<std::size_t>(k)] = acc / d0;
  }
  return c;
}

}  // namespace

std::vector<cplx> RationalFunction::taylor_at_zero(int K) const {
  if (!finite_at_zero()) throw DomainError("rational function has a pole at 0");
  return series_quotient(num_, den_, K);
}

std::vector<cplx> RationalFunction::taylor_at_infinity(int K) const {
  if (!finite_at_infinity()) throw DomainError("rational function has a pole at infinity");
  if (num_.is_zero()) return std::vector<cplx>(static_cast<std::size_t>(K) + 1, cplx{0.0, 0.0});
  const int shift = den_.degree() - num_.degree();
  const std::vector<cplx> base = series_quotient(num_.reversed(), den_.reversed(), K);
  std::vector<cplx> out(static_cast<std::size_t>(K) + 1, cplx{0.0, 0.0});
  for (int k = shift; k <= K; ++k) out[static_cast<std::size_t>(k)] = base[static_cast<std::size_t>(k - shift)];
  return out;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return {};
  return {num_ * o.num_, den_ * o.den_};
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw DomainError("division by the zero rational function");
  return {num_ * o.den_, den_ * o.num_};
}

double RationalFunction::distance(const RationalFunction& o) const {
  double m = 0.0;
  const int dn = std::max(num_.degree(), o.num_.degree());
  const int dd = std::max(den_.degree(), o.den_.degree());
  for (int k = 0; k <= dn; ++k) m = std::max(m, std::abs(num_.coeff(k) - o.num_.coeff(k)));
  for (int k = 0; k <= dd; ++k) m = std::max(m, std::abs(den_.coeff(k) - o.den_.coeff(k)));
  return m;
}

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows * cols)) {}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = RationalFunction::constant(1.0);
  return m;
}

RationalMatrix RationalMatrix::constant(const Matrix& M) {
  RationalMatrix m(static_cast<int>(M.rows()), static_cast<int>(M.cols()));
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j) m(i, j) = RationalFunction::constant(M(i, j));
  return m;
}

Matrix RationalMatrix::eval(cplx z) const {
  Matrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j)(z);
  return out;
}

Matrix RationalMatrix::at_infinity() const {
  Matrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).at_infinity();
  return out;
}

bool RationalMatrix::finite_at_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const RationalFunction& f) { return f.finite_at_zero(); });
}

bool RationalMatrix::finite_at_infinity() const {
  return std::all_of(e_.begin(), e_.end(), [](const RationalFunction& f) { return f.finite_at_infinity(); });
}

RationalMatrix RationalMatrix::scaled(cplx lambda) const {
  RationalMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k].scaled(lambda);
  return out;
}

namespace {

template <typename Expand>
std::vector<Matrix> expand_entries(int rows, int cols, int K, Expand expand) {
  std::vector<Matrix> out(static_cast<std::size_t>(K) + 1, Matrix::Zero(rows, cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const std::vector<cplx> c = expand(i, j);
      for (int k = 0; k <= K; ++k) out[static_cast<std::size_t>(k)](i, j) = c[static_cast<std::size_t>(k)];
    }
  return out;
}

}  // namespace

std::vector<Matrix> RationalMatrix::taylor_at_zero(int K) const {
  return expand_entries(rows_, cols_, K, [&](int i, int j) { return (*this)(i, j).taylor_at_zero(K); });
}

std::vector<Matrix> RationalMatrix::taylor_at_infinity(int K) const {
  return expand_entries(rows_, cols_, K, [&](int i, int j) { return (*this)(i, j).taylor_at_infinity(K); });
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw DomainError("rational matrix product: dimension mismatch");
  RationalMatrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      RationalFunction acc;
      for (int k = 0; k < cols_; ++k) {
        if ((*this)(i, k).is_zero() || o(k, j).is_zero()) continue;
        acc = acc + (*this)(i, k) * o(k, j);
      }
      out(i, j) = acc;
    }
  return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("rational matrix sum: dimension mismatch");
  RationalMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k] + o.e_[k];
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalFunction& s) const {
  RationalMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k] * s;
  return out;
}

namespace {

RationalMatrix minor_of(const RationalMatrix& m, int row, int col) {
  RationalMatrix out(m.rows() - 1, m.cols() - 1);
  for (int i = 0, oi = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    for (int j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

}  // namespace

RationalFunction RationalMatrix::determinant() const {
  if (rows_ != cols_) throw DomainError("determinant of a non-square matrix");
  if (rows_ > 6) throw ContractError("rational determinant limited to n <= 6");
  if (rows_ == 1) return (*this)(0, 0);
  RationalFunction acc;
  for (int j = 0; j < cols_; ++j) {
    if ((*this)(0, j).is_zero()) continue;
    RationalFunction term = (*this)(0, j) * minor_of(*this, 0, j).determinant();
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

RationalMatrix RationalMatrix::adjugate() const {
  const int n = rows_;
  RationalMatrix out(n, n);
  if (n == 1) {
    out(0, 0) = RationalFunction::constant(1.0);
    return out;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RationalFunction c = minor_of(*this, i, j).determinant();
      out(j, i) = ((i + j) % 2 == 0) ? c : -c;
    }
  return out;
}

RationalMatrix RationalMatrix::inverse() const {
  const RationalFunction det = determinant();
  if (det.is_zero()) throw DomainError("rational matrix is singular");
  return adjugate() * (RationalFunction::constant(1.0) / det);
}

RationalMatrix RationalMatrix::kron(const RationalMatrix& o) const {
  const int p1 = rows_, n1 = cols_;
  RationalMatrix out(rows_ * o.rows_, cols_ * o.cols_);
  for (int i2 = 0; i2 < o.rows_; ++i2)
    for (int j2 = 0; j2 < o.cols_; ++j2)
      for (int i1 = 0; i1 < p1; ++i1)
        for (int j1 = 0; j1 < n1; ++j1) out(i1 + p1 * i2, j1 + n1 * j2) = (*this)(i1, j1) * o(i2, j2);
  return out;
}

double RationalMatrix::distance(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t k = 0; k < e_.size(); ++k) m = std::max(m, e_[k].distance(o.e_[k]));
  return m;
}

}  // namespace qconnect
