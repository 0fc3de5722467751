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

#include "qconnect/flatcat.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qconnect {

FlatObject FlatObject::make(const Matrix& A, const QParameter& q) {
  FlatObject X{A, qconnect::dunford(A), {}};
  for (cplx c : X.dunford.eigenvalues) X.annulus_spectrum.push_back(annulus_decompose(c, q));
  return X;
}

FlatObject FlatObject::tensor(const FlatObject& other, const QParameter& q) const {
  return make(kron(A, other.A), q);
}

bool GaloisElement::in_group(const QParameter& q, double tol) const {
  return std::abs(char_eval(gamma, q.q(), q) - 1.0) <= tol;
}

Matrix LaurentMatrixMorphism::operator()(cplx z) const {
  if (terms.empty()) return Matrix();
  const auto& first = terms.begin()->second;
  Matrix out = Matrix::Zero(first.rows(), first.cols());
  for (const auto& [k, Fk] : terms) out += ipow(z, k) * Fk;
  return out;
}

double LaurentMatrixMorphism::intertwining_residual(const Matrix& A, const Matrix& B, cplx z,
                                                    const QParameter& q) const {
  return ((*this)(q.q() * z) * A - B * (*this)(z)).norm();
}

namespace {

std::pair<double, double> modulus_range(const FlatObject& X) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (cplx c : X.dunford.eigenvalues) {
    lo = std::min(lo, std::abs(c));
    hi = std::max(hi, std::abs(c));
  }
  return {lo, hi};
}

}  // namespace

DegreeWindow required_window(const FlatObject& A, const FlatObject& B, const QParameter& q) {
  const auto [a_lo, a_hi] = modulus_range(A);
  const auto [b_lo, b_hi] = modulus_range(B);
  const double l = q.log_abs_q();
  return {static_cast<int>(std::floor(std::log(b_lo / a_hi) / l - 1e-9)),
          static_cast<int>(std::ceil(std::log(b_hi / a_lo) / l + 1e-9))};
}

std::vector<LaurentMatrixMorphism> hom_space(const FlatObject& A, const FlatObject& B, const QParameter& q,
                                             DegreeWindow window) {
  const DegreeWindow need = required_window(A, B, q);
  if (window.lo > need.lo || window.hi < need.hi) {
    throw ContractError("hom_space: degree window [" + std::to_string(window.lo) + ", " +
                        std::to_string(window.hi) + "] does not cover [" + std::to_string(need.lo) + ", " +
                        std::to_string(need.hi) + "]");
  }
  const Eigen::Index p = B.A.rows(), n = A.A.rows(), m = p * n;
  std::vector<LaurentMatrixMorphism> basis;
  for (int k = window.lo; k <= window.hi; ++k) {
    const cplx qk = q.ipow(k);
    Matrix op(m, m);
    for (Eigen::Index col = 0; col < m; ++col) {
      Matrix E = Matrix::Zero(p, n);
      E(col % p, col / p) = 1.0;
      const Matrix image = qk * E * A.A - B.A * E;
      op.col(col) = Eigen::Map<const Vector>(image.data(), m);
    }
    Eigen::JacobiSVD<Matrix> svd(op, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-9 * std::max(1.0, sv(0));
    for (Eigen::Index i = 0; i < m; ++i) {
      if (sv(i) > cutoff) continue;
      Vector v = svd.matrixV().col(i);
      // Rotate so the largest entry is real and positive; keeps bases tidy.
      Eigen::Index arg = 0;
      v.cwiseAbs().maxCoeff(&arg);
      v *= std::abs(v(arg)) / v(arg);
      LaurentMatrixMorphism F;
      F.terms[k] = Eigen::Map<const Matrix>(v.data(), p, n);
      basis.push_back(std::move(F));
    }
  }
  return basis;
}

std::vector<LaurentMatrixMorphism> hom_space(const FlatObject& A, const FlatObject& B, const QParameter& q) {
  return hom_space(A, B, q, required_window(A, B, q));
}

Matrix act(const GaloisElement& g, const FlatObject& X, const QParameter& q) {
  Matrix out = apply_to_ss([&](cplx c) { return char_eval(g.gamma, c, q); }, X.dunford);
  if (!X.dunford.unipotent_trivial() || g.lambda != cplx{0.0, 0.0}) out = out * unipotent_pow(X.dunford.u, g.lambda);
  return out;
}

double naturality_check(const GaloisElement& g, const LaurentMatrixMorphism& F, const FlatObject& A,
                        const FlatObject& B, cplx z0, cplx z1, const QParameter& q) {
  return (F(z1) * act(g, A, q) - act(g, B, q) * F(z0)).norm();
}

double naturality_check(const GaloisElement& g, const LaurentMatrixMorphism& F, const FlatObject& A,
                        const FlatObject& B, cplx z0, const QParameter& q) {
  return naturality_check(g, F, A, B, z0, char_eval(g.gamma, q.q(), q) * z0, q);
}

double tensor_compat_check(const GaloisElement& g, const FlatObject& X, const FlatObject& Y, const QParameter& q) {
  return (act(g, X.tensor(Y, q), q) - kron(act(g, X, q), act(g, Y, q))).norm();
}

std::vector<int> jordan_tensor_decompose(int n, int p) {
  if (n < 1 || p < 1 || n > 8 || p > 8) throw DomainError("jordan_tensor_decompose: sizes must lie in 1..8");
  auto jordan = [](int size) {
    Matrix J = Matrix::Identity(size, size);
    for (int i = 0; i + 1 < size; ++i) J(i, i + 1) = 1.0;
    return J;
  };
  const Matrix X = kron(jordan(n), jordan(p));
  const Eigen::Index N = X.rows();
  const Matrix nil = X - Matrix::Identity(N, N);
  // ranks[k] = rank (X - I)^k; blocks of size >= k number ranks[k-1] - ranks[k].
  std::vector<Eigen::Index> ranks{N};
  Matrix power = Matrix::Identity(N, N);
  while (ranks.back() > 0) {
    power = power * nil;
    Eigen::FullPivLU<Matrix> lu(power);
    lu.setThreshold(1e-10);
    ranks.push_back(lu.rank());
  }
  std::vector<int> sizes;
  for (std::size_t k = 1; k < ranks.size(); ++k) {
    const Eigen::Index at_least_k = ranks[k - 1] - ranks[k];
    const Eigen::Index at_least_next = (k + 1 < ranks.size()) ? ranks[k] - ranks[k + 1] : 0;
    for (Eigen::Index c = 0; c < at_least_k - at_least_next; ++c) sizes.push_back(static_cast<int>(k));
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

bool eigen_line_condition(const std::vector<cplx>& eigenvalues, const Vector& x,
                          const std::vector<CharacterSpec>& gammas, const QParameter& q) {
  const double scale = x.cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(x(static_cast<Eigen::Index>(i))) <= 1e-12 * scale) continue;
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j) {
      if (std::abs(x(static_cast<Eigen::Index>(j))) <= 1e-12 * scale) continue;
      const cplx ci = annulus_decompose(eigenvalues[i], q).cbar;
      const cplx cj = annulus_decompose(eigenvalues[j], q).cbar;
      for (const CharacterSpec& g : gammas)
        if (std::abs(char_eval(g, ci, q) - char_eval(g, cj, q)) > 1e-10) return false;
    }
  }
  return true;
}

}  // namespace qconnect
