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

#include "qconnect/matfun.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace qconnect {

Matrix kron(const Matrix& A, const Matrix& B) {
  const Eigen::Index p1 = A.rows(), n1 = A.cols();
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i2 = 0; i2 < B.rows(); ++i2)
    for (Eigen::Index j2 = 0; j2 < B.cols(); ++j2)
      for (Eigen::Index i1 = 0; i1 < p1; ++i1)
        for (Eigen::Index j1 = 0; j1 < n1; ++j1)
          out(i1 + p1 * i2, j1 + n1 * j2) = A(i1, j1) * B(i2, j2);
  return out;
}

double matrix_scale(const Matrix& A) { return std::max(1.0, A.norm()); }

std::vector<cplx> eigenvalues(const Matrix& A) {
  Eigen::ComplexSchur<Matrix> schur(A, /*computeU=*/false);
  if (schur.info() != Eigen::Success) throw NumericFailure("Schur decomposition did not converge");
  const Matrix& T = schur.matrixT();
  std::vector<cplx> out(static_cast<std::size_t>(T.rows()));
  for (Eigen::Index i = 0; i < T.rows(); ++i) out[static_cast<std::size_t>(i)] = T(i, i);
  return out;
}

bool DunfordPair::unipotent_trivial(double tol) const {
  const Matrix I = Matrix::Identity(u.rows(), u.cols());
  return (u - I).norm() <= tol * matrix_scale(u);
}

namespace {

struct Clusters {
  std::vector<cplx> centers;
  std::vector<int> sizes;
};

Clusters cluster_eigenvalues(const std::vector<cplx>& values, double gap) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(values[i]), std::abs(values[j])});
      if (std::abs(values[i] - values[j]) <= gap * scale) parent[find(i)] = find(j);
    }
  Clusters out;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      out.centers.push_back(values[i]);
      out.sizes.push_back(1);
    } else {
      const auto k = static_cast<std::size_t>(it - roots.begin());
      out.centers[k] += values[i];
      out.sizes[k] += 1;
    }
  }
  for (std::size_t k = 0; k < out.centers.size(); ++k) out.centers[k] /= out.sizes[k];
  return out;
}

// prod_{j != skip} (S - c_j I)
Matrix product_except(const Matrix& S, const std::vector<cplx>& c, std::size_t skip) {
  const Matrix I = Matrix::Identity(S.rows(), S.cols());
  Matrix out = I;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (j != skip) out = out * (S - c[j] * I);
  return out;
}

DunfordPair dunford_with_clusters(const Matrix& A, const Clusters& clusters);

}  // namespace

DunfordPair dunford(const Matrix& A) {
  if (A.rows() != A.cols() || A.rows() == 0) throw DomainError("dunford: square matrix required");
  const Eigen::Index n = A.rows();
  const double scale = matrix_scale(A);
  const cplx det = A.determinant();
  if (!(std::abs(det) > 1e-12 * std::pow(scale, static_cast<double>(n) - 1.0))) {
    throw DomainError("dunford: matrix is singular (|det| = " + std::to_string(std::abs(det)) + ")");
  }

  // A defective eigenvalue computed in a non-triangular basis splits by about
  // (eps ||A||)^{1/m}, which can exceed the primary gap. Such splits show up
  // as huge spectral projectors; the gap is then widened and the spectrum
  // reclustered.
  const std::vector<cplx> spectrum = eigenvalues(A);
  std::optional<DunfordPair> best;
  double best_worst = 0.0;
  std::size_t last_count = 0;
  for (double gap : {kClusterGap, 1e-6, 1e-5, 1e-4}) {
    const Clusters clusters = cluster_eigenvalues(spectrum, gap);
    if (best && clusters.centers.size() == last_count) continue;
    last_count = clusters.centers.size();
    try {
      DunfordPair out = dunford_with_clusters(A, clusters);
      double worst = 0.0;
      for (const Matrix& P : out.projectors) worst = std::max(worst, P.norm());
      if (worst <= 1e6) return out;
      if (!best || worst < best_worst) {
        best = std::move(out);
        best_worst = worst;
      }
    } catch (const NumericFailure&) {
    }
  }
  if (!best) throw NumericFailure("dunford: ill-clustered spectrum, semi-simple part not recovered");
  return *best;
}

namespace {

DunfordPair dunford_with_clusters(const Matrix& A, const Clusters& clusters) {
  const Eigen::Index n = A.rows();
  const std::vector<cplx>& c = clusters.centers;
  const Matrix I = Matrix::Identity(n, n);

  // Newton iteration on the squarefree polynomial p(x) = prod (x - c_j):
  // S <- S - p(S) p'(S)^{-1}. Every iterate is a polynomial in A and the
  // limit is the semi-simple part (Chevalley).
  Matrix S = A;
  const std::size_t r = c.size();
  for (int iter = 0; iter < 64 && r < static_cast<std::size_t>(n); ++iter) {
    Matrix p = product_except(S, c, r);  // r is out of range: full product
    Matrix dp = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < r; ++k) dp += product_except(S, c, k);
    const Matrix step = dp.fullPivLu().solve(p);
    S -= step;
    if (step.norm() <= 1e-15 * matrix_scale(S)) break;
  }

  DunfordPair out;
  out.s = S;
  out.u = S.fullPivLu().solve(A);
  out.eigenvalues = c;
  out.multiplicities = clusters.sizes;
  out.projectors.reserve(r);
  for (std::size_t k = 0; k < r; ++k) {
    cplx denom{1.0, 0.0};
    for (std::size_t j = 0; j < r; ++j)
      if (j != k) denom *= c[k] - c[j];
    out.projectors.push_back(product_except(S, c, k) / denom);
  }

  // Semi-simple part must be reproduced by its spectral resolution.
  Matrix rebuilt = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < r; ++k) rebuilt += c[k] * out.projectors[k];
  if ((rebuilt - S).norm() > 1e-8 * matrix_scale(S)) {
    throw NumericFailure("dunford: ill-clustered spectrum, semi-simple part not recovered");
  }
  return out;
}

}  // namespace

Matrix apply_to_ss(const ScalarMap& f, const DunfordPair& d) {
  const Eigen::Index n = d.s.rows();
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
    const cplx value = f(d.eigenvalues[k]);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw DomainError("apply_to_ss: map undefined at eigenvalue " + to_string(d.eigenvalues[k]));
    }
    out += value * d.projectors[k];
  }
  return out;
}

Matrix apply_to_ss(const ScalarMap& f, const Matrix& A) { return apply_to_ss(f, dunford(A)); }

Matrix unipotent_pow(const Matrix& U, cplx lambda) {
  const Eigen::Index n = U.rows();
  const Matrix I = Matrix::Identity(n, n);
  const Matrix N = U - I;
  Matrix power = I;
  for (Eigen::Index k = 0; k < n; ++k) power = power * N;
  if (power.norm() > 1e-9 * std::pow(std::max(1.0, N.norm()), static_cast<double>(n))) {
    throw DomainError("unipotent_pow: U - I is not nilpotent");
  }
  Matrix out = I;
  Matrix term = I;
  cplx binom{1.0, 0.0};
  for (Eigen::Index k = 1; k < n; ++k) {
    binom *= (lambda - static_cast<double>(k - 1)) / static_cast<double>(k);
    term = term * N;
    out += binom * term;
  }
  return out;
}

Matrix e_matrix(const DunfordPair& d, cplx z, const QParameter& q, const SeriesTolerance& tol) {
  Matrix out = apply_to_ss([&](cplx c) { return qchar(c, z, q, tol); }, d);
  if (!d.unipotent_trivial()) out = out * unipotent_pow(d.u, qlog(z, q, tol));
  return out;
}

Matrix e_matrix(const Matrix& A, cplx z, const QParameter& q, const SeriesTolerance& tol) {
  return e_matrix(dunford(A), z, q, tol);
}

Matrix phi_cocycle(const Matrix& A, const Matrix& B, cplx z, const QParameter& q,
                   const SeriesTolerance& tol) {
  const Matrix As = dunford(A).s;
  const Matrix Bs = dunford(B).s;
  const Matrix left = e_matrix(kron(As, Bs), z, q, tol);
  const Matrix right = kron(e_matrix(As, z, q, tol), e_matrix(Bs, z, q, tol));
  return left.fullPivLu().solve(right);
}

Matrix solve_intertwine(int k, const Matrix& A0, const Matrix& rhs, const QParameter& q) {
  const Eigen::Index n = A0.rows();
  if (A0.cols() != n || rhs.rows() != n || rhs.cols() != n) {
    throw DomainError("solve_intertwine: dimension mismatch");
  }
  const cplx qk = q.ipow(k);
  const std::vector<cplx> spec = eigenvalues(A0);
  for (cplx ci : spec)
    for (cplx cj : spec) {
      const double scale = std::max(std::abs(qk * ci), std::abs(cj));
      if (std::abs(qk * ci - cj) <= 1e-8 * scale) {
        throw ResonanceError("solve_intertwine: q^" + std::to_string(k) + " * " + to_string(ci) +
                                 " collides with " + to_string(cj),
                             ci, cj);
      }
    }

  // Dense operator on vec(X), column-major.
  const Eigen::Index m = n * n;
  Matrix op(m, m);
  for (Eigen::Index col = 0; col < m; ++col) {
    Matrix E = Matrix::Zero(n, n);
    E(col % n, col / n) = 1.0;
    const Matrix image = qk * E * A0 - A0 * E;
    op.col(col) = Eigen::Map<const Vector>(image.data(), m);
  }
  const Eigen::FullPivLU<Matrix> lu(op);
  const Vector b = Eigen::Map<const Vector>(rhs.data(), m);
  Vector x = lu.solve(b);
  x += lu.solve(b - op * x);  // one refinement step
  Matrix X = Eigen::Map<const Matrix>(x.data(), n, n);
  const double residual = (qk * X * A0 - A0 * X - rhs).norm();
  if (residual > 1e-10 * std::max(rhs.norm(), 1e-300) && rhs.norm() > 0.0) {
    throw NumericFailure("solve_intertwine: residual " + std::to_string(residual) +
                         " exceeds tolerance");
  }
  return X;
}

}  // namespace qconnect
