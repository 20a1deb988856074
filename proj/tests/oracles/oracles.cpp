// Copyright 2026 The mdmult Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

namespace oracle {

namespace {

using RealVector = Eigen::VectorXd;
using Vector = Eigen::VectorXcd;

// argmin |A x - b| subject to |x|^2 <= t, given the eigendecomposition of A*A.
struct BallLeastSquares {
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  Matrix adj;

  explicit BallLeastSquares(const Matrix& a) : es(a.adjoint() * a), adj(a.adjoint()) {}

  Vector solve(const Vector& b, double t) const {
    const RealVector& lam = es.eigenvalues();
    const Vector c = es.eigenvectors().adjoint() * (adj * b);
    const double top = std::max(lam.maxCoeff(), 1.0);
    auto norm2 = [&](double mu) {
      double s = 0;
      for (Eigen::Index i = 0; i < lam.size(); ++i) {
        const double den = lam(i) + mu;
        if (den > 1e-13 * top) s += std::norm(c(i)) / (den * den);
      }
      return s;
    };
    auto at = [&](double mu) {
      Vector y(lam.size());
      for (Eigen::Index i = 0; i < lam.size(); ++i) {
        const double den = lam(i) + mu;
        y(i) = den > 1e-13 * top ? c(i) / den : Complex(0);
      }
      return Vector(es.eigenvectors() * y);
    };
    if (norm2(0.0) <= t) return at(0.0);
    double lo = 0, hi = 1;
    while (norm2(hi) > t) hi *= 2;
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      (norm2(mid) > t ? lo : hi) = mid;
    }
    return at(hi);
  }
};

double max_row(const Matrix& a) { return a.rowwise().norm().maxCoeff(); }

// Runs alternating ball-constrained least squares at level t and returns the
// bound of the exactly repaired factorization: max|p| max|q| + max_i |E_i|.
double attempt(const Matrix& m, double t, std::uint64_t seed, int sweeps, double& rel_residual) {
  const Eigen::Index n = m.rows(), k = m.cols(), r = n + k;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  auto randm = [&](Eigen::Index a, Eigen::Index b) {
    Matrix x(a, b);
    for (Eigen::Index j = 0; j < b; ++j)
      for (Eigen::Index i = 0; i < a; ++i) x(i, j) = Complex(nd(gen), nd(gen)) / std::sqrt(2.0 * r);
    return x;
  };
  Matrix p = randm(n, r), q = randm(k, r);
  for (int s = 0; s < sweeps; ++s) {
    // M_ij = <p_i, q_j> = (conj(Q) p_i)_j
    {
      BallLeastSquares ls(q.conjugate());
      for (Eigen::Index i = 0; i < n; ++i) p.row(i) = ls.solve(m.row(i).transpose(), t).transpose();
    }
    {
      BallLeastSquares ls(p.conjugate());
      for (Eigen::Index j = 0; j < k; ++j) q.row(j) = ls.solve(m.col(j).conjugate(), t).transpose();
    }
    if ((s % 50) == 49 && (m - p * q.adjoint()).norm() <= 1e-12 * m.norm()) break;
  }
  const Matrix e = m - p * q.adjoint();
  const double er = max_row(e);
  rel_residual = er / t;
  return max_row(p) * max_row(q) + er;
}

}  // namespace

double schur_factorization(const Matrix& m, std::uint64_t seed, int sweeps, int steps) {
  double lo = m.cwiseAbs().maxCoeff();
  // P = M, Q = I is a factorization with bound max row norm.
  double best = max_row(m);
  double hi = best;
  for (int s = 0; s < steps && hi - lo > 1e-9 * hi; ++s) {
    const double t = 0.5 * (lo + hi);
    double rel = 0;
    const double v = attempt(m, t, seed + static_cast<std::uint64_t>(s), sweeps, rel);
    best = std::min(best, v);
    if (rel <= 1e-4) hi = t;
    else lo = t;
  }
  return best;
}

double dft_l1(const std::vector<Complex>& f) {
  const size_t n = f.size();
  double s = 0;
  for (size_t k = 0; k < n; ++k) {
    Complex c = 0;
    for (size_t m = 0; m < n; ++m) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((k * m) % n) / static_cast<double>(n);
      c += f[m] * Complex(std::cos(ang), std::sin(ang));
    }
    s += std::abs(c) / static_cast<double>(n);
  }
  return s;
}

long long sphere_count(int k, int j) {
  const int letters = 2 * k;
  long long total = 1;
  for (int i = 0; i < j; ++i) total *= letters;
  long long count = 0;
  std::vector<int> w(static_cast<size_t>(j));
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < j; ++i) {
      w[static_cast<size_t>(i)] = static_cast<int>(c % letters);
      c /= letters;
    }
    bool reduced = true;
    for (int i = 0; i + 1 < j && reduced; ++i)
      reduced = w[static_cast<size_t>(i)] / 2 != w[static_cast<size_t>(i + 1)] / 2 ||
                w[static_cast<size_t>(i)] == w[static_cast<size_t>(i + 1)];
    count += reduced;
  }
  return count;
}

long double tail_partial(long long n, double t, long long kmax) {
  long double s = 0;
  for (long long k = kmax; k > n; --k) s += 2.0L * k * std::exp(-static_cast<long double>(t) * k);
  return s;
}

std::vector<Complex> cyclic_pd(const std::vector<Complex>& xi) {
  const size_t n = xi.size();
  double norm2 = 0;
  for (auto z : xi) norm2 += std::norm(z);
  std::vector<Complex> phi(n);
  for (size_t x = 0; x < n; ++x) {
    Complex s = 0;
    for (size_t y = 0; y < n; ++y) s += xi[(y + n - x) % n] * std::conj(xi[y]);
    phi[x] = s / norm2;
  }
  return phi;
}

}  // namespace oracle
