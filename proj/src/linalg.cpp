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

#include "mdmult/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace mdmult {

Matrix hermitian_part(const Matrix& a, double asym_tol) {
  require(a.rows() == a.cols(), "matrix is not square");
  require_finite(a);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > asym_tol * scale)
    fail("matrix is not hermitian within tolerance");
  return (a + a.adjoint()) / 2.0;
}

double min_eigenvalue(const Matrix& a, double asym_tol) {
  const Matrix h = hermitian_part(a, asym_tol);
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const Matrix& a, double tol) {
  const Matrix h = hermitian_part(a);
  if (h.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const RealVector& ev = es.eigenvalues();
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -tol * norm;
}

Matrix left_regular(const FiniteGroup& g, Index x) {
  const Index n = g.order();
  Matrix l = Matrix::Zero(n, n);
  for (Index y = 0; y < n; ++y) l(g.mul(x, y), y) = 1.0;
  return l;
}

Matrix convolution_operator(const FiniteGroup& g, const Vector& phi) {
  const Index n = g.order();
  require(phi.size() == n, "function size does not match the group");
  Matrix l = Matrix::Zero(n, n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) l(g.mul(x, y), y) += phi(x);
  return l;
}

}  // namespace mdmult
