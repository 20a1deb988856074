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

#include "mdmult/trace_min.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace mdmult {

Vector regular_coefficients(const FiniteGroup& g, const Matrix& t) {
  const Index n = g.order();
  require(t.rows() == n && t.cols() == n, "operator does not match the group");
  // lambda(x) has a one in entry (xy, y), so Tr(T lambda(x)*) = sum_y T(xy, y).
  Vector c = Vector::Zero(n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) c(x) += t(g.mul(x, y), y);
  return c;
}

Matrix group_algebra_projection(const FiniteGroup& g, const Matrix& t) {
  const Vector c = regular_coefficients(g, t);
  return convolution_operator(g, c / static_cast<double>(g.order()));
}

namespace {

// Projection onto {T : Tr(T lambda(g)*) = phi(g)}. The lambda(g) are
// orthogonal with |lambda(g)|_F^2 = n, so each constraint is corrected
// independently.
Matrix project_constraints(const FiniteGroup& g, const Vector& phi, const Matrix& t) {
  const Vector c = regular_coefficients(g, t);
  return t - convolution_operator(g, (c - phi) / static_cast<double>(g.order()));
}

Matrix soft_threshold(const Matrix& a, double gamma) {
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector s = (svd.singularValues().array() - gamma).max(0.0).matrix();
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

// Dual value of the polar factor of T after projection onto the group algebra.
double dual_bound(const FiniteGroup& g, const Vector& phi, const Matrix& t) {
  Eigen::BDCSVD<Matrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix w = svd.matrixU() * svd.matrixV().adjoint();
  const Vector y = regular_coefficients(g, w) / static_cast<double>(g.order());
  const double op = operator_norm(convolution_operator(g, y));
  if (op == 0.0) return 0.0;
  return y.dot(phi).real() / op;  // dot conjugates its left argument
}

}  // namespace

TraceMinResult trace_min(const FiniteGroup& g, const Vector& phi, const SolveOptions& opts) {
  opts.validate();
  const Index n = g.order();
  require(phi.size() == n, "function size does not match the group");
  require_finite(phi, "function");

  TraceMinResult r;
  r.upper = std::numeric_limits<double>::infinity();
  if (phi.isZero(0.0)) {
    r.t = Matrix::Zero(n, n);
    r.certified = true;
    return r;
  }
  const double scale = phi.cwiseAbs().maxCoeff();
  const double gamma = scale / n;

  Matrix z = Matrix::Zero(n, n);
  for (int it = 1; it <= opts.max_iterations; ++it) {
    r.iterations = it;
    const Matrix y = project_constraints(g, phi, z);
    const double up = trace_norm(y);
    if (up < r.upper) {
      r.upper = up;
      r.t = y;
    }
    r.lower = std::max(r.lower, dual_bound(g, phi, y));
    if (r.upper - r.lower <= opts.tolerance * r.upper) break;
    z += soft_threshold(2.0 * y - z, gamma) - y;
  }
  r.lower = std::min(r.lower, r.upper);
  r.value = 0.5 * (r.lower + r.upper);
  r.residual = (regular_coefficients(g, r.t) - phi).cwiseAbs().maxCoeff();
  r.certified = r.upper - r.lower <= opts.tolerance * r.upper;
  if (!r.certified)
    throw NoCertificate("no certificate: trace minimization bracket did not close", r.lower,
                        r.upper);
  return r;
}

}  // namespace mdmult
