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

#ifndef MDMULT_LINALG_HPP_
#define MDMULT_LINALG_HPP_

#include <cstdint>

#include <Eigen/Dense>

#include "mdmult/error.hpp"
#include "mdmult/group.hpp"

namespace mdmult {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct SolveOptions {
  double tolerance = 1e-7;  // relative bracket width
  int max_iterations = 50000;
  std::uint64_t seed = 0;
  // Test hook: when set, schur_norm returns max|M_ij| and nothing else.
  bool inject_schur_fault = false;

  void validate() const {
    require(tolerance > 0 && tolerance < 1, "tolerance must lie in (0, 1)");
    require(max_iterations > 0, "max_iterations must be positive");
  }
};

template <class Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what = "matrix") {
  if (!a.allFinite()) fail(std::string(what) + " has non-finite entries");
}

/// Largest singular value.
template <class Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& a) {
  require_finite(a);
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 || a.cols() == 1) return a.norm();
  using Plain = typename Derived::PlainObject;
  Eigen::BDCSVD<Plain> svd(a.eval());
  return svd.singularValues()(0);
}

/// Sum of singular values.
template <class Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& a) {
  require_finite(a);
  if (a.size() == 0) return 0.0;
  using Plain = typename Derived::PlainObject;
  Eigen::BDCSVD<Plain> svd(a.eval());
  return svd.singularValues().sum();
}

/// (A + A*)/2 after checking |A - A*| <= asym_tol * max(1, |A|) entrywise.
Matrix hermitian_part(const Matrix& a, double asym_tol = 1e-9);

/// Smallest eigenvalue of the hermitian part.
double min_eigenvalue(const Matrix& a, double asym_tol = 1e-9);

/// True iff min eigenvalue >= -tol * |A|_op. Throws on non-square input or
/// asymmetry beyond 1e-9.
bool is_psd(const Matrix& a, double tol);

/// Left regular representation: lambda(g) delta_x = delta_{gx}.
Matrix left_regular(const FiniteGroup& g, Index x);

/// lambda(phi) = sum_g phi(g) lambda(g).
Matrix convolution_operator(const FiniteGroup& g, const Vector& phi);

}  // namespace mdmult

#endif  // MDMULT_LINALG_HPP_
