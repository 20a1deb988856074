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

#ifndef MDMULT_SCHUR_HPP_
#define MDMULT_SCHUR_HPP_

#include <string>

#include "mdmult/linalg.hpp"

namespace mdmult {

/// Certified bracket for the Schur multiplier norm of M.
///
/// The primal certificate is an exact factorization M = P Q*: the blocks
/// X = P P*, Y = Q Q* make [[X, M], [M*, Y]] = [P; Q][P; Q]* positive, and
/// upper = max_i |p_i| * max_j |q_j|. The dual certificate is a pair of
/// probability vectors (u, v) with lower = |D_sqrt(u) M D_sqrt(v)|_1.
struct SchurResult {
  double value = 0;  // midpoint of the bracket
  double lower = 0;
  double upper = 0;
  Matrix p;
  Matrix q;
  RealVector u;
  RealVector v;
  int iterations = 0;
  bool certified = false;
  std::string engine;

  Matrix x_block() const { return p * p.adjoint(); }
  Matrix y_block() const { return q * q.adjoint(); }
};

/// Dual multiplicative fixed point with exact primal certificates.
SchurResult schur_norm(const Matrix& m, const SolveOptions& opts = {});

/// Bisection on t over PSD-completion feasibility, each step solved by
/// Dykstra alternating projections; the certificate is repaired by an
/// eigenvalue shift so the reported upper end is always valid.
SchurResult schur_norm_projection(const Matrix& m, const SolveOptions& opts = {});

/// sum_j max_i |M_ij|: split M into its columns, each a rank-one Schur
/// multiplier.
double rank_one_splitting_bound(const Matrix& m);

/// |D_sqrt(u) M D_sqrt(v)|_1, a lower bound for any probability vectors.
double schur_dual_value(const Matrix& m, const RealVector& u, const RealVector& v);

/// max(|p_i|) * max(|q_j|) for a factorization.
double factorization_bound(const Matrix& p, const Matrix& q);

}  // namespace mdmult

#endif  // MDMULT_SCHUR_HPP_
