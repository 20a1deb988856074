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

#ifndef MDMULT_TRACE_MIN_HPP_
#define MDMULT_TRACE_MIN_HPP_

#include "mdmult/group.hpp"
#include "mdmult/linalg.hpp"

namespace mdmult {

/// min |T|_1 subject to Tr(T lambda(g)*) = phi(g) for all g.
///
/// `upper` is the trace norm of a feasible T; `lower` comes from a dual
/// element Y = sum_g y_g lambda(g): Re sum_g conj(y_g) phi(g) / |Y|_op.
struct TraceMinResult {
  double value = 0;
  double lower = 0;
  double upper = 0;
  Matrix t;
  double residual = 0;  // max_g |Tr(T lambda(g)*) - phi(g)|
  int iterations = 0;
  bool certified = false;
};

/// Douglas-Rachford splitting between singular value soft-thresholding and
/// the affine constraint set. Throws NoCertificate if the bracket stays open.
TraceMinResult trace_min(const FiniteGroup& g, const Vector& phi, const SolveOptions& opts = {});

/// Tr(T lambda(g)*) for all g.
Vector regular_coefficients(const FiniteGroup& g, const Matrix& t);

/// Orthogonal projection onto span{lambda(g)} (the conditional expectation
/// onto the group von Neumann algebra).
Matrix group_algebra_projection(const FiniteGroup& g, const Matrix& t);

}  // namespace mdmult

#endif  // MDMULT_TRACE_MIN_HPP_
