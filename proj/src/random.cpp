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

#include "mdmult/random.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace mdmult {

Vector Rng::complex_vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

Matrix Rng::complex_matrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

GroupFunction random_function(CarrierPtr carrier, Rng& rng) {
  const Index n = carrier->size();
  return GroupFunction(std::move(carrier), rng.complex_vector(n));
}

GroupFunction random_pd_function(GroupPtr group, Rng& rng) {
  const Index n = group->order();
  const Vector xi = rng.complex_vector(n);
  const double norm2 = xi.squaredNorm();
  // <lambda(x) xi, xi> = sum_y xi(x^{-1} y) conj(xi(y))
  return GroupFunction::generate(group, [&](Index x) {
    const Index xinv = group->inverse(x);
    Complex s = 0;
    for (Index y = 0; y < n; ++y) s += xi(group->mul(xinv, y)) * std::conj(xi(y));
    return s / norm2;
  });
}

Matrix random_hermitian(Index n, Rng& rng) {
  const Matrix a = rng.complex_matrix(n, n);
  return a + a.adjoint();
}

Matrix random_permutation_matrix(Index n, Rng& rng) {
  std::vector<Index> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (Index i = n - 1; i > 0; --i) std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(rng.below(i + 1))]);
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, perm[static_cast<size_t>(i)]) = 1.0;
  return m;
}

}  // namespace mdmult
