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

#ifndef MDMULT_RANDOM_HPP_
#define MDMULT_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "mdmult/group.hpp"
#include "mdmult/linalg.hpp"

namespace mdmult {

/// Seeded source for every random object in the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex complex_normal() { return Complex(normal(), normal()) / std::sqrt(2.0); }
  double uniform() { return uniform_(engine_); }
  Index below(Index n) { return static_cast<Index>(engine_() % static_cast<std::uint64_t>(n)); }

  Vector complex_vector(Index n);
  Matrix complex_matrix(Index rows, Index cols);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

/// i.i.d. complex Gaussian values.
GroupFunction random_function(CarrierPtr carrier, Rng& rng);

/// phi(x) = <lambda(x) xi, xi> / |xi|^2 for a random Gaussian xi, so phi is
/// positive definite with phi(e) = 1.
GroupFunction random_pd_function(GroupPtr group, Rng& rng);

Matrix random_hermitian(Index n, Rng& rng);
Matrix random_permutation_matrix(Index n, Rng& rng);

}  // namespace mdmult

#endif  // MDMULT_RANDOM_HPP_
