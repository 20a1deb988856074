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

// Independent reference computations for tests. Nothing here shares code
// with the solvers it checks.

#ifndef MDMULT_TESTS_ORACLES_HPP_
#define MDMULT_TESTS_ORACLES_HPP_

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Upper estimate of the Schur multiplier norm by a direct search over
/// factorizations M = P Q* with row norms squared at most t, bisecting on t.
/// Every returned value is attained by an explicit factorization.
double schur_factorization(const Matrix& m, std::uint64_t seed = 0, int sweeps = 2000,
                           int steps = 30);

/// sum_k |(1/n) sum_m f(m) e^{-2 pi i k m / n}| for f on Z/n.
double dft_l1(const std::vector<Complex>& f);

/// Reduced words of length j over k generators, counted by brute force.
long long sphere_count(int k, int j);

/// sum_{k = n+1}^{kmax} 2k e^{-tk} in long double.
long double tail_partial(long long n, double t, long long kmax);

/// Circular convolution kernel on Z/n: phi(x) = <lambda(x) xi, xi>/|xi|^2.
std::vector<Complex> cyclic_pd(const std::vector<Complex>& xi);

}  // namespace oracle

#endif  // MDMULT_TESTS_ORACLES_HPP_
