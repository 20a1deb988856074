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

#ifndef MDMULT_ACCEPTANCE_HPP_
#define MDMULT_ACCEPTANCE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mdmult/coupling.hpp"
#include "mdmult/io.hpp"

namespace mdmult {

/// Reference computations that must not share code with the library. The
/// test tree provides them; the library only calls through these hooks.
struct AcceptanceOracles {
  /// Nonconvex factorization estimate of the Schur multiplier norm.
  std::function<double(const Matrix&, std::uint64_t)> schur;
  /// B norm of a function on Z/n as the l1 norm of its Fourier transform.
  std::function<double(const std::vector<Complex>&)> cyclic_b_norm;
  /// sum_{n < k <= kmax} 2k e^{-tk} in extended precision.
  std::function<long double(long long, double, long long)> tail_partial;
  /// Reduced words of length j over k free generators, by enumeration.
  std::function<long long(int, int)> sphere_count;
};

struct AcceptanceOptions {
  bool quick = false;        // reduced sample counts
  std::uint64_t seed = 0;
  bool inject_schur_fault = false;
  bool self_checks = true;   // criterion 12 re-runs the quick suite
  std::vector<int> only;     // empty: every criterion
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;  // deterministic measurement line
  Json details = Json::object();
  double seconds = 0;
  double limit_seconds = 0;  // 0: none
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const AcceptanceOracles& oracles);

/// Stable form; timings only when requested.
Json acceptance_json(const std::vector<CriterionResult>& results, bool timing);

/// The couplings every coupling criterion runs on.
struct NamedCoupling {
  std::string name;
  CouplingSpace space;
};
std::vector<NamedCoupling> shipped_couplings();
/// Lattice couplings G ⊇ Gamma with their transversals.
struct LatticeCase {
  std::string name;
  Embedding embedding;
  std::vector<Index> omega;
};
std::vector<LatticeCase> lattice_cases();

}  // namespace mdmult

#endif  // MDMULT_ACCEPTANCE_HPP_
