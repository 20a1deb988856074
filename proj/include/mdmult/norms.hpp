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

#ifndef MDMULT_NORMS_HPP_
#define MDMULT_NORMS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mdmult/group.hpp"
#include "mdmult/linalg.hpp"
#include "mdmult/schur.hpp"
#include "mdmult/trace_min.hpp"

namespace mdmult {

struct Bound {
  double value = 0;
  std::string provenance;
};

/// Certified interval for a multiplier norm. Either end may be absent.
struct NormReport {
  std::optional<Bound> lower;
  std::optional<Bound> upper;
  std::string notes;
  double tolerance = 0;

  /// Throws an inconsistency error unless lower <= upper + 2 tolerance.
  void check() const;
};

/// Maps xi_i(g): H_i -> H_{i-1} for g in the acting set, with H_0 = H_d = C.
struct FactorizationWitness {
  int d = 2;
  std::vector<Index> dims;    // H_0 .. H_d
  std::vector<Index> acting;  // carrier indices
  // xi[i - 1][k] is xi_i(acting[k]), a dims[i-1] x dims[i] matrix.
  std::vector<std::vector<Matrix>> xi;

  void validate() const;
  const Matrix& at(int i, size_t k) const { return xi[static_cast<size_t>(i - 1)][k]; }
  /// sup_g |xi_i(g)| for i = 1..d.
  std::vector<double> factor_sups() const;
  /// prod_i sup_g |xi_i(g)|.
  double bound() const;
};

struct TupleSource {
  bool exhaustive = true;
  Index samples = 0;  // used when not exhaustive
  std::uint64_t seed = 0;

  static TupleSource all() { return {}; }
  static TupleSource sampled(Index n, std::uint64_t seed) { return {false, n, seed}; }
  /// Exhaustive up to `limit` tuples, seeded sampling of `limit` beyond.
  static TupleSource automatic(Index tuples, Index limit, std::uint64_t seed) {
    return tuples <= limit ? all() : sampled(limit, seed);
  }
};

struct VerifyResult {
  double residual = 0;
  double bound = 0;
  Index tuples = 0;
  bool certified = false;
};

/// |phi(g_1...g_d) - xi_1(g_1)...xi_d(g_d)| maximized over tuples of the
/// acting set, and the witness bound. certified iff residual <= tol.
VerifyResult verify_factorization(const GroupFunction& phi, const FactorizationWitness& w,
                                  const TupleSource& tuples = TupleSource::all(),
                                  double tol = 1e-9);

/// The index set used for M_2 on a carrier: all of a finite group, the
/// radius floor(R/2) ball of a free ball, [-floor(N/2), floor(N/2)] of a window.
std::vector<Index> m2_index_set(const Carrier& c);

/// Acting set for d-fold products: the finite group, or the radius floor(R/d)
/// ball (window [-floor(N/d), floor(N/d)]).
std::vector<Index> acting_set(const Carrier& c, int d);

/// The matrix [phi(x y)]_{x, y in index}.
Matrix herz_schur_matrix(const GroupFunction& phi, const std::vector<Index>& index);

/// Schur norm of [phi(xy)] over the m2 index set. Exact interval on finite
/// groups; a certified lower bound only on truncated carriers.
NormReport m2_norm(const GroupFunction& phi, const SolveOptions& opts = {});
NormReport m2_norm(const GroupFunction& phi, const std::vector<Index>& index,
                   const SolveOptions& opts = {});

/// Fourier-Stieltjes norm on a finite group.
double b_norm(const GroupFunction& phi, const SolveOptions& opts = {});
TraceMinResult b_norm_solve(const GroupFunction& phi, const SolveOptions& opts = {});

/// phi(x) = <lambda(x) u, v> = v* lambda(x) u.
struct CoefficientRealization {
  Vector u;
  Vector v;
  double residual = 0;  // max_x |phi(x) - v* lambda(x) u|
  double norm_product() const { return u.norm() * v.norm(); }
};

/// Balanced realization with |u| = |v| = sqrt(|T|_1) from a trace-norm
/// certificate T for phi.
CoefficientRealization coefficient_realization(const FiniteGroup& g, const Vector& phi,
                                               const Matrix& t);

/// Witness with H_1 = ... = H_{d-1} = l2(G): xi_d(g) = lambda(g) u,
/// xi_i(g) = lambda(g), xi_1(g) = v* lambda(g); bound |u||v|.
FactorizationWitness realization_witness(const FiniteGroup& g,
                                         const CoefficientRealization& r, int d);

struct ANormReport {
  double value = 0;        // = b_norm
  CoefficientRealization realization;
  double nonconvex = 0;    // best |u||v| found by direct search
  double nonconvex_residual = 0;
  double gap = 0;          // (nonconvex - value) / value
};

/// Fourier norm: equal to b_norm on finite groups; cross-checked by a
/// nonconvex minimization of |u||v| over realizations. Throws an
/// inconsistency error if the search beats b_norm by more than 1e-4 relative.
double a_norm(const GroupFunction& phi, const SolveOptions& opts = {});
ANormReport a_norm_report(const GroupFunction& phi, const SolveOptions& opts = {});

/// lower = m2 lower bound; upper = least certified witness bound among the
/// coefficient witness (finite groups) and the supplied witnesses.
NormReport md_sandwich(const GroupFunction& phi, int d,
                       const std::vector<FactorizationWitness>& witnesses = {},
                       const SolveOptions& opts = {});

struct SearchOptions {
  int restarts = 5;
  int sweeps = 300;
  std::uint64_t seed = 0;
  double target_residual = 1e-12;
};

struct FactorizationCandidate {
  FactorizationWitness witness;
  double residual = 0;
  double bound = 0;
};

/// Alternating least squares over the xi_i with norm balancing after each
/// sweep; returns the best of several seeded restarts. Only
/// verify_factorization certifies the result.
FactorizationCandidate search_factorization(const GroupFunction& phi, int d,
                                            const std::vector<Index>& dims,
                                            const SearchOptions& opts = {});

/// sum_x psi(x) phi(x), no conjugation.
Complex pairing(const GroupFunction& phi, const GroupFunction& psi);

/// [phi(y^{-1} x)]_{x, y in s}
Matrix pd_kernel(const GroupFunction& phi, const std::vector<Index>& s);
bool is_pd_function(const GroupFunction& phi, const std::vector<Index>& s, double tol = 1e-10);

}  // namespace mdmult

#endif  // MDMULT_NORMS_HPP_
