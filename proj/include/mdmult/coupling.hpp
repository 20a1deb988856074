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

#ifndef MDMULT_COUPLING_HPP_
#define MDMULT_COUPLING_HPP_

#include <string>
#include <vector>

#include "mdmult/group.hpp"
#include "mdmult/linalg.hpp"
#include "mdmult/norms.hpp"

namespace mdmult {

/// Finite weighted point set: a commutative algebra with a faithful trace.
struct TracedSpace {
  std::vector<double> weight;

  Index size() const { return static_cast<Index>(weight.size()); }
  double trace(const std::vector<Index>& subset) const;
};

/// Left action by permutations: act[g][x] = g . x.
using ActionTable = std::vector<std::vector<Index>>;

/// Two commuting weight-preserving actions with fundamental domains:
/// lambda-translates of p and gamma-translates of q partition the points,
/// and Tr(p) = 1. Functions on lambda are induced to functions on gamma.
class CouplingSpace {
 public:
  /// Validates everything; rescales the weights so Tr(p) = 1.
  static CouplingSpace create(TracedSpace space, GroupPtr gamma, ActionTable gamma_act,
                              GroupPtr lambda, ActionTable lambda_act, std::vector<Index> p,
                              std::vector<Index> q, std::string label = "coupling");

  const TracedSpace& space() const { return space_; }
  Index size() const { return space_.size(); }
  double weight(Index x) const { return space_.weight[static_cast<size_t>(x)]; }
  const GroupPtr& gamma() const { return gamma_; }
  const GroupPtr& lambda() const { return lambda_; }
  Index gamma_act(Index g, Index x) const { return gamma_act_[static_cast<size_t>(g)][static_cast<size_t>(x)]; }
  Index lambda_act(Index s, Index x) const { return lambda_act_[static_cast<size_t>(s)][static_cast<size_t>(x)]; }
  const ActionTable& gamma_table() const { return gamma_act_; }
  const ActionTable& lambda_table() const { return lambda_act_; }
  const std::vector<Index>& p() const { return p_; }
  const std::vector<Index>& q() const { return q_; }
  const std::string& label() const { return label_; }

  /// The s with x in lambda_{s^{-1}}(p).
  Index lambda_cell(Index x) const { return lambda_cell_[static_cast<size_t>(x)]; }
  /// The gamma with x in gamma_gamma(q).
  Index gamma_cell(Index x) const { return gamma_cell_[static_cast<size_t>(x)]; }
  /// Position of x in p, or -1.
  Index p_position(Index x) const { return p_pos_[static_cast<size_t>(x)]; }

 private:
  CouplingSpace() = default;

  TracedSpace space_;
  GroupPtr gamma_;
  GroupPtr lambda_;
  ActionTable gamma_act_;
  ActionTable lambda_act_;
  std::vector<Index> p_;
  std::vector<Index> q_;
  std::string label_;
  std::vector<Index> lambda_cell_;
  std::vector<Index> gamma_cell_;
  std::vector<Index> p_pos_;
};

/// Coupling of Gamma <= Lambda on the points of Lambda with unit weights,
/// (gamma, s) . x = s x gamma^{-1}, p = {e}, q = least left-coset
/// representatives. Induction is restriction.
CouplingSpace subgroup_coupling(const Embedding& gamma_in_lambda);

/// Generic constructor; weights are rescaled so Tr(p) = 1.
CouplingSpace me_coupling(std::vector<double> weights, GroupPtr gamma, ActionTable gamma_act,
                          GroupPtr lambda, ActionTable lambda_act, std::vector<Index> p,
                          std::vector<Index> q, std::string label = "coupling");

/// Z/2 acting by +3 and Z/3 acting by +2 on six points, p = {0,1}, q = {0,1,2}.
CouplingSpace z2_z3_coupling();

/// G acting on itself by left translation, Gamma by x -> x alpha^{-1},
/// weights 1/|Omega|, p = Omega, q = {e}: the coupling behind lattice induction.
CouplingSpace lattice_coupling(const Embedding& gamma_in_g, const std::vector<Index>& omega);

/// M^Gamma with tau(O) = Tr(q 1_O).
struct FixedAlgebra {
  std::vector<std::vector<Index>> orbits;
  std::vector<double> tau;
};

FixedAlgebra fixed_algebra(const CouplingSpace& cs);

/// theta_p(f)(x) = f(s) for x in lambda_{s^{-1}}(p).
Vector theta(const CouplingSpace& cs, const GroupFunction& f);

/// phi^(gamma) = sum_{x in gamma(p)} w(x) theta_p(phi)(x).
GroupFunction induce(const CouplingSpace& cs, const GroupFunction& phi);

/// g(s) = sum_gamma f(gamma) Tr(gamma(p) lambda_{s^{-1}}(p)).
GroupFunction induce_dual(const CouplingSpace& cs, const GroupFunction& f);

/// Transports a witness for phi on Lambda to one for induce(phi) on Gamma,
/// with spaces l2(p) (x) H_j and block-permutation operators.
FactorizationWitness induce_witness(const CouplingSpace& cs, const GroupFunction& phi,
                                    const FactorizationWitness& w);

struct KoopmanReport {
  Index orbits = 0;
  double unitarity_defect = 0;      // |F* F - I|
  double coisometry_defect = 0;     // |F F* - I|
  double intertwining_defect = 0;   // max_gamma |U_gamma F - F (lambda(gamma) (x) 1)|
  // Coefficient transport, when a realization is supplied.
  double coefficient_residual = 0;  // max_gamma |phi^(gamma) - <U_gamma xi^, eta^>|
  double norm_defect = 0;           // | |xi^||eta^| - |u||v| |
  double transported_norm = 0;      // |xi^||eta^|
};

/// Builds F_q: l2(Gamma) (x) L2(M^Gamma, tau) -> L2(points, w) and measures
/// unitarity and intertwining. With a realization phi = <lambda(.) u, v> of a
/// Lambda-function, also checks phi^ = <U(.) xi^, eta^> with
/// xi^ = sum_s u(s) 1_{lambda_s^{-1}(p)}.
KoopmanReport koopman_check(const CouplingSpace& cs);
KoopmanReport koopman_check(const CouplingSpace& cs, const GroupFunction& phi,
                            const CoefficientRealization& realization);

/// phi~(g) = (1/|Omega|) sum_{w in Omega} phi(gamma(g w)) where g w = omega gamma.
/// Throws "not a transversal" unless G = disjoint union of Omega gamma.
GroupFunction lattice_induce(const Embedding& gamma_in_g, const std::vector<Index>& omega,
                             const GroupFunction& phi);

/// Least left-coset representatives of Gamma in G: G = disjoint union of Omega Gamma.
std::vector<Index> left_transversal(const Embedding& gamma_in_g);

}  // namespace mdmult

#endif  // MDMULT_COUPLING_HPP_
