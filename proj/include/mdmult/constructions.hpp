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

#ifndef MDMULT_CONSTRUCTIONS_HPP_
#define MDMULT_CONSTRUCTIONS_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mdmult/group.hpp"
#include "mdmult/norms.hpp"

namespace mdmult {

using BallPtr = std::shared_ptr<const FreeBall>;
using WindowPtr = std::shared_ptr<const IntegerWindow>;

// Fejer kernels on Z ------------------------------------------------------------

/// phi_n(m) = (n - |m|)/n with its coefficient realization
/// phi_n = <lambda(.) u, u>, u = indicator of {0..n-1} / sqrt(n).
struct FejerTerm {
  Index n = 0;
  GroupFunction phi;
  Vector u;              // on the window carrier
  double u_norm_sq = 0;  // support size / n, exactly 1
  double realization_residual = 0;
};

FejerTerm fejer(Index n, WindowPtr window);

// Tree multipliers ---------------------------------------------------------------

/// chi_n = indicator of the sphere of radius n, phi_n = sum_i chi_{n-2i}.
std::pair<GroupFunction, GroupFunction> radial_multipliers(BallPtr ball, int n);

struct TreeFamily {
  BallPtr ball;
  int n = 0;
  int d = 2;
  int r = 1;
  GroupFunction chi;
  GroupFunction phi;
  FactorizationWitness witness;
  double consistency_residual = 0;  // middle maps checked on their spanning sets
  double xi_d_sup = 0;
  double xi_1_sup = 0;
  std::vector<double> middle_sups;  // i = 2..d-1
};

/// Operator witness for phi_n on the Cayley tree: H_j is spanned by the ray
/// vectors w_y = sum_k delta_{gamma_y(k)}, |y| <= (d - j) r, in orthonormal
/// coordinates; xi_d(x) = w_x, xi_j(x) w_y = w_{xy}, xi_1(x) w_y = <w_{xy}, eta>
/// with eta = sum_k delta_{a^{n-k}}. Requires r d + n <= R.
TreeFamily tree_witness(BallPtr ball, int n, int d, int r = 1);

struct ChiCertificate {
  double bound = 0;
  double residual = 0;
};

/// |chi_n| <= |phi_n| + |phi_{n-2}| from two tree witnesses (n >= 1).
ChiCertificate chi_certificate(BallPtr ball, int n, int d, int r = 1);

/// rho_t(x) = exp(-t |x|) and phi_{n,t} = rho_t sum_{k <= n} chi_k.
struct HaagerupFamily {
  GroupFunction rho;
  GroupFunction phi;
  double tail = 0;         // partial sum to k_max plus closed-form remainder
  double tail_closed = 0;  // closed form of sum_{k > n} 2k e^{-tk}
};

HaagerupFamily haagerup_family(BallPtr ball, int n, double t, Index k_max = 10000);

/// sum_{k > n} 2k q^k = 2 q^{n+1} (n + 1 - n q) / (1 - q)^2, q = e^{-t}.
double haagerup_tail(Index n, double t);
/// sum_{k = n+1}^{k_max} 2k e^{-tk} + haagerup_tail(k_max, t).
double haagerup_tail_summed(Index n, double t, Index k_max);

/// Least n with haagerup_tail(n, t) <= eps.
Index haagerup_cutoff(double t, double eps);

// Coefficient witnesses -----------------------------------------------------------

struct CoefficientWitness {
  FactorizationWitness witness;
  CoefficientRealization realization;
  double b_value = 0;
  VerifyResult verify;
};

/// Realizes phi = <lambda(.) u, v> from the trace-norm certificate and turns it
/// into an M_d witness with bound |u||v| = |phi|_B.
CoefficientWitness coefficient_witness(const GroupFunction& phi, int d,
                                       const SolveOptions& opts = {});

// Approximation nets ---------------------------------------------------------------

struct NetTerm {
  double parameter = 0;
  double bound = 0;  // certified upper bound on the M_d norm
  std::vector<Complex> values;
  double deviation = 0;  // max over the window of |phi - 1|
};

struct NetReport {
  std::string label;
  int d = 2;
  std::vector<NetTerm> terms;
  double constant_evidence = 0;
  bool converged = false;
  std::string window;
  double threshold = 0;
};

/// Fills deviation, constant_evidence and converged.
NetReport make_net_report(std::string label, int d, std::vector<NetTerm> terms,
                          std::string window, double threshold);

/// Fejer terms n = 1..n_max, values on [-window_half, window_half]; bound is
/// the A norm certificate |u|^2.
NetReport fejer_net(Index n_max, Index window_half, double threshold, int d);

/// phi_{n(t), t} on the free group with n(t) = haagerup_cutoff(t, t); bound
/// 1 + tail (rho_t is positive definite and normalized).
NetReport haagerup_net(int generators, const std::vector<double>& ts, int window_radius,
                       double threshold, int d);

/// phi_n / (n + 1) for n = 1..n_max on FreeBall(generators, d + n_max);
/// bound is the tree witness bound over n + 1. The terms are supported on a
/// parity class of spheres, so the net is reported but does not converge.
NetReport tree_phi_net(int generators, int n_max, int window_radius, double threshold, int d);

}  // namespace mdmult

#endif  // MDMULT_CONSTRUCTIONS_HPP_
