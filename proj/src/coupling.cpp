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

#include "mdmult/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace mdmult {

double TracedSpace::trace(const std::vector<Index>& subset) const {
  double s = 0;
  for (Index x : subset) s += weight[static_cast<size_t>(x)];
  return s;
}

namespace {

void check_action(const FiniteGroup& g, const ActionTable& act, Index points, const std::string& who) {
  if (static_cast<Index>(act.size()) != g.order())
    fail("the " + who + " action needs one permutation per group element");
  for (const auto& row : act) {
    if (static_cast<Index>(row.size()) != points) fail("the " + who + " action has a row of the wrong length");
    std::vector<char> seen(static_cast<size_t>(points), 0);
    for (Index y : row) {
      if (y < 0 || y >= points || seen[static_cast<size_t>(y)]++)
        fail("the " + who + " action contains a non-permutation");
    }
  }
  for (Index x = 0; x < points; ++x)
    if (act[static_cast<size_t>(g.identity())][static_cast<size_t>(x)] != x)
      fail("not a group action: the " + who + " identity moves a point");
  for (Index a = 0; a < g.order(); ++a)
    for (Index b = 0; b < g.order(); ++b)
      for (Index x = 0; x < points; ++x)
        if (act[static_cast<size_t>(g.mul(a, b))][static_cast<size_t>(x)] !=
            act[static_cast<size_t>(a)][static_cast<size_t>(act[static_cast<size_t>(b)][static_cast<size_t>(x)])])
          fail("not a group action: the " + who + " table is not multiplicative");
}

// Marks cell[x] = g for x = act[g'][y], y in domain, where g' = g or g^{-1}.
std::vector<Index> partition_cells(const FiniteGroup& g, const ActionTable& act, const std::vector<Index>& domain,
                                   Index points, bool inverse, const std::string& who) {
  std::vector<Index> cell(static_cast<size_t>(points), -1);
  for (Index y : domain)
    if (y < 0 || y >= points) fail("not a fundamental domain: " + who + " contains an unknown point");
  for (Index a = 0; a < g.order(); ++a) {
    const Index by = inverse ? g.inverse(a) : a;
    for (Index y : domain) {
      Index& c = cell[static_cast<size_t>(act[static_cast<size_t>(by)][static_cast<size_t>(y)])];
      if (c >= 0) fail("not a fundamental domain: translates of " + who + " overlap");
      c = a;
    }
  }
  for (Index c : cell)
    if (c < 0) fail("not a fundamental domain: translates of " + who + " do not cover the points");
  return cell;
}

void require_on(const GroupFunction& f, const FiniteGroup& g, const char* what) {
  if (f.carrier().label() != g.label() || f.size() != g.order())
    fail(std::string(what) + " must live on " + g.label() + ", got " + f.carrier().label());
}

}  // namespace

CouplingSpace CouplingSpace::create(TracedSpace space, GroupPtr gamma, ActionTable gamma_act,
                                    GroupPtr lambda, ActionTable lambda_act, std::vector<Index> p,
                                    std::vector<Index> q, std::string label) {
  require(gamma && lambda, "coupling needs both groups");
  const Index n = space.size();
  require(n > 0, "coupling needs at least one point");
  for (double w : space.weight)
    if (!(w > 0) || !std::isfinite(w)) fail("coupling weights must be positive and finite");
  check_action(*gamma, gamma_act, n, "gamma");
  check_action(*lambda, lambda_act, n, "lambda");

  for (const ActionTable* act : {&gamma_act, &lambda_act})
    for (const auto& row : *act)
      for (Index x = 0; x < n; ++x) {
        const double w0 = space.weight[static_cast<size_t>(x)];
        const double w1 = space.weight[static_cast<size_t>(row[static_cast<size_t>(x)])];
        if (std::abs(w1 - w0) > 1e-12 * w0) fail("weight drift: an action does not preserve the weights");
      }
  for (Index a = 0; a < gamma->order(); ++a)
    for (Index s = 0; s < lambda->order(); ++s)
      for (Index x = 0; x < n; ++x)
        if (gamma_act[static_cast<size_t>(a)][static_cast<size_t>(lambda_act[static_cast<size_t>(s)][static_cast<size_t>(x)])] !=
            lambda_act[static_cast<size_t>(s)][static_cast<size_t>(gamma_act[static_cast<size_t>(a)][static_cast<size_t>(x)])])
          fail("actions do not commute");

  std::sort(p.begin(), p.end());
  std::sort(q.begin(), q.end());
  CouplingSpace cs;
  cs.lambda_cell_ = partition_cells(*lambda, lambda_act, p, n, true, "p");
  cs.gamma_cell_ = partition_cells(*gamma, gamma_act, q, n, false, "q");

  const double tp = space.trace(p);
  for (double& w : space.weight) w /= tp;
  cs.space_ = std::move(space);
  cs.gamma_ = std::move(gamma);
  cs.lambda_ = std::move(lambda);
  cs.gamma_act_ = std::move(gamma_act);
  cs.lambda_act_ = std::move(lambda_act);
  cs.p_pos_.assign(static_cast<size_t>(n), -1);
  for (size_t i = 0; i < p.size(); ++i) cs.p_pos_[static_cast<size_t>(p[i])] = static_cast<Index>(i);
  cs.p_ = std::move(p);
  cs.q_ = std::move(q);
  cs.label_ = std::move(label);
  return cs;
}

CouplingSpace me_coupling(std::vector<double> weights, GroupPtr gamma, ActionTable gamma_act,
                          GroupPtr lambda, ActionTable lambda_act, std::vector<Index> p,
                          std::vector<Index> q, std::string label) {
  return CouplingSpace::create(TracedSpace{std::move(weights)}, std::move(gamma), std::move(gamma_act),
                               std::move(lambda), std::move(lambda_act), std::move(p), std::move(q),
                               std::move(label));
}

std::vector<Index> left_transversal(const Embedding& e) {
  const FiniteGroup& g = *e.ambient;
  std::vector<char> covered(static_cast<size_t>(g.order()), 0);
  std::vector<Index> reps;
  for (Index x = 0; x < g.order(); ++x) {
    if (covered[static_cast<size_t>(x)]) continue;
    reps.push_back(x);
    for (Index h : e.map) covered[static_cast<size_t>(g.mul(x, h))] = 1;
  }
  return reps;
}

CouplingSpace subgroup_coupling(const Embedding& e) {
  const FiniteGroup& big = *e.ambient;
  const FiniteGroup& small = *e.sub;
  const Index n = big.order();
  ActionTable lam(static_cast<size_t>(n)), gam(static_cast<size_t>(small.order()));
  for (Index s = 0; s < n; ++s)
    for (Index x = 0; x < n; ++x) lam[static_cast<size_t>(s)].push_back(big.mul(s, x));
  for (Index a = 0; a < small.order(); ++a) {
    const Index hinv = big.inverse(e.map[static_cast<size_t>(a)]);
    for (Index x = 0; x < n; ++x) gam[static_cast<size_t>(a)].push_back(big.mul(x, hinv));
  }
  return CouplingSpace::create(TracedSpace{std::vector<double>(static_cast<size_t>(n), 1.0)}, e.sub,
                               std::move(gam), e.ambient, std::move(lam), {big.identity()},
                               left_transversal(e), small.label() + " <= " + big.label());
}

CouplingSpace z2_z3_coupling() {
  auto z2 = std::make_shared<FiniteGroup>(cyclic_group(2));
  auto z3 = std::make_shared<FiniteGroup>(cyclic_group(3));
  ActionTable gam(2), lam(3);
  for (Index a = 0; a < 2; ++a)
    for (Index x = 0; x < 6; ++x) gam[static_cast<size_t>(a)].push_back((x + 3 * a) % 6);
  for (Index s = 0; s < 3; ++s)
    for (Index x = 0; x < 6; ++x) lam[static_cast<size_t>(s)].push_back((x + 2 * s) % 6);
  return me_coupling(std::vector<double>(6, 1.0), z2, std::move(gam), z3, std::move(lam), {0, 1},
                     {0, 1, 2}, "cyclic:2 / cyclic:3 on 6 points");
}

CouplingSpace lattice_coupling(const Embedding& e, const std::vector<Index>& omega) {
  const FiniteGroup& g = *e.ambient;
  const FiniteGroup& lat = *e.sub;
  const Index n = g.order();
  require(!omega.empty(), "empty transversal");
  ActionTable left(static_cast<size_t>(n)), right(static_cast<size_t>(lat.order()));
  for (Index a = 0; a < n; ++a)
    for (Index x = 0; x < n; ++x) left[static_cast<size_t>(a)].push_back(g.mul(a, x));
  for (Index s = 0; s < lat.order(); ++s) {
    const Index inv = g.inverse(e.map[static_cast<size_t>(s)]);
    for (Index x = 0; x < n; ++x) right[static_cast<size_t>(s)].push_back(g.mul(x, inv));
  }
  const double w = 1.0 / static_cast<double>(omega.size());
  return CouplingSpace::create(TracedSpace{std::vector<double>(static_cast<size_t>(n), w)}, e.ambient,
                               std::move(left), e.sub, std::move(right), omega, {g.identity()},
                               "lattice " + lat.label() + " in " + g.label());
}

FixedAlgebra fixed_algebra(const CouplingSpace& cs) {
  FixedAlgebra fa;
  std::vector<char> seen(static_cast<size_t>(cs.size()), 0);
  for (Index x = 0; x < cs.size(); ++x) {
    if (seen[static_cast<size_t>(x)]) continue;
    std::vector<Index> orbit;
    for (Index a = 0; a < cs.gamma()->order(); ++a) {
      const Index y = cs.gamma_act(a, x);
      if (!seen[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = 1;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    double tau = 0;
    for (Index y : orbit)
      if (std::binary_search(cs.q().begin(), cs.q().end(), y)) tau += cs.weight(y);
    fa.orbits.push_back(std::move(orbit));
    fa.tau.push_back(tau);
  }
  return fa;
}

Vector theta(const CouplingSpace& cs, const GroupFunction& f) {
  require_on(f, *cs.lambda(), "theta input");
  Vector out(cs.size());
  for (Index x = 0; x < cs.size(); ++x) out(x) = f(cs.lambda_cell(x));
  return out;
}

GroupFunction induce(const CouplingSpace& cs, const GroupFunction& phi) {
  const Vector th = theta(cs, phi);
  return GroupFunction::generate(cs.gamma(), [&](Index a) {
    Complex s = 0;
    for (Index y : cs.p()) {
      const Index x = cs.gamma_act(a, y);
      s += cs.weight(x) * th(x);
    }
    return s;
  });
}

GroupFunction induce_dual(const CouplingSpace& cs, const GroupFunction& f) {
  require_on(f, *cs.gamma(), "dual input");
  GroupFunction g(cs.lambda());
  for (Index a = 0; a < cs.gamma()->order(); ++a)
    for (Index y : cs.p()) {
      const Index x = cs.gamma_act(a, y);
      g[cs.lambda_cell(x)] += f(a) * cs.weight(x);
    }
  return g;
}

FactorizationWitness induce_witness(const CouplingSpace& cs, const GroupFunction& phi,
                                    const FactorizationWitness& w) {
  require_on(phi, *cs.lambda(), "witness function");
  w.validate();
  const FiniteGroup& lam = *cs.lambda();
  std::vector<Index> slot(static_cast<size_t>(lam.order()), -1);
  for (size_t k = 0; k < w.acting.size(); ++k) slot[static_cast<size_t>(w.acting[k])] = static_cast<Index>(k);
  for (Index s : slot)
    if (s < 0) fail("uncertified input witness: it must act on all of " + lam.label());
  const double tuples = std::pow(static_cast<double>(w.acting.size()), w.d);
  const VerifyResult v =
      verify_factorization(phi, w, TupleSource::automatic(static_cast<Index>(std::min(tuples, 1e9)), 200000, 0), 1e-10);
  if (!v.certified) fail("uncertified input witness: residual " + std::to_string(v.residual));

  const Index np = static_cast<Index>(cs.p().size());
  const int d = w.d;
  FactorizationWitness out;
  out.d = d;
  out.dims.assign(static_cast<size_t>(d + 1), 1);
  for (int j = 1; j < d; ++j) out.dims[static_cast<size_t>(j)] = np * w.dims[static_cast<size_t>(j)];
  out.xi.resize(static_cast<size_t>(d));
  for (Index a = 0; a < cs.gamma()->order(); ++a) {
    out.acting.push_back(a);
    // For z in p: gamma . z = lambda_{s^{-1}}(tau) with tau in p.
    std::vector<Index> s_of(static_cast<size_t>(np)), tau_of(static_cast<size_t>(np));
    std::vector<double> root_w(static_cast<size_t>(np));
    for (Index k = 0; k < np; ++k) {
      const Index x = cs.gamma_act(a, cs.p()[static_cast<size_t>(k)]);
      const Index s = cs.lambda_cell(x);
      s_of[static_cast<size_t>(k)] = slot[static_cast<size_t>(s)];
      tau_of[static_cast<size_t>(k)] = cs.p_position(cs.lambda_act(s, x));
      root_w[static_cast<size_t>(k)] = std::sqrt(cs.weight(x));
    }
    for (int j = 1; j <= d; ++j) {
      const Matrix* blocks = w.xi[static_cast<size_t>(j - 1)].data();
      const Index r = w.dims[static_cast<size_t>(j - 1)], c = w.dims[static_cast<size_t>(j)];
      Matrix m = Matrix::Zero(out.dims[static_cast<size_t>(j - 1)], out.dims[static_cast<size_t>(j)]);
      for (Index k = 0; k < np; ++k) {
        const Matrix& b = blocks[s_of[static_cast<size_t>(k)]];
        const Index t = tau_of[static_cast<size_t>(k)];
        if (j == 1 && j == d) {
          m += root_w[static_cast<size_t>(k)] * b;
        } else if (j == 1) {
          m.block(0, k * c, r, c) = root_w[static_cast<size_t>(k)] * b;
        } else if (j == d) {
          m.block(t * r, 0, r, c) += root_w[static_cast<size_t>(k)] * b;
        } else {
          m.block(t * r, k * c, r, c) = b;
        }
      }
      out.xi[static_cast<size_t>(j - 1)].push_back(std::move(m));
    }
  }
  return out;
}

namespace {

struct KoopmanParts {
  Matrix f;
  std::vector<Index> orbit_of;
  Index orbits = 0;
};

KoopmanParts build_f(const CouplingSpace& cs) {
  const FixedAlgebra fa = fixed_algebra(cs);
  KoopmanParts k;
  k.orbits = static_cast<Index>(fa.orbits.size());
  k.orbit_of.assign(static_cast<size_t>(cs.size()), -1);
  for (Index o = 0; o < k.orbits; ++o)
    for (Index x : fa.orbits[static_cast<size_t>(o)]) k.orbit_of[static_cast<size_t>(x)] = o;
  const Index ng = cs.gamma()->order();
  k.f = Matrix::Zero(cs.size(), ng * k.orbits);
  for (Index x = 0; x < cs.size(); ++x) {
    const Index o = k.orbit_of[static_cast<size_t>(x)];
    const double tau = fa.tau[static_cast<size_t>(o)];
    if (tau <= 0) fail("fixed algebra has a null orbit");
    k.f(x, cs.gamma_cell(x) * k.orbits + o) = std::sqrt(cs.weight(x) / tau);
  }
  return k;
}

Matrix koopman_unitary(const CouplingSpace& cs, Index a) {
  Matrix u = Matrix::Zero(cs.size(), cs.size());
  for (Index x = 0; x < cs.size(); ++x) u(cs.gamma_act(a, x), x) = 1.0;
  return u;
}

}  // namespace

KoopmanReport koopman_check(const CouplingSpace& cs) {
  const KoopmanParts k = build_f(cs);
  const FiniteGroup& g = *cs.gamma();
  KoopmanReport r;
  r.orbits = k.orbits;
  const Matrix ff = k.f.adjoint() * k.f;
  r.unitarity_defect = operator_norm(ff - Matrix::Identity(ff.rows(), ff.cols()));
  const Matrix ffs = k.f * k.f.adjoint();
  r.coisometry_defect = operator_norm(ffs - Matrix::Identity(ffs.rows(), ffs.cols()));
  const Index cols = g.order() * k.orbits;
  for (Index a = 0; a < g.order(); ++a) {
    // lambda(a) (x) 1 sends the basis vector (h, O) to (a h, O).
    Matrix amp = Matrix::Zero(cols, cols);
    for (Index h = 0; h < g.order(); ++h)
      for (Index o = 0; o < k.orbits; ++o) amp(g.mul(a, h) * k.orbits + o, h * k.orbits + o) = 1.0;
    r.intertwining_defect =
        std::max(r.intertwining_defect, operator_norm(koopman_unitary(cs, a) * k.f - k.f * amp));
  }
  return r;
}

KoopmanReport koopman_check(const CouplingSpace& cs, const GroupFunction& phi,
                            const CoefficientRealization& realization) {
  require_on(phi, *cs.lambda(), "Koopman function");
  require(realization.u.size() == cs.lambda()->order() && realization.v.size() == cs.lambda()->order(),
          "realization vectors do not match the group");
  KoopmanReport r = koopman_check(cs);
  // xi^ = sum_s u(s) 1_{lambda_{s^{-1}}(p)}, in the orthonormal coordinates
  // sqrt(w(x)) f(x) of L2(points, w).
  Vector xi(cs.size()), eta(cs.size());
  for (Index x = 0; x < cs.size(); ++x) {
    const double root = std::sqrt(cs.weight(x));
    xi(x) = root * realization.u(cs.lambda_cell(x));
    eta(x) = root * realization.v(cs.lambda_cell(x));
  }
  const GroupFunction hat = induce(cs, phi);
  for (Index a = 0; a < cs.gamma()->order(); ++a) {
    const Complex c = eta.dot(koopman_unitary(cs, a) * xi);
    r.coefficient_residual = std::max(r.coefficient_residual, std::abs(c - hat(a)));
  }
  r.transported_norm = xi.norm() * eta.norm();
  r.norm_defect = std::abs(r.transported_norm - realization.norm_product());
  return r;
}

GroupFunction lattice_induce(const Embedding& e, const std::vector<Index>& omega,
                             const GroupFunction& phi) {
  const FiniteGroup& g = *e.ambient;
  require_on(phi, *e.sub, "lattice input");
  require(!omega.empty(), "empty transversal");
  // g = omega(g) gamma(g)
  std::vector<Index> gamma_of(static_cast<size_t>(g.order()), -1);
  for (Index w : omega) {
    if (w < 0 || w >= g.order()) fail("not a transversal: unknown element");
    for (Index a = 0; a < e.sub->order(); ++a) {
      Index& slot = gamma_of[static_cast<size_t>(g.mul(w, e.map[static_cast<size_t>(a)]))];
      if (slot >= 0) fail("not a transversal: cosets overlap");
      slot = a;
    }
  }
  for (Index a : gamma_of)
    if (a < 0) fail("not a transversal: cosets do not cover the group");
  const double scale = 1.0 / static_cast<double>(omega.size());
  return GroupFunction::generate(e.ambient, [&](Index x) {
    Complex s = 0;
    for (Index w : omega) s += phi(gamma_of[static_cast<size_t>(g.mul(x, w))]);
    return scale * s;
  });
}

}  // namespace mdmult
