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

#include "mdmult/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Cholesky>

namespace mdmult {

FejerTerm fejer(Index n, WindowPtr window) {
  require(n >= 1, "Fejer index must be positive");
  require(window && window->halfwidth() >= n, "window too small for the Fejer kernel");
  FejerTerm f{n, GroupFunction(window), Vector::Zero(window->size()), 0, 0};
  const double nn = static_cast<double>(n);
  for (Index x = 0; x < window->size(); ++x) {
    const Index m = std::abs(window->value(x));
    f.phi[x] = m < n ? static_cast<double>(n - m) / nn : 0.0;
  }
  const double scale = 1.0 / std::sqrt(nn);
  for (Index k = 0; k < n; ++k) f.u(*window->index_of(k)) = scale;
  f.u_norm_sq = static_cast<double>(n) / nn;
  // <lambda(m) u, u> = sum_z u(z - m) conj(u(z)); the support is {0..n-1}.
  for (Index x = 0; x < window->size(); ++x) {
    const Index m = window->value(x);
    Complex s = 0;
    for (Index z = 0; z < n; ++z)
      if (z - m >= 0 && z - m < n) s += f.u(*window->index_of(z - m)) * std::conj(f.u(*window->index_of(z)));
    f.realization_residual = std::max(f.realization_residual, std::abs(s - f.phi(x)));
  }
  return f;
}

std::pair<GroupFunction, GroupFunction> radial_multipliers(BallPtr ball, int n) {
  require(ball != nullptr, "missing ball");
  require(n >= 0 && n <= ball->radius(), "n exceeds the ball radius");
  auto chi = GroupFunction::generate(ball, [&](Index x) { return ball->length(x) == n ? 1.0 : 0.0; });
  auto phi = GroupFunction::generate(ball, [&](Index x) {
    const int l = ball->length(x);
    return l <= n && (n - l) % 2 == 0 ? 1.0 : 0.0;
  });
  return {std::move(chi), std::move(phi)};
}

namespace {

using RealMatrix = Eigen::MatrixXd;

// Orthonormal coordinates for span{w_y : y in ys}: the columns of C = L^T
// where L L^T is the Gram matrix.
struct RaySpace {
  std::vector<Index> ys;
  std::map<Index, Index> pos;
  RealMatrix c;  // upper triangular, columns are coordinates of w_y
};

}  // namespace

TreeFamily tree_witness(BallPtr ball, int n, int d, int r) {
  require(ball != nullptr, "missing ball");
  require(n >= 0, "n must be nonnegative");
  require(d >= 2, "d must be at least 2");
  require(r >= 0, "acting radius must be nonnegative");
  if (r * d + n > ball->radius())
    fail("radius budget violated: r*d + n = " + std::to_string(r * d + n) + " > R = " +
         std::to_string(ball->radius()));

  auto [chi, phi] = radial_multipliers(ball, n);
  TreeFamily f{ball, n, d, r, std::move(chi), std::move(phi), {}, 0, 0, 0, {}};

  // Ray points gamma_z(k), k = 0..n, for every vertex a product can reach.
  const std::vector<Index> reach = ball->ball(d * r);
  std::map<Index, std::vector<Index>> ray;
  for (Index z : reach) {
    auto& pts = ray[z];
    for (int k = 0; k <= n; ++k) pts.push_back(ball->ray_point(z, k));
  }
  auto overlap = [&](Index a, Index b) {
    const auto& ra = ray.at(a);
    const auto& rb = ray.at(b);
    double s = 0;
    for (int k = 0; k <= n; ++k) s += ra[static_cast<size_t>(k)] == rb[static_cast<size_t>(k)];
    return s;
  };

  // H_j for j = 1..d-1 (index 0 and d unused).
  std::vector<RaySpace> h(static_cast<size_t>(d + 1));
  for (int j = 1; j < d; ++j) {
    RaySpace& s = h[static_cast<size_t>(j)];
    s.ys = ball->ball((d - j) * r);
    const Index m = static_cast<Index>(s.ys.size());
    for (Index i = 0; i < m; ++i) s.pos[s.ys[static_cast<size_t>(i)]] = i;
    RealMatrix gram(m, m);
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < m; ++b) gram(a, b) = overlap(s.ys[static_cast<size_t>(a)], s.ys[static_cast<size_t>(b)]);
    Eigen::LLT<RealMatrix> llt(gram);
    if (llt.info() != Eigen::Success) fail("ray vectors are linearly dependent");
    s.c = llt.matrixU();
  }

  // eta = sum_k delta_{a^{n-k}}
  std::vector<Index> eta;
  for (int k = 0; k <= n; ++k) eta.push_back(*ball->index_of(Word(static_cast<size_t>(n - k), 0)));

  FactorizationWitness& w = f.witness;
  w.d = d;
  w.acting = ball->ball(r);
  w.dims.assign(static_cast<size_t>(d + 1), 1);
  for (int j = 1; j < d; ++j) w.dims[static_cast<size_t>(j)] = static_cast<Index>(h[static_cast<size_t>(j)].ys.size());
  w.xi.resize(static_cast<size_t>(d));

  const RaySpace& h1 = h[1];
  const RaySpace& hl = h[static_cast<size_t>(d - 1)];
  for (Index x : w.acting) {
    // xi_d(x)(1) = w_x
    w.xi[static_cast<size_t>(d - 1)].push_back(hl.c.col(hl.pos.at(x)).cast<Complex>());

    // xi_j(x): w_y -> w_{xy}
    for (int j = 2; j < d; ++j) {
      const RaySpace& src = h[static_cast<size_t>(j)];
      const RaySpace& dst = h[static_cast<size_t>(j - 1)];
      RealMatrix target(dst.c.rows(), static_cast<Index>(src.ys.size()));
      for (size_t i = 0; i < src.ys.size(); ++i)
        target.col(static_cast<Index>(i)) = dst.c.col(dst.pos.at(ball->checked_product(x, src.ys[i])));
      // xi C_src = target, C_src upper triangular.
      const RealMatrix xi =
          src.c.transpose().triangularView<Eigen::Lower>().solve(target.transpose()).transpose();
      f.consistency_residual = std::max(f.consistency_residual, (xi * src.c - target).cwiseAbs().maxCoeff());
      w.xi[static_cast<size_t>(j - 1)].push_back(xi.cast<Complex>());
    }

    // xi_1(x): w_y -> #{k : gamma_{xy}(k) = a^{n-k}}
    Eigen::RowVectorXd fx(static_cast<Index>(h1.ys.size()));
    for (size_t i = 0; i < h1.ys.size(); ++i) {
      const auto& pts = ray.at(ball->checked_product(x, h1.ys[i]));
      double s = 0;
      for (int k = 0; k <= n; ++k) s += pts[static_cast<size_t>(k)] == eta[static_cast<size_t>(k)];
      fx(static_cast<Index>(i)) = s;
    }
    const Eigen::RowVectorXd xi1 =
        h1.c.transpose().triangularView<Eigen::Lower>().solve(fx.transpose()).transpose();
    w.xi[0].push_back(xi1.cast<Complex>());
  }

  const std::vector<double> sups = w.factor_sups();
  f.xi_1_sup = sups.front();
  f.xi_d_sup = sups.back();
  f.middle_sups.assign(sups.begin() + 1, sups.end() - 1);
  if (f.consistency_residual > 1e-10) fail("tree witness is not well defined");
  return f;
}

ChiCertificate chi_certificate(BallPtr ball, int n, int d, int r) {
  require(n >= 1, "chi certificate needs n >= 1");
  ChiCertificate c;
  for (int m : {n, n - 2}) {
    if (m < 0) continue;
    const TreeFamily f = tree_witness(ball, m, d, r);
    const VerifyResult v = verify_factorization(f.phi, f.witness);
    c.bound += v.bound;
    c.residual = std::max(c.residual, v.residual);
  }
  return c;
}

double haagerup_tail(Index n, double t) {
  require(t > 0, "t must be positive");
  const double q = std::exp(-t);
  const double nn = static_cast<double>(n);
  return 2 * std::pow(q, nn + 1) * (nn + 1 - nn * q) / ((1 - q) * (1 - q));
}

double haagerup_tail_summed(Index n, double t, Index k_max) {
  require(t > 0, "t must be positive");
  if (k_max <= n) return haagerup_tail(n, t);
  // Sum small terms first.
  double s = haagerup_tail(k_max, t);
  for (Index k = k_max; k > n; --k) s += 2.0 * static_cast<double>(k) * std::exp(-t * static_cast<double>(k));
  return s;
}

Index haagerup_cutoff(double t, double eps) {
  require(t > 0 && eps > 0, "t and eps must be positive");
  Index n = 0;
  while (haagerup_tail(n, t) > eps) {
    ++n;
    require(n < 100'000'000, "tail does not reach the requested level");
  }
  return n;
}

HaagerupFamily haagerup_family(BallPtr ball, int n, double t, Index k_max) {
  require(ball != nullptr, "missing ball");
  require(t > 0, "t must be positive");
  require(n >= 0 && n <= ball->radius(), "n exceeds the ball radius");
  HaagerupFamily h{GroupFunction::generate(ball, [&](Index x) { return std::exp(-t * ball->length(x)); }),
                   GroupFunction(ball), 0, 0};
  h.phi = GroupFunction::generate(ball, [&](Index x) {
    return ball->length(x) <= n ? h.rho(x) : Complex(0.0);
  });
  h.tail = haagerup_tail_summed(n, t, k_max);
  h.tail_closed = haagerup_tail(n, t);
  return h;
}

CoefficientWitness coefficient_witness(const GroupFunction& phi, int d, const SolveOptions& opts) {
  auto* g = dynamic_cast<const FiniteGroup*>(&phi.carrier());
  if (!g) fail("coefficient witness needs a finite group");
  const TraceMinResult b = b_norm_solve(phi, opts);
  CoefficientWitness cw;
  cw.b_value = b.value;
  cw.realization = coefficient_realization(*g, phi.values(), b.t);
  cw.witness = realization_witness(*g, cw.realization, d);
  const double tuples = std::pow(static_cast<double>(g->order()), d);
  cw.verify = verify_factorization(
      phi, cw.witness, TupleSource::automatic(static_cast<Index>(tuples), 200000, opts.seed));
  return cw;
}

NetReport make_net_report(std::string label, int d, std::vector<NetTerm> terms,
                          std::string window, double threshold) {
  NetReport rep{std::move(label), d, std::move(terms), 0, false, std::move(window), threshold};
  for (auto& t : rep.terms) {
    t.deviation = 0;
    for (const Complex& v : t.values) t.deviation = std::max(t.deviation, std::abs(v - 1.0));
    rep.constant_evidence = std::max(rep.constant_evidence, t.bound);
  }
  // The comparison allows for rounding in |phi - 1| (e.g. 1 - 152/160 is
  // 0.05 + 4e-17 in binary).
  rep.converged = !rep.terms.empty() &&
                  rep.terms.back().deviation <= threshold + 64 * std::numeric_limits<double>::epsilon();
  return rep;
}

NetReport fejer_net(Index n_max, Index window_half, double threshold, int d) {
  require(n_max >= 1 && window_half >= 0, "invalid Fejer net parameters");
  auto window = std::make_shared<IntegerWindow>(std::max(n_max, std::max<Index>(window_half, 1)));
  std::vector<NetTerm> terms;
  for (Index n = 1; n <= n_max; ++n) {
    const FejerTerm f = fejer(n, window);
    NetTerm t;
    t.parameter = static_cast<double>(n);
    t.bound = f.u_norm_sq;
    for (Index m = -window_half; m <= window_half; ++m) t.values.push_back(f.phi(*window->index_of(m)));
    terms.push_back(std::move(t));
  }
  return make_net_report("fejer", d, std::move(terms),
                         "[-" + std::to_string(window_half) + ", " + std::to_string(window_half) + "]",
                         threshold);
}

NetReport haagerup_net(int generators, const std::vector<double>& ts, int window_radius,
                       double threshold, int d) {
  const FreeBall ball(generators, window_radius);
  std::vector<NetTerm> terms;
  for (double t : ts) {
    const Index n = haagerup_cutoff(t, t);
    NetTerm term;
    term.parameter = t;
    term.bound = 1.0 + haagerup_tail(n, t);
    for (Index x = 0; x < ball.size(); ++x)
      term.values.push_back(ball.length(x) <= n ? std::exp(-t * ball.length(x)) : 0.0);
    terms.push_back(std::move(term));
  }
  return make_net_report("haagerup", d, std::move(terms),
                         "free ball radius " + std::to_string(window_radius), threshold);
}

NetReport tree_phi_net(int generators, int n_max, int window_radius, double threshold, int d) {
  require(n_max >= 1 && window_radius >= 0, "invalid tree net parameters");
  const int radius = std::max(d + n_max, window_radius);
  auto ball = std::make_shared<const FreeBall>(generators, radius);
  const std::vector<Index> window = ball->ball(window_radius);
  std::vector<NetTerm> terms;
  for (int n = 1; n <= n_max; ++n) {
    const TreeFamily f = tree_witness(ball, n, d);
    NetTerm term;
    term.parameter = n;
    term.bound = f.witness.bound() / (n + 1);
    for (Index x : window) term.values.push_back(f.phi(x) / static_cast<double>(n + 1));
    terms.push_back(std::move(term));
  }
  return make_net_report("tree phi_n normalized", d, std::move(terms),
                         "free ball radius " + std::to_string(window_radius), threshold);
}

}  // namespace mdmult
