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

#include "mdmult/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/SVD>

#include "mdmult/random.hpp"

namespace mdmult {

namespace {

const FiniteGroup& finite_group_of(const GroupFunction& phi, const char* what) {
  auto* g = dynamic_cast<const FiniteGroup*>(&phi.carrier());
  if (!g) fail(std::string(what) + " needs a finite group, got " + phi.carrier().label());
  return *g;
}

Index window_index(const IntegerWindow& w, Index m) { return *w.index_of(m); }

std::vector<Index> centered_window(const IntegerWindow& w, Index half) {
  std::vector<Index> out;
  for (Index m = -half; m <= half; ++m) out.push_back(window_index(w, m));
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

void NormReport::check() const {
  if (!lower || !upper) return;
  if (lower->value > upper->value + 2 * tolerance * std::max(1.0, upper->value))
    throw Error(ErrorKind::kInconsistency,
                "norm interval inverted: lower " + std::to_string(lower->value) + " (" +
                    lower->provenance + ") exceeds upper " + std::to_string(upper->value) +
                    " (" + upper->provenance + ")");
}

void FactorizationWitness::validate() const {
  require(d >= 2, "witness needs d >= 2");
  require(static_cast<int>(dims.size()) == d + 1, "witness needs d + 1 dimensions");
  require(dims.front() == 1 && dims.back() == 1, "witness end spaces must be one-dimensional");
  for (Index n : dims) require(n >= 1, "witness dimensions must be positive");
  require(!acting.empty(), "witness acting set is empty");
  require(static_cast<int>(xi.size()) == d, "witness needs d operator families");
  for (int i = 1; i <= d; ++i) {
    const auto& fam = xi[static_cast<size_t>(i - 1)];
    require(fam.size() == acting.size(), "witness operator family does not match acting set");
    for (const Matrix& m : fam) {
      require(m.rows() == dims[static_cast<size_t>(i - 1)] && m.cols() == dims[static_cast<size_t>(i)],
              "witness operator has wrong shape");
      require_finite(m, "witness operator");
    }
  }
}

std::vector<double> FactorizationWitness::factor_sups() const {
  std::vector<double> s;
  for (const auto& fam : xi) {
    double m = 0;
    for (const Matrix& x : fam) m = std::max(m, operator_norm(x));
    s.push_back(m);
  }
  return s;
}

double FactorizationWitness::bound() const {
  double b = 1;
  for (double s : factor_sups()) b *= s;
  return b;
}

VerifyResult verify_factorization(const GroupFunction& phi, const FactorizationWitness& w,
                                  const TupleSource& tuples, double tol) {
  w.validate();
  const Carrier& c = phi.carrier();
  for (Index x : w.acting) require(x >= 0 && x < c.size(), "witness acting element outside carrier");
  VerifyResult r;
  r.bound = w.bound();
  const size_t a = w.acting.size();

  if (tuples.exhaustive) {
    double total = 1;
    for (int i = 0; i < w.d; ++i) total *= static_cast<double>(a);
    require(total <= 5e7, "too many tuples for exhaustive verification; sample instead");
    std::function<void(int, Index, const Matrix&)> rec = [&](int i, Index prefix, const Matrix& row) {
      for (size_t k = 0; k < a; ++k) {
        const Index elem = c.checked_product(prefix, w.acting[k]);
        const Matrix next = row * w.at(i, k);
        if (i == w.d) {
          r.residual = std::max(r.residual, std::abs(phi(elem) - next(0, 0)));
          ++r.tuples;
        } else {
          rec(i + 1, elem, next);
        }
      }
    };
    rec(1, c.identity(), Matrix::Identity(1, 1));
  } else {
    Rng rng(tuples.seed);
    for (Index s = 0; s < tuples.samples; ++s) {
      Index elem = c.identity();
      Matrix row = Matrix::Identity(1, 1);
      for (int i = 1; i <= w.d; ++i) {
        const size_t k = static_cast<size_t>(rng.below(static_cast<Index>(a)));
        elem = c.checked_product(elem, w.acting[k]);
        row = row * w.at(i, k);
      }
      r.residual = std::max(r.residual, std::abs(phi(elem) - row(0, 0)));
      ++r.tuples;
    }
  }
  r.certified = r.residual <= tol;
  return r;
}

std::vector<Index> m2_index_set(const Carrier& c) {
  if (auto* b = dynamic_cast<const FreeBall*>(&c)) return b->ball(b->radius() / 2);
  if (auto* w = dynamic_cast<const IntegerWindow*>(&c)) return centered_window(*w, w->halfwidth() / 2);
  std::vector<Index> all(static_cast<size_t>(c.size()));
  for (Index x = 0; x < c.size(); ++x) all[static_cast<size_t>(x)] = x;
  return all;
}

std::vector<Index> acting_set(const Carrier& c, int d) {
  require(d >= 1, "d must be positive");
  if (auto* b = dynamic_cast<const FreeBall*>(&c)) return b->ball(b->radius() / d);
  if (auto* w = dynamic_cast<const IntegerWindow*>(&c)) return centered_window(*w, w->halfwidth() / d);
  return m2_index_set(c);
}

Matrix herz_schur_matrix(const GroupFunction& phi, const std::vector<Index>& index) {
  const Carrier& c = phi.carrier();
  const Index n = static_cast<Index>(index.size());
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      auto xy = c.product(index[static_cast<size_t>(i)], index[static_cast<size_t>(j)]);
      if (!xy)
        fail("function undefined on a required product: " +
             c.element_name(index[static_cast<size_t>(i)]) + " * " +
             c.element_name(index[static_cast<size_t>(j)]));
      m(i, j) = phi(*xy);
    }
  return m;
}

NormReport m2_norm(const GroupFunction& phi, const SolveOptions& opts) {
  return m2_norm(phi, m2_index_set(phi.carrier()), opts);
}

NormReport m2_norm(const GroupFunction& phi, const std::vector<Index>& index,
                   const SolveOptions& opts) {
  opts.validate();
  require(!index.empty(), "empty index set");
  const Carrier& c = phi.carrier();
  const bool whole = c.is_group() && static_cast<Index>(index.size()) == c.size();
  NormReport rep;
  rep.tolerance = opts.tolerance;
  const Matrix m = herz_schur_matrix(phi, index);
  if (m.isZero(0.0)) {
    rep.lower = Bound{0.0, "zero function"};
    if (whole) rep.upper = Bound{0.0, "zero function"};
    rep.notes = "zero function";
    return rep;
  }
  const SchurResult s = schur_norm(m, opts);
  if (whole) {
    rep.lower = Bound{s.lower, "schur dual certificate"};
    rep.upper = Bound{s.upper, "schur factorization certificate"};
    rep.notes = "Schur norm of [phi(xy)] over all of " + c.label() + ", " +
                std::to_string(s.iterations) + " iterations";
  } else {
    rep.lower = Bound{s.lower, "schur dual certificate on a restriction"};
    rep.notes = "restriction to " + std::to_string(index.size()) + " elements of " + c.label() +
                "; certifies a lower bound only";
  }
  rep.check();
  return rep;
}

TraceMinResult b_norm_solve(const GroupFunction& phi, const SolveOptions& opts) {
  return trace_min(finite_group_of(phi, "B norm"), phi.values(), opts);
}

double b_norm(const GroupFunction& phi, const SolveOptions& opts) {
  return b_norm_solve(phi, opts).value;
}

CoefficientRealization coefficient_realization(const FiniteGroup& g, const Vector& phi,
                                               const Matrix& t) {
  const Index n = g.order();
  // S = E(T)^T lies in the left group algebra; S = AB with A = U S^{1/2} V*,
  // B = V S^{1/2} V* both in the algebra, and u = sqrt(n) A delta_e,
  // v = sqrt(n) B* delta_e give v* lambda(x) u = Tr(S lambda(x)) = phi(x).
  const Matrix s = group_algebra_projection(g, t).transpose();
  Eigen::BDCSVD<Matrix> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector root = svd.singularValues().cwiseSqrt();
  const Matrix a = svd.matrixU() * root.asDiagonal() * svd.matrixV().adjoint();
  const Matrix b = svd.matrixV() * root.asDiagonal() * svd.matrixV().adjoint();
  const double sn = std::sqrt(static_cast<double>(n));
  CoefficientRealization r;
  r.u = sn * a.col(g.identity());
  r.v = sn * b.adjoint().col(g.identity());
  for (Index x = 0; x < n; ++x) {
    const Index xinv = g.inverse(x);
    Complex val = 0;
    for (Index z = 0; z < n; ++z) val += std::conj(r.v(z)) * r.u(g.mul(xinv, z));
    r.residual = std::max(r.residual, std::abs(val - phi(x)));
  }
  return r;
}

FactorizationWitness realization_witness(const FiniteGroup& g, const CoefficientRealization& r,
                                         int d) {
  require(d >= 2, "witness needs d >= 2");
  const Index n = g.order();
  FactorizationWitness w;
  w.d = d;
  w.dims.assign(static_cast<size_t>(d + 1), n);
  w.dims.front() = w.dims.back() = 1;
  for (Index x = 0; x < n; ++x) w.acting.push_back(x);
  w.xi.resize(static_cast<size_t>(d));
  for (Index x = 0; x < n; ++x) {
    const Matrix l = left_regular(g, x);
    w.xi[0].push_back(r.v.adjoint() * l);
    for (int i = 2; i < d; ++i) w.xi[static_cast<size_t>(i - 1)].push_back(l);
    w.xi[static_cast<size_t>(d - 1)].push_back(l * r.u);
  }
  return w;
}

namespace {

// Augmented Lagrangian on (|u|^2 + |v|^2)/2 subject to v* lambda(x) u = phi(x),
// alternating ridge solves in u and v.
std::pair<double, double> nonconvex_a_norm(const FiniteGroup& g, const Vector& phi,
                                           std::uint64_t seed) {
  const Index n = g.order();
  constexpr double rho = 10.0;
  Rng rng(seed);
  Vector u = rng.complex_vector(n) * std::sqrt(2.0);
  Vector v = rng.complex_vector(n) * std::sqrt(2.0);
  Vector y = Vector::Zero(n);
  Vector c = Vector::Zero(n);
  const Matrix id = Matrix::Identity(n, n);
  Matrix k(n, n), j(n, n);
  for (int outer = 0; outer < 200; ++outer) {
    for (int inner = 0; inner < 20; ++inner) {
      // K(x, z) = (v* lambda(x))_z = conj(v(xz))
      for (Index x = 0; x < n; ++x)
        for (Index z = 0; z < n; ++z) k(x, z) = std::conj(v(g.mul(x, z)));
      u = (id + rho * k.adjoint() * k).ldlt().solve(k.adjoint() * (rho * phi - y));
      // J(x, i) = conj((lambda(x) u)_i) = conj(u(x^{-1} i))
      for (Index x = 0; x < n; ++x) {
        const Index xinv = g.inverse(x);
        for (Index i = 0; i < n; ++i) j(x, i) = std::conj(u(g.mul(xinv, i)));
      }
      v = (id + rho * j.adjoint() * j).ldlt().solve(j.adjoint() * (rho * phi.conjugate() - y.conjugate()));
    }
    for (Index x = 0; x < n; ++x) k.row(x) = v.adjoint() * left_regular(g, x);
    c = k * u - phi;
    y += rho * c;
    if (c.norm() < 1e-12 * std::max(1.0, phi.norm())) break;
  }
  return {u.norm() * v.norm(), c.cwiseAbs().maxCoeff()};
}

}  // namespace

ANormReport a_norm_report(const GroupFunction& phi, const SolveOptions& opts) {
  const FiniteGroup& g = finite_group_of(phi, "A norm");
  const TraceMinResult b = trace_min(g, phi.values(), opts);
  ANormReport r;
  r.value = b.value;
  if (phi.is_zero()) {
    r.realization.u = r.realization.v = Vector::Zero(g.order());
    return r;
  }
  r.realization = coefficient_realization(g, phi.values(), b.t);

  const double feas = 1e-8 * std::max(1.0, phi.sup_norm());
  r.nonconvex = std::numeric_limits<double>::infinity();
  r.nonconvex_residual = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < 3; ++s) {
    auto [val, res] = nonconvex_a_norm(g, phi.values(), opts.seed * 3 + s);
    if (res <= feas && val < r.nonconvex) {
      r.nonconvex = val;
      r.nonconvex_residual = res;
    } else if (!std::isfinite(r.nonconvex) && res < r.nonconvex_residual) {
      r.nonconvex_residual = res;
    }
  }
  r.gap = std::isfinite(r.nonconvex) ? (r.nonconvex - r.value) / r.value
                                     : std::numeric_limits<double>::infinity();
  if (r.gap < -1e-4)
    throw Error(ErrorKind::kInconsistency,
                "A norm cross-check beat the trace-norm value: " + std::to_string(r.nonconvex) +
                    " < " + std::to_string(r.value));
  return r;
}

double a_norm(const GroupFunction& phi, const SolveOptions& opts) {
  return a_norm_report(phi, opts).value;
}

NormReport md_sandwich(const GroupFunction& phi, int d,
                       const std::vector<FactorizationWitness>& witnesses,
                       const SolveOptions& opts) {
  require(d >= 2, "d must be at least 2");
  NormReport rep = m2_norm(phi, opts);
  rep.upper.reset();
  if (phi.is_zero()) {
    rep.upper = Bound{0.0, "zero function"};
    return rep;
  }
  auto offer = [&](double value, const std::string& provenance) {
    if (!rep.upper || value < rep.upper->value) rep.upper = Bound{value, provenance};
  };
  if (auto* g = dynamic_cast<const FiniteGroup*>(&phi.carrier())) {
    const TraceMinResult b = trace_min(*g, phi.values(), opts);
    const FactorizationWitness w =
        realization_witness(*g, coefficient_realization(*g, phi.values(), b.t), d);
    const double tuples = std::pow(static_cast<double>(g->order()), d);
    const VerifyResult v = verify_factorization(
        phi, w, TupleSource::automatic(static_cast<Index>(tuples), 200000, opts.seed));
    if (v.certified) offer(v.bound, "coefficient witness (B norm " + fmt(b.value) + ")");
  }
  for (size_t i = 0; i < witnesses.size(); ++i) {
    const auto& w = witnesses[i];
    require(w.d == d, "witness degree does not match d");
    double tuples = std::pow(static_cast<double>(w.acting.size()), d);
    const VerifyResult v = verify_factorization(
        phi, w, TupleSource::automatic(static_cast<Index>(std::min(tuples, 1e9)), 200000, opts.seed));
    if (v.certified) offer(v.bound, "supplied witness " + std::to_string(i));
  }
  rep.notes += "; d = " + std::to_string(d);
  rep.check();
  return rep;
}

FactorizationCandidate search_factorization(const GroupFunction& phi, int d,
                                            const std::vector<Index>& dims,
                                            const SearchOptions& opts) {
  require(d >= 2, "d must be at least 2");
  require(static_cast<int>(dims.size()) == d + 1, "dims must have d + 1 entries");
  require(dims.front() == 1 && dims.back() == 1, "end dimensions must be 1");
  const Carrier& c = phi.carrier();
  const std::vector<Index> act = acting_set(c, d);
  const size_t a = act.size();
  require(std::pow(static_cast<double>(a), d) <= 1e6, "acting set too large for the search");

  // All tuples of acting indices of a given length, with their products.
  auto tuples_of = [&](int len) {
    std::vector<std::vector<size_t>> out{{}};
    for (int l = 0; l < len; ++l) {
      std::vector<std::vector<size_t>> next;
      for (const auto& t : out)
        for (size_t k = 0; k < a; ++k) {
          next.push_back(t);
          next.back().push_back(k);
        }
      out = std::move(next);
    }
    return out;
  };
  auto product_of = [&](const std::vector<size_t>& t) {
    Index e = c.identity();
    for (size_t k : t) e = c.checked_product(e, act[k]);
    return e;
  };

  FactorizationCandidate best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Rng rng(opts.seed * 1000003ULL + static_cast<std::uint64_t>(restart));
    FactorizationWitness w;
    w.d = d;
    w.dims = dims;
    w.acting = act;
    w.xi.resize(static_cast<size_t>(d));
    for (int i = 1; i <= d; ++i) {
      const Index r = dims[static_cast<size_t>(i - 1)], cc = dims[static_cast<size_t>(i)];
      for (size_t k = 0; k < a; ++k)
        w.xi[static_cast<size_t>(i - 1)].push_back(rng.complex_matrix(r, cc) /
                                                   std::sqrt(static_cast<double>(r * cc)));
    }

    double residual = verify_factorization(phi, w).residual;
    for (int sweep = 0; sweep < opts.sweeps && residual > opts.target_residual; ++sweep) {
      for (int i = 1; i <= d; ++i) {
        const Index ra = dims[static_cast<size_t>(i - 1)], rb = dims[static_cast<size_t>(i)];
        // Prefix rows xi_1...xi_{i-1} and suffix columns xi_{i+1}...xi_d.
        std::vector<std::pair<Index, Matrix>> pre, suf;
        for (const auto& t : tuples_of(i - 1)) {
          Matrix row = Matrix::Identity(1, 1);
          for (size_t l = 0; l < t.size(); ++l) row = row * w.at(static_cast<int>(l) + 1, t[l]);
          pre.emplace_back(product_of(t), row);
        }
        for (const auto& t : tuples_of(d - i)) {
          Matrix col = Matrix::Identity(1, 1);
          for (size_t l = t.size(); l-- > 0;) col = w.at(i + 1 + static_cast<int>(l), t[l]) * col;
          suf.emplace_back(product_of(t), col);
        }
        for (size_t k = 0; k < a; ++k) {
          Matrix design(static_cast<Index>(pre.size() * suf.size()), ra * rb);
          Vector rhs(design.rows());
          Index e = 0;
          for (const auto& [pe, row] : pre) {
            const Index left = c.checked_product(pe, act[k]);
            for (const auto& [se, col] : suf) {
              for (Index q = 0; q < rb; ++q)
                for (Index p = 0; p < ra; ++p) design(e, p + q * ra) = row(0, p) * col(q, 0);
              rhs(e++) = phi(c.checked_product(left, se));
            }
          }
          const Vector x = design.completeOrthogonalDecomposition().solve(rhs);
          w.xi[static_cast<size_t>(i - 1)][k] = Eigen::Map<const Matrix>(x.data(), ra, rb);
        }
      }
      // The bound is invariant under xi_i -> c_i xi_i with prod c_i = 1;
      // equalize the sup norms.
      const std::vector<double> sups = w.factor_sups();
      if (std::all_of(sups.begin(), sups.end(), [](double s) { return s > 0; })) {
        double logmean = 0;
        for (double s : sups) logmean += std::log(s) / d;
        for (int i = 1; i <= d; ++i)
          for (auto& m : w.xi[static_cast<size_t>(i - 1)]) m *= std::exp(logmean) / sups[static_cast<size_t>(i - 1)];
      }
      residual = verify_factorization(phi, w).residual;
    }
    const double bound = w.bound();
    if (residual < best.residual || (residual == best.residual && bound < best.bound)) {
      best.residual = residual;
      best.bound = bound;
      best.witness = std::move(w);
    }
  }
  return best;
}

Complex pairing(const GroupFunction& phi, const GroupFunction& psi) {
  if (!same_carrier(phi, psi))
    fail("carrier mismatch: " + phi.carrier().label() + " vs " + psi.carrier().label());
  return psi.values().cwiseProduct(phi.values()).sum();
}

Matrix pd_kernel(const GroupFunction& phi, const std::vector<Index>& s) {
  const Carrier& c = phi.carrier();
  const Index n = static_cast<Index>(s.size());
  Matrix k(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      auto q = c.left_quotient(s[static_cast<size_t>(j)], s[static_cast<size_t>(i)]);
      if (!q) fail("undefined product in positive-definiteness kernel");
      k(i, j) = phi(*q);
    }
  return k;
}

bool is_pd_function(const GroupFunction& phi, const std::vector<Index>& s, double tol) {
  const Matrix k = pd_kernel(phi, s);
  if ((k - k.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, k.cwiseAbs().maxCoeff()))
    return false;
  return is_psd(k, tol);
}

}  // namespace mdmult
