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

#include "mdmult/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mdmult {

namespace {

// Weights are kept away from zero so a coordinate that the multiplicative
// update has shrunk can still recover; the loss in the dual value is of the
// order of the floor.
constexpr double kWeightFloor = 1e-13;

double max_row_norm(const Matrix& a) {
  return a.rows() && a.cols() ? a.rowwise().norm().maxCoeff() : 0.0;
}

// The rows and columns of M that are not identically zero. Zero lines get a
// zero factor row and play no role in either certificate.
struct Support {
  std::vector<Index> rows;
  std::vector<Index> cols;
  Matrix core;
};

Support support_of(const Matrix& m) {
  Support s;
  for (Index i = 0; i < m.rows(); ++i)
    if (!m.row(i).isZero(0.0)) s.rows.push_back(i);
  for (Index j = 0; j < m.cols(); ++j)
    if (!m.col(j).isZero(0.0)) s.cols.push_back(j);
  s.core = m(s.rows, s.cols);
  return s;
}

// Balances a candidate factorization and returns max|p|*max|q| + max|E_i|,
// where E = M - P Q*. The same number is attained exactly by the repaired
// factorization built in `repair`.
double candidate_bound(const Matrix& m, const Matrix& p, const Matrix& q) {
  const Matrix e = m - p * q.adjoint();
  return factorization_bound(p, q) + max_row_norm(e);
}

// Appends residual columns so that P Q* = M exactly: with s = max|p|max|q|
// and e = max_i |E_i|, P' = [P, E/sqrt(e)], Q' = [Q, sqrt(e) I] have all row
// norms squared at most s + e after balancing.
void repair(const Matrix& m, Matrix& p, Matrix& q) {
  const double sp = max_row_norm(p);
  const double sq = max_row_norm(q);
  if (sp > 0 && sq > 0) {
    p *= std::sqrt(sq / sp);
    q *= std::sqrt(sp / sq);
  }
  const Matrix e = m - p * q.adjoint();
  const double en = max_row_norm(e);
  if (en == 0.0) return;
  Matrix p2(p.rows(), p.cols() + m.cols());
  Matrix q2(q.rows(), q.cols() + m.cols());
  p2 << p, e / std::sqrt(en);
  q2 << q, Matrix::Identity(m.cols(), m.cols()) * std::sqrt(en);
  p = std::move(p2);
  q = std::move(q2);
}

// Rows of P built from tiny weights carry rounding noise; the minimum-norm
// rows solving P Q* = M for fixed Q (and then Q for fixed P) are exact and no
// longer. Keeps the best of the raw and polished candidates.
void consider(const Matrix& m, Matrix p, Matrix q, SchurResult& r) {
  auto offer = [&](const Matrix& pp, const Matrix& qq) {
    const double cand = candidate_bound(m, pp, qq);
    if (cand < r.upper) {
      r.upper = cand;
      r.p = pp;
      r.q = qq;
    }
  };
  offer(p, q);
  // p_i = M_i (Q*)^+ ; q_j from conj(M_j) = conj(P) q_j.
  const Matrix p2 = q.completeOrthogonalDecomposition().solve(m.adjoint()).adjoint();
  offer(p2, q);
  const Matrix q2 = p2.completeOrthogonalDecomposition().solve(m).adjoint();
  offer(p2, q2);
}

SchurResult lift(const Support& s, const Matrix& m, SchurResult r) {
  Matrix p = Matrix::Zero(m.rows(), r.p.cols());
  Matrix q = Matrix::Zero(m.cols(), r.q.cols());
  RealVector u = RealVector::Zero(m.rows());
  RealVector v = RealVector::Zero(m.cols());
  for (size_t i = 0; i < s.rows.size(); ++i) {
    p.row(s.rows[i]) = r.p.row(static_cast<Index>(i));
    u(s.rows[i]) = r.u(static_cast<Index>(i));
  }
  for (size_t j = 0; j < s.cols.size(); ++j) {
    q.row(s.cols[j]) = r.q.row(static_cast<Index>(j));
    v(s.cols[j]) = r.v(static_cast<Index>(j));
  }
  r.p = std::move(p);
  r.q = std::move(q);
  r.u = std::move(u);
  r.v = std::move(v);
  return r;
}

// Best single entry: the dual pair (e_i, e_j) certifies |M_ij|.
void entry_bound(const Matrix& m, double& value, RealVector& u, RealVector& v) {
  Index i = 0, j = 0;
  value = m.cwiseAbs().maxCoeff(&i, &j);
  u = RealVector::Unit(m.rows(), i);
  v = RealVector::Unit(m.cols(), j);
}

std::optional<SchurResult> trivial_case(const Matrix& m, const SolveOptions& opts,
                                        const char* engine) {
  opts.validate();
  require_finite(m, "Schur input");
  require(m.rows() > 0 && m.cols() > 0, "Schur input must be nonempty");
  SchurResult r;
  r.engine = engine;
  if (opts.inject_schur_fault) {
    r.value = r.lower = r.upper = m.cwiseAbs().maxCoeff();
    r.engine = "fault";
    r.certified = true;
    return r;
  }
  if (m.isZero(0.0)) {
    r.p = Matrix::Zero(m.rows(), 1);
    r.q = Matrix::Zero(m.cols(), 1);
    r.u = RealVector::Constant(m.rows(), 1.0 / m.rows());
    r.v = RealVector::Constant(m.cols(), 1.0 / m.cols());
    r.certified = true;
    return r;
  }
  return std::nullopt;
}

void finish(SchurResult& r, const Matrix& core, const SolveOptions& opts) {
  repair(core, r.p, r.q);
  r.upper = std::max(factorization_bound(r.p, r.q), r.lower);
  r.value = 0.5 * (r.lower + r.upper);
  r.certified = r.upper - r.lower <= opts.tolerance * r.upper;
}

}  // namespace

double factorization_bound(const Matrix& p, const Matrix& q) {
  return max_row_norm(p) * max_row_norm(q);
}

double rank_one_splitting_bound(const Matrix& m) {
  require_finite(m);
  return m.cwiseAbs().colwise().maxCoeff().sum();
}

double schur_dual_value(const Matrix& m, const RealVector& u, const RealVector& v) {
  require(u.size() == m.rows() && v.size() == m.cols(), "dual vectors do not match");
  const Matrix a = u.cwiseMax(0.0).cwiseSqrt().asDiagonal() * m *
                   v.cwiseMax(0.0).cwiseSqrt().asDiagonal();
  return trace_norm(a);
}

SchurResult schur_norm(const Matrix& m, const SolveOptions& opts) {
  if (auto t = trivial_case(m, opts, "dual-fixed-point")) return *t;
  const Support s = support_of(m);
  const Matrix& a = s.core;
  const Index n = a.rows(), k = a.cols();

  SchurResult r;
  r.engine = "dual-fixed-point";
  entry_bound(a, r.lower, r.u, r.v);
  r.upper = std::numeric_limits<double>::infinity();

  RealVector u = RealVector::Constant(n, 1.0 / n);
  RealVector v = RealVector::Constant(k, 1.0 / k);
  Eigen::BDCSVD<Matrix> svd;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    r.iterations = it;
    const RealVector su = u.cwiseSqrt(), sv = v.cwiseSqrt();
    svd.compute(su.asDiagonal() * a * sv.asDiagonal(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sigma = svd.singularValues();
    const double g = sigma.sum();
    if (g > r.lower) {
      r.lower = g;
      r.u = u;
      r.v = v;
    }

    const RealVector root = sigma.cwiseSqrt();
    Matrix p = su.cwiseInverse().asDiagonal() * svd.matrixU() * root.asDiagonal();
    Matrix q = sv.cwiseInverse().asDiagonal() * svd.matrixV() * root.asDiagonal();
    consider(a, std::move(p), std::move(q), r);
    if (r.upper - r.lower <= opts.tolerance * r.upper) break;

    // u_i <- (U S U*)_ii / g, v_j <- (V S V*)_jj / g.
    RealVector du = svd.matrixU().cwiseAbs2() * sigma;
    RealVector dv = svd.matrixV().cwiseAbs2() * sigma;
    u = (du / g).cwiseMax(kWeightFloor);
    v = (dv / g).cwiseMax(kWeightFloor);
    u /= u.sum();
    v /= v.sum();
  }
  finish(r, a, opts);
  r = lift(s, m, std::move(r));
  if (!r.certified)
    throw NoCertificate("no certificate: Schur bracket [" + std::to_string(r.lower) + ", " +
                            std::to_string(r.upper) + "] did not close",
                        r.lower, r.upper);
  return r;
}

namespace {

Matrix project_psd(const Matrix& z) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(z);
  const RealVector ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// Projection onto {Z hermitian : Z_12 = M, real diag(Z) <= t}.
void project_affine(Matrix& z, const Matrix& m, double t) {
  const Index n = m.rows(), k = m.cols();
  z = (z + z.adjoint()).eval() / 2.0;
  z.topRightCorner(n, k) = m;
  z.bottomLeftCorner(k, n) = m.adjoint();
  for (Index i = 0; i < n + k; ++i) z(i, i) = std::min(z(i, i).real(), t);
}

}  // namespace

SchurResult schur_norm_projection(const Matrix& m, const SolveOptions& opts) {
  if (auto t = trivial_case(m, opts, "bisection-dykstra")) return *t;
  const Support s = support_of(m);
  const Matrix& a = s.core;
  const Index n = a.rows(), k = a.cols(), dim = n + k;

  SchurResult r;
  r.engine = "bisection-dykstra";
  entry_bound(a, r.lower, r.u, r.v);

  // Initial certificate: the column splitting P = M D_c^{-1/2}, Q = D_c^{1/2}.
  const RealVector c = a.cwiseAbs().colwise().maxCoeff().transpose();
  r.p = a * c.cwiseSqrt().cwiseInverse().asDiagonal();
  r.q = Matrix(c.cwiseSqrt().cast<Complex>().asDiagonal());
  r.upper = factorization_bound(r.p, r.q);

  double lo = r.lower, hi = r.upper;
  const int inner_cap = std::min(opts.max_iterations, 2000);
  int budget = opts.max_iterations;
  while (hi - lo > opts.tolerance * hi && budget > 0) {
    const double t = 0.5 * (lo + hi);
    Matrix z(dim, dim);
    z << t * Matrix::Identity(n, n), a, a.adjoint(), t * Matrix::Identity(k, k);
    Matrix pinc = Matrix::Zero(dim, dim), qinc = Matrix::Zero(dim, dim);
    for (int it = 0; it < inner_cap && budget > 0; ++it, --budget) {
      ++r.iterations;
      const Matrix y = project_psd(z + pinc);
      pinc += z - y;
      Matrix zn = y + qinc;
      project_affine(zn, a, t);
      qinc = y + qinc - zn;
      const double step = (zn - y).norm();
      z = std::move(zn);
      if (step <= 1e-12 * t * dim) break;
    }

    // z meets the affine constraints exactly; shift it into the PSD cone.
    Eigen::SelfAdjointEigenSolver<Matrix> es(z);
    const double shift = std::max(0.0, -es.eigenvalues()(0));
    const double cert = z.diagonal().real().maxCoeff() + shift;
    if (cert < r.upper) {
      const RealVector ev = (es.eigenvalues().array() + shift).max(0.0).sqrt().matrix();
      const Matrix f = es.eigenvectors() * ev.asDiagonal();
      r.p = f.topRows(n);
      r.q = f.bottomRows(k);
      r.upper = factorization_bound(r.p, r.q);
    }

    // Multipliers of the diagonal constraints accumulate in qinc; they give a
    // dual candidate whatever the verdict.
    RealVector du = qinc.diagonal().real().head(n).cwiseMax(0.0);
    RealVector dv = qinc.diagonal().real().tail(k).cwiseMax(0.0);
    if (du.sum() > 0 && dv.sum() > 0) {
      du /= du.sum();
      dv /= dv.sum();
      const double g = schur_dual_value(a, du, dv);
      if (g > r.lower) {
        r.lower = g;
        r.u = du;
        r.v = dv;
      }
    }
    // A shifted certificate below hi moves the certified end; otherwise t is
    // treated as infeasible.
    if (cert < hi) hi = cert;
    else lo = t;
    hi = std::min(hi, r.upper);
    lo = std::max(lo, r.lower);
  }
  finish(r, a, opts);
  return lift(s, m, std::move(r));
}

}  // namespace mdmult
