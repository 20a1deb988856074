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

#include <doctest.h>

#include <memory>
#include <vector>

#include "mdmult/error.hpp"
#include "mdmult/linalg.hpp"
#include "mdmult/random.hpp"
#include "mdmult/schur.hpp"
#include "mdmult/trace_min.hpp"
#include "oracles.hpp"

using namespace mdmult;

namespace {

// The block matrix [[P P*, M], [M*, Q Q*]] is PSD by construction; check the
// certificate reproduces M and respects its diagonal bound.
void check_certificate(const Matrix& m, const SchurResult& r) {
  REQUIRE(r.certified);
  const Matrix x = r.x_block(), y = r.y_block();
  CHECK((r.p * r.q.adjoint() - m).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff()));
  CHECK(x.diagonal().real().maxCoeff() * y.diagonal().real().maxCoeff() <=
        r.upper * r.upper * (1 + 1e-9));
  CHECK(r.lower <= r.upper);
  CHECK(r.lower >= m.cwiseAbs().maxCoeff() * (1 - 1e-12));
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("operator norm") {
  CHECK(operator_norm(Matrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(operator_norm(Matrix::Zero(3, 3)) == 0.0);
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 2;
  CHECK(operator_norm(a) == doctest::Approx(2.0).epsilon(1e-10));
  a(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS(operator_norm(a));
}

TEST_CASE("psd test") {
  CHECK(is_psd(Matrix::Identity(4, 4), 1e-12));
  Matrix d = Matrix::Identity(2, 2);
  d(1, 1) = -1;
  CHECK_FALSE(is_psd(d, 1e-12));
  Rng rng(3);
  const Matrix v = rng.complex_matrix(3, 6);
  CHECK(is_psd(v.adjoint() * v, 1e-10));
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1;
  CHECK_THROWS(is_psd(skew, 1e-12));
}

TEST_CASE("schur norm of permutations and rank one matrices") {
  Rng rng(5);
  for (Index n : {1, 3, 8, 17}) {
    const Matrix p = random_permutation_matrix(n, rng);
    const SchurResult r = schur_norm(p);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    check_certificate(p, r);
  }
  for (int k = 0; k < 10; ++k) {
    const Vector u = rng.complex_vector(4), v = rng.complex_vector(6);
    const SchurResult r = schur_norm(u * v.adjoint());
    CHECK(r.value == doctest::Approx(u.cwiseAbs().maxCoeff() * v.cwiseAbs().maxCoeff()).epsilon(1e-6));
  }
}

TEST_CASE("schur norm of the all-ones matrix") {
  CHECK(schur_norm(Matrix::Ones(3, 3)).value == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("schur norm agrees with the factorization oracle") {
  Rng rng(11);
  const Matrix h = random_hermitian(4, rng);
  const SchurResult r = schur_norm(h);
  check_certificate(h, r);
  const double ref = oracle::schur_factorization(h, 1);
  CHECK(std::abs(r.value - ref) / ref <= 1e-3);
}

TEST_CASE("schur norm invariances and bounds") {
  Rng rng(7);
  for (int k = 0; k < 5; ++k) {
    const Matrix m = rng.complex_matrix(5, 4);
    const SchurResult r = schur_norm(m);
    const Matrix pl = random_permutation_matrix(5, rng), pr = random_permutation_matrix(4, rng);
    CHECK(std::abs(schur_norm(pl * m * pr).value - r.value) <= 2e-7 * r.value);
    CHECK(schur_norm(m.topLeftCorner(3, 3)).value <= r.value * (1 + 2e-7));
    CHECK(m.cwiseAbs().maxCoeff() <= r.value * (1 + 1e-9));
    CHECK(r.value <= rank_one_splitting_bound(m) * (1 + 1e-9));
    check_certificate(m, r);
  }
}

TEST_CASE("zero rows and columns are harmless") {
  Matrix m = Matrix::Zero(4, 4);
  m(1, 2) = Complex(0, 3);
  m(2, 2) = 1;
  const SchurResult r = schur_norm(m);
  CHECK(r.p.rows() == 4);
  check_certificate(m, r);
  CHECK(schur_norm(Matrix::Zero(3, 2)).value == 0.0);
}

TEST_CASE("projection engine brackets the fixed point") {
  Rng rng(2);
  const Matrix h = random_hermitian(4, rng);
  const SchurResult a = schur_norm(h), b = schur_norm_projection(h);
  CHECK(b.lower <= a.upper * (1 + 1e-9));
  CHECK(b.upper >= a.lower * (1 - 1e-9));
  CHECK(std::abs(b.value - a.value) / a.value <= 1e-2);
}

TEST_CASE("no certificate when the iteration cap is hit") {
  Rng rng(4);
  SolveOptions o;
  o.max_iterations = 1;
  const Matrix h = random_hermitian(5, rng);
  try {
    schur_norm(h, o);
    FAIL("expected NoCertificate");
  } catch (const NoCertificate& e) {
    CHECK(e.kind() == ErrorKind::kNoCertificate);
    CHECK(e.lower() <= e.upper());
  }
}

TEST_CASE("fault injection hook returns the entry bound") {
  Rng rng(4);
  SolveOptions o;
  o.inject_schur_fault = true;
  const Matrix h = random_hermitian(5, rng);
  CHECK(schur_norm(h, o).value == h.cwiseAbs().maxCoeff());
  CHECK(schur_norm(h, o).engine == "fault");
}

TEST_CASE("solve options are validated") {
  SolveOptions o;
  o.tolerance = 0;
  CHECK_THROWS(o.validate());
  o.tolerance = 1e-7;
  o.max_iterations = 0;
  CHECK_THROWS(o.validate());
}

TEST_CASE("trace minimization examples") {
  auto z4 = std::make_shared<FiniteGroup>(build_group("cyclic:4"));
  CHECK(trace_min(*z4, Vector::Ones(4)).value == doctest::Approx(1.0).epsilon(1e-7));
  Vector delta = Vector::Zero(4);
  delta(0) = 1;
  const TraceMinResult r = trace_min(*z4, delta);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.certified);
  CHECK(r.lower <= r.upper);

  auto z5 = std::make_shared<FiniteGroup>(build_group("cyclic:5"));
  Rng rng(9);
  for (int k = 0; k < 5; ++k) {
    const Vector f = rng.complex_vector(5);
    const std::vector<Complex> vals(f.data(), f.data() + 5);
    CHECK(trace_min(*z5, f).value == doctest::Approx(oracle::dft_l1(vals)).epsilon(1e-6));
  }
}

TEST_CASE("trace minimization is a norm") {
  auto s3 = std::make_shared<FiniteGroup>(build_group("sym:3"));
  Rng rng(10);
  for (int k = 0; k < 5; ++k) {
    const Vector f = rng.complex_vector(6), g = rng.complex_vector(6);
    const double nf = trace_min(*s3, f).value, ng = trace_min(*s3, g).value;
    CHECK(nf >= f.cwiseAbs().maxCoeff() * (1 - 1e-9));
    CHECK(trace_min(*s3, Complex(0, -2.5) * f).value == doctest::Approx(2.5 * nf).epsilon(2e-7));
    CHECK(trace_min(*s3, f + g).value <= (nf + ng) * (1 + 2e-7));
  }
}

TEST_CASE("regular coefficients invert the group algebra") {
  auto d3 = std::make_shared<FiniteGroup>(build_group("dihedral:3"));
  Rng rng(12);
  const Vector f = rng.complex_vector(6);
  const Matrix t = convolution_operator(*d3, f) / 6.0;
  CHECK((regular_coefficients(*d3, t) - f).norm() <= 1e-12);
}

}  // TEST_SUITE
