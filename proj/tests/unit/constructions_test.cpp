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

#include <cmath>
#include <memory>

#include "mdmult/constructions.hpp"
#include "mdmult/error.hpp"
#include "mdmult/random.hpp"
#include "oracles.hpp"

using namespace mdmult;

TEST_SUITE("constructions") {

TEST_CASE("fejer kernel values") {
  auto window = std::make_shared<const IntegerWindow>(6);
  const FejerTerm f = fejer(3, window);
  CHECK(f.phi(*window->index_of(0)) == Complex(1.0));
  CHECK(f.phi(*window->index_of(1)) == Complex(2.0 / 3.0));
  CHECK(f.phi(*window->index_of(-2)) == Complex(1.0 / 3.0));
  CHECK(f.phi(*window->index_of(5)) == Complex(0.0));
  CHECK(f.u_norm_sq == 1.0);
  CHECK(f.realization_residual <= 1e-15);
  CHECK_THROWS_WITH(fejer(7, window), doctest::Contains("window too small"));
}

TEST_CASE("fejer kernel has B norm one on a cyclic group") {
  // Z/11 is large enough that phi_5 sees no wraparound.
  auto z = std::make_shared<FiniteGroup>(build_group("cyclic:11"));
  const GroupFunction phi = GroupFunction::generate(z, [](Index x) {
    const Index m = std::min(x, 11 - x);
    return m < 5 ? (5.0 - m) / 5.0 : 0.0;
  });
  CHECK(b_norm(phi) <= 1.0 + 1e-6);
}

TEST_CASE("radial multipliers") {
  auto ball = std::make_shared<const FreeBall>(2, 3);
  auto [chi0, phi0] = radial_multipliers(ball, 0);
  CHECK(chi0.values() == GroupFunction::delta(ball, 0).values());
  CHECK(phi0.values() == chi0.values());
  auto [chi3, phi3] = radial_multipliers(ball, 3);
  CHECK(chi3.l1_norm() == 36.0);
  CHECK(phi3.l1_norm() == 40.0);
  auto small = std::make_shared<const FreeBall>(2, 2);
  auto [chi2, phi2] = radial_multipliers(small, 2);
  CHECK(phi2(0) == Complex(1.0));
  CHECK_THROWS(radial_multipliers(small, 3));
  for (int n = 2; n <= 3; ++n) {
    const GroupFunction diff = radial_multipliers(ball, n).second - radial_multipliers(ball, n - 2).second;
    CHECK(diff.values() == radial_multipliers(ball, n).first.values());
  }
}

TEST_CASE("tree witness for n = 0 and d = 2") {
  for (int d = 2; d <= 4; ++d) {
    auto ball = std::make_shared<const FreeBall>(2, d);
    const TreeFamily f = tree_witness(ball, 0, d);
    const VerifyResult v = verify_factorization(f.phi, f.witness, TupleSource::all(), 1e-12);
    CHECK(v.residual <= 1e-12);
    CHECK(v.bound == doctest::Approx(1.0).epsilon(1e-12));
  }
  auto ball = std::make_shared<const FreeBall>(2, 4);
  const TreeFamily f = tree_witness(ball, 2, 2);
  const VerifyResult v = verify_factorization(f.phi, f.witness, TupleSource::all(), 1e-12);
  CHECK(v.residual <= 1e-12);
  CHECK(v.bound <= 3.0 + 1e-12);
  CHECK(f.xi_d_sup <= std::sqrt(3.0) + 1e-12);
  CHECK(f.xi_1_sup <= std::sqrt(3.0) + 1e-12);
  CHECK(f.consistency_residual <= 1e-10);
}

TEST_CASE("tree witness on the integer line") {
  auto line = std::make_shared<const FreeBall>(1, 6);
  const TreeFamily f = tree_witness(line, 2, 3);
  const VerifyResult v = verify_factorization(f.phi, f.witness, TupleSource::all(), 1e-12);
  CHECK(v.residual <= 1e-12);
  CHECK(v.bound <= 3.0 + 1e-12);
  for (double s : f.middle_sups) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tree witness radius budget") {
  auto ball = std::make_shared<const FreeBall>(2, 2);
  CHECK_THROWS_WITH(tree_witness(ball, 2, 2, 1), doctest::Contains("radius budget violated"));
}

// Middle factors on F2 are not isometries once the rays turn (see the
// decisions ledger); these two cases record the unmet bound.
TEST_CASE("tree witness middle factors on F2 at d = 3") {
  auto ball = std::make_shared<const FreeBall>(2, 6);
  const TreeFamily f = tree_witness(ball, 3, 3);
  const VerifyResult v = verify_factorization(f.phi, f.witness, TupleSource::all(), 1e-12);
  CHECK(v.residual <= 1e-12);
  for (double s : f.middle_sups) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.bound <= 4.0 + 1e-12);
}

TEST_CASE("chi_3 certificate on F2 at d = 3") {
  auto ball = std::make_shared<const FreeBall>(2, 6);
  const ChiCertificate c = chi_certificate(ball, 3, 3);
  CHECK(c.residual <= 1e-12);
  CHECK(c.bound <= 6.0 + 1e-12);
}

TEST_CASE("m2 lower bound of phi_n stays below n + 1") {
  auto ball = std::make_shared<const FreeBall>(2, 4);
  for (int n = 0; n <= 4; ++n) {
    const GroupFunction phi = radial_multipliers(ball, n).second;
    CHECK(m2_norm(phi).lower->value <= n + 1 + 1e-6);
  }
}

TEST_CASE("haagerup family") {
  auto ball = std::make_shared<const FreeBall>(2, 4);
  const HaagerupFamily h = haagerup_family(ball, 3, 0.5);
  CHECK(h.rho(0) == Complex(1.0));
  const Index x = *ball->find_element("ab");
  CHECK(std::abs(h.rho(x) - std::exp(-1.0)) <= 1e-15);
  GroupFunction sum(ball);
  for (int k = 0; k <= 3; ++k) sum = sum + radial_multipliers(ball, k).first;
  CHECK((h.rho * sum).values() == h.phi.values());
  CHECK(is_pd_function(h.rho, ball->ball(2)));
  CHECK(haagerup_family(ball, 1, 40.0).rho(x).real() < 1e-30);
  CHECK_THROWS(haagerup_family(ball, 3, 0.0));
}

TEST_CASE("haagerup tail") {
  const double q = std::exp(-0.5);
  const double closed = 2 * std::exp(-5.5) * (11 - 10 * q) / ((1 - q) * (1 - q));
  CHECK(haagerup_tail(10, 0.5) == doctest::Approx(closed).epsilon(1e-13));
  CHECK(std::abs(haagerup_tail(10, 0.5) - static_cast<double>(oracle::tail_partial(10, 0.5, 10000))) <= 1e-12);
  CHECK(std::abs(haagerup_tail_summed(10, 0.5, 10000) - closed) <= 1e-12);
  for (Index n = 0; n < 30; ++n) CHECK(haagerup_tail(n + 1, 0.3) < haagerup_tail(n, 0.3));
  CHECK(haagerup_tail(haagerup_cutoff(0.2, 1e-3), 0.2) <= 1e-3);
}

TEST_CASE("coefficient witnesses") {
  auto s3 = std::make_shared<FiniteGroup>(build_group("sym:3"));
  const CoefficientWitness one = coefficient_witness(GroupFunction::constant(s3, 1.0), 2);
  CHECK(one.verify.residual <= 1e-9);
  CHECK(one.witness.bound() <= 1.0 + 1e-6);
  auto z4 = std::make_shared<FiniteGroup>(build_group("cyclic:4"));
  const CoefficientWitness d = coefficient_witness(GroupFunction::delta(z4, 0), 3);
  CHECK(d.verify.residual <= 1e-9);
  CHECK(d.witness.bound() <= 1.0 + 1e-6);
  Rng rng(13);
  const CoefficientWitness pd = coefficient_witness(random_pd_function(s3, rng), 4);
  CHECK(pd.verify.residual <= 1e-9);
  CHECK(pd.witness.bound() <= 1.0 + 1e-6);
  const GroupFunction f = random_function(s3, rng);
  const CoefficientWitness w = coefficient_witness(f, 3);
  CHECK(w.witness.bound() <= w.b_value * (1 + 1e-6));
}

TEST_CASE("net reports") {
  const NetReport full = fejer_net(160, 8, 0.05, 2);
  CHECK(full.converged);
  CHECK(full.constant_evidence == 1.0);
  CHECK(full.terms.back().deviation == doctest::Approx(0.05).epsilon(1e-12));
  const NetReport short_net = fejer_net(32, 8, 0.05, 3);
  CHECK_FALSE(short_net.converged);
  CHECK(short_net.terms.back().deviation == doctest::Approx(0.25).epsilon(1e-12));
  NetTerm unit;
  unit.parameter = 0;
  unit.bound = 1;
  unit.values = {1.0, 1.0};
  const NetReport single = make_net_report("unit", 2, {unit}, "two points", 0.0);
  CHECK(single.converged);
  CHECK(single.constant_evidence == 1.0);
  const NetReport tree = haagerup_net(2, {0.5, 0.2, 0.1, 0.05}, 2, 0.15, 2);
  CHECK(tree.converged);
  for (const NetTerm& t : tree.terms) CHECK(t.bound <= 1.0 + t.parameter + 1e-12);
  const NetReport normalized = tree_phi_net(2, 4, 2, 0.15, 2);
  CHECK(normalized.terms.size() == 4);
  CHECK(normalized.constant_evidence <= 1.0 + 1e-12);
  CHECK_FALSE(normalized.converged);
  CHECK(normalized.terms.back().deviation >= 0.5);
}

}  // TEST_SUITE
