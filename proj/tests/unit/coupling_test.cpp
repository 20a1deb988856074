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

#include "mdmult/constructions.hpp"
#include "mdmult/coupling.hpp"
#include "mdmult/error.hpp"
#include "mdmult/random.hpp"

using namespace mdmult;

namespace {

GroupPtr group(const char* spec) { return std::make_shared<FiniteGroup>(build_group(spec)); }

Embedding embed(const char* sub, const char* ambient) { return *find_embedding(group(sub), group(ambient)); }

Embedding self(GroupPtr g) {
  std::vector<Index> id(static_cast<size_t>(g->order()));
  for (Index x = 0; x < g->order(); ++x) id[static_cast<size_t>(x)] = x;
  return make_embedding(g, g, id);
}

ActionTable shifts(Index points, Index order, Index step) {
  ActionTable t(static_cast<size_t>(order));
  for (Index a = 0; a < order; ++a)
    for (Index x = 0; x < points; ++x) t[static_cast<size_t>(a)].push_back((x + step * a) % points);
  return t;
}

double max_diff(const GroupFunction& a, const GroupFunction& b) {
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("coupling") {

TEST_CASE("subgroup couplings") {
  auto s3 = group("sym:3");
  const CouplingSpace same = subgroup_coupling(self(s3));
  CHECK(same.p() == std::vector<Index>{s3->identity()});
  CHECK(same.q() == std::vector<Index>{s3->identity()});

  auto z4 = group("cyclic:4");
  const std::vector<Index> half = {0, 2};
  const CouplingSpace c = subgroup_coupling(subgroup_from_elements(z4, half));
  CHECK(c.q() == std::vector<Index>{0, 1});
  CHECK(c.space().trace(c.p()) == 1.0);
  CHECK(subgroup_coupling(embed("alt:3", "sym:3")).q().size() == 2);
}

TEST_CASE("measure equivalence coupling on six points") {
  const CouplingSpace c = me_coupling(std::vector<double>(6, 1.0), group("cyclic:2"), shifts(6, 2, 3),
                                      group("cyclic:3"), shifts(6, 3, 2), {0, 1}, {0, 1, 2});
  for (Index x = 0; x < 6; ++x) CHECK(c.weight(x) == 0.5);
  CHECK(c.space().trace(c.p()) == 1.0);
  const FixedAlgebra fa = fixed_algebra(c);
  CHECK(fa.orbits.size() == 3);
  for (double t : fa.tau) CHECK(t == doctest::Approx(0.5));
}

TEST_CASE("coupling axioms are enforced") {
  ActionTable swap01 = {{0, 1, 2}, {1, 0, 2}}, swap12 = {{0, 1, 2}, {0, 2, 1}};
  CHECK_THROWS_WITH(me_coupling({1, 1, 1}, group("cyclic:2"), swap01, group("cyclic:2"), swap12, {0, 1}, {0, 2}),
                    doctest::Contains("actions do not commute"));
  CHECK_THROWS_WITH(me_coupling(std::vector<double>(6, 1.0), group("cyclic:2"), shifts(6, 2, 3), group("cyclic:3"),
                                shifts(6, 3, 2), {0}, {0, 1, 2}),
                    doctest::Contains("not a fundamental domain"));
  CHECK_THROWS_WITH(me_coupling({1, 2, 1, 1, 1, 1}, group("cyclic:2"), shifts(6, 2, 3), group("cyclic:3"),
                                shifts(6, 3, 2), {0, 1}, {0, 1, 2}),
                    doctest::Contains("weight drift"));
  ActionTable broken = shifts(6, 3, 2);
  broken[1] = {1, 0, 2, 3, 4, 5};
  CHECK_THROWS_WITH(me_coupling(std::vector<double>(6, 1.0), group("cyclic:2"), shifts(6, 2, 3), group("cyclic:3"),
                                broken, {0, 1}, {0, 1, 2}),
                    doctest::Contains("not a group action"));
}

TEST_CASE("theta is a faithful unital *-homomorphism") {
  const CouplingSpace c = z2_z3_coupling();
  auto lam = c.lambda();
  CHECK(theta(c, GroupFunction::constant(lam, 1.0)) == Vector::Ones(6));
  const Vector p = theta(c, GroupFunction::delta(lam, lam->identity()));
  for (Index x = 0; x < 6; ++x) CHECK(p(x) == Complex(c.p_position(x) >= 0 ? 1.0 : 0.0));
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const GroupFunction f = random_function(lam, rng), g = random_function(lam, rng);
    CHECK(theta(c, f * g) == theta(c, f).cwiseProduct(theta(c, g)));
  }
  const GroupFunction f = random_function(lam, rng);
  CHECK(theta(c, GroupFunction(lam, f.values().conjugate())) == theta(c, f).conjugate());
  for (Index s = 0; s < lam->order(); ++s) CHECK_FALSE(theta(c, GroupFunction::delta(lam, s)).isZero(0.0));
}

TEST_CASE("induction examples") {
  auto s3 = group("sym:3");
  const CouplingSpace same = subgroup_coupling(self(s3));
  Rng rng(4);
  const GroupFunction phi = random_function(s3, rng);
  CHECK(induce(same, phi).values() == phi.values());

  for (const CouplingSpace& c : {z2_z3_coupling(), subgroup_coupling(embed("cyclic:2", "sym:3"))}) {
    const GroupFunction one = induce(c, GroupFunction::constant(c.lambda(), 1.0));
    CHECK(one.values() == Vector::Ones(c.gamma()->order()));
  }

  auto z4 = group("cyclic:4");
  const std::vector<Index> half = {0, 2};
  const CouplingSpace c = subgroup_coupling(subgroup_from_elements(z4, half));
  const GroupFunction hat = induce(c, GroupFunction::delta(z4, 0));
  CHECK(hat(0) == Complex(1.0));
  CHECK(hat(1) == Complex(0.0));
}

TEST_CASE("induction preserves positive definiteness and linearity") {
  Rng rng(6);
  const CouplingSpace c = z2_z3_coupling();
  for (int k = 0; k < 10; ++k) {
    const GroupFunction hat = induce(c, random_pd_function(c.lambda(), rng));
    CHECK(is_pd_function(hat, m2_index_set(*c.gamma())));
    const GroupFunction f = random_function(c.lambda(), rng), g = random_function(c.lambda(), rng);
    CHECK(max_diff(induce(c, f + Complex(2, 1) * g), induce(c, f) + Complex(2, 1) * induce(c, g)) <= 1e-14);
  }
}

TEST_CASE("dual induction") {
  auto s3 = group("sym:3");
  const CouplingSpace same = subgroup_coupling(self(s3));
  CHECK(induce_dual(same, GroupFunction::delta(s3, 0)).values() == GroupFunction::delta(s3, 0).values());
  auto z4 = group("cyclic:4");
  const std::vector<Index> half = {0, 2};
  const CouplingSpace c = subgroup_coupling(subgroup_from_elements(z4, half));
  Rng rng(7);
  for (int k = 0; k < 10; ++k) {
    const GroupFunction f = GroupFunction::generate(c.gamma(), [&](Index) { return rng.uniform(); });
    CHECK(std::abs(induce_dual(c, f).l1_norm() - f.l1_norm()) <= 1e-12);
    const GroupFunction phi = random_function(z4, rng), g = random_function(c.gamma(), rng);
    CHECK(std::abs(pairing(induce(c, phi), g) - pairing(phi, induce_dual(c, g))) <= 1e-12);
  }
}

TEST_CASE("witness transport") {
  auto s3 = group("sym:3");
  Rng rng(8);
  const CouplingSpace same = subgroup_coupling(self(s3));
  const GroupFunction pd = random_pd_function(s3, rng);
  const CoefficientWitness w = coefficient_witness(pd, 3);
  const FactorizationWitness hat = induce_witness(same, pd, w.witness);
  CHECK(hat.bound() == doctest::Approx(w.witness.bound()).epsilon(1e-9));
  CHECK(verify_factorization(induce(same, pd), hat).residual <= 1e-9);

  auto z4 = group("cyclic:4");
  const std::vector<Index> half = {0, 2};
  const CouplingSpace c = subgroup_coupling(subgroup_from_elements(z4, half));
  FactorizationWitness one;
  one.d = 2;
  one.dims = {1, 1, 1};
  one.acting = {0, 1, 2, 3};
  one.xi.assign(2, std::vector<Matrix>(4, Matrix::Ones(1, 1)));
  const GroupFunction ones = GroupFunction::constant(z4, 1.0);
  const FactorizationWitness t = induce_witness(c, ones, one);
  CHECK(t.bound() <= 1.0 + 1e-9);
  CHECK(verify_factorization(induce(c, ones), t).residual <= 1e-9);

  const GroupFunction other = GroupFunction::delta(z4, 0);
  CHECK_THROWS_WITH(induce_witness(c, other, one), doctest::Contains("uncertified input witness"));

  const CouplingSpace sa = subgroup_coupling(embed("alt:3", "sym:3"));
  for (int d = 2; d <= 4; ++d) {
    const GroupFunction phi = random_pd_function(s3, rng);
    const CoefficientWitness cw = coefficient_witness(phi, d);
    const FactorizationWitness h = induce_witness(sa, phi, cw.witness);
    CHECK(verify_factorization(induce(sa, phi), h).residual <= 1e-9);
    CHECK(h.bound() <= cw.witness.bound() + 1e-6);
    CHECK(m2_norm(induce(sa, phi)).upper->value <= m2_norm(phi).lower->value + 1e-6);
  }
}

TEST_CASE("Koopman unitary") {
  const KoopmanReport trivial = koopman_check(subgroup_coupling(self(group("cyclic:3"))));
  CHECK(trivial.unitarity_defect == 0.0);
  CHECK(trivial.intertwining_defect == 0.0);
  const CouplingSpace c = z2_z3_coupling();
  const KoopmanReport k = koopman_check(c);
  CHECK(k.orbits == 3);
  CHECK(k.unitarity_defect <= 1e-12);
  CHECK(k.coisometry_defect <= 1e-12);
  CHECK(k.intertwining_defect <= 1e-12);
  Rng rng(9);
  const GroupFunction phi = random_function(c.lambda(), rng);
  const KoopmanReport kr = koopman_check(c, phi, a_norm_report(phi).realization);
  CHECK(kr.coefficient_residual <= 1e-10);
  CHECK(kr.norm_defect <= 1e-10);
  CHECK(a_norm(induce(c, phi)) <= a_norm(phi) + 1e-6);
}

TEST_CASE("lattice induction") {
  auto s3 = group("sym:3");
  Rng rng(10);
  const GroupFunction phi = random_function(s3, rng);
  CHECK(max_diff(lattice_induce(self(s3), {s3->identity()}, phi), phi) <= 1e-15);

  const std::vector<Index> e = {s3->identity()};
  const Embedding trivial = subgroup_from_elements(s3, e);
  const GroupFunction c = GroupFunction::constant(trivial.sub, Complex(0.5, -2));
  std::vector<Index> all = {0, 1, 2, 3, 4, 5};
  CHECK(max_diff(lattice_induce(trivial, all, c), GroupFunction::constant(s3, Complex(0.5, -2))) <= 1e-15);

  const Embedding a3 = embed("alt:3", "sym:3");
  const std::vector<Index> omega = left_transversal(a3);
  const GroupFunction psi = random_function(a3.sub, rng);
  CHECK(max_diff(lattice_induce(a3, omega, psi), induce(lattice_coupling(a3, omega), psi)) <= 1e-12);
  CHECK_THROWS_WITH(lattice_induce(a3, {a3.map[0], a3.map[1]}, psi), doctest::Contains("not a transversal"));
}

}  // TEST_SUITE
