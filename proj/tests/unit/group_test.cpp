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
#include "mdmult/group.hpp"
#include "mdmult/random.hpp"
#include "oracles.hpp"

using namespace mdmult;

namespace {

std::vector<Index> cyclic_table(Index n) {
  std::vector<Index> t;
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) t.push_back((x + y) % n);
  return t;
}

void check_axioms(const FiniteGroup& g) {
  const Index n = g.order();
  for (Index x = 0; x < n; ++x) {
    CHECK(g.mul(x, g.inverse(x)) == g.identity());
    CHECK(g.mul(g.identity(), x) == x);
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
  }
}

}  // namespace

TEST_SUITE("group") {

TEST_CASE("presets have the expected orders") {
  const FiniteGroup c1 = build_group("cyclic:1");
  CHECK(c1.order() == 1);
  CHECK(c1.identity() == 0);
  CHECK(build_group("sym:3").order() == 6);
  CHECK(build_group("symmetric:4").order() == 24);
  CHECK(build_group("alt:4").order() == 12);
  CHECK(build_group("dihedral:4").order() == 8);
  CHECK(build_group("cyclic4").order() == 4);
  CHECK(build_group("sym3").order() == 6);
  for (const char* spec : {"cyclic:6", "dihedral:5", "sym:3", "alt:4"}) check_axioms(build_group(spec));
}

TEST_CASE("symmetric group is not abelian, cyclic is") {
  const FiniteGroup s3 = build_group("sym:3");
  bool commutes = true;
  for (Index x = 0; x < 6; ++x)
    for (Index y = 0; y < 6; ++y) commutes = commutes && s3.mul(x, y) == s3.mul(y, x);
  CHECK_FALSE(commutes);
  CHECK(build_group("cyclic:5").mul(3, 4) == 2);
}

TEST_CASE("element orders in the dihedral group") {
  const FiniteGroup d4 = build_group("dihedral:4");
  int involutions = 0;
  for (Index x = 0; x < 8; ++x) involutions += d4.element_order(x) == 2;
  CHECK(involutions == 5);
}

TEST_CASE("corrupted cyclic table is not a group") {
  std::vector<Index> t = cyclic_table(4);
  t[15] = 1;
  CHECK_THROWS_WITH(FiniteGroup::from_table(4, t, "bad"), doctest::Contains("not a group"));
}

TEST_CASE("table shape and range are validated") {
  CHECK_THROWS_WITH(FiniteGroup::from_table(3, {0, 1, 2}, "short"),
                    doctest::Contains("invalid multiplication table"));
  std::vector<Index> t = cyclic_table(3);
  t[4] = 7;
  CHECK_THROWS_WITH(FiniteGroup::from_table(3, t, "range"), doctest::Contains("invalid multiplication table"));
  CHECK_THROWS(build_group("cyclic:0"));
  CHECK_THROWS(build_group("quaternion:2"));
}

TEST_CASE("free ball sizes") {
  CHECK(FreeBall(2, 0).size() == 1);
  CHECK(FreeBall(2, 2).size() == 17);
  CHECK(FreeBall(1, 3).size() == 7);
  for (int k = 1; k <= 3; ++k)
    for (int r = 0; r <= 4; ++r) {
      long long want = 0;
      for (int j = 0; j <= r; ++j) want += oracle::sphere_count(k, j);
      CHECK(FreeBall(k, r).size() == want);
    }
}

TEST_CASE("free ball products are partial and reduce") {
  const FreeBall b(2, 2);
  const Index a = *b.find_element("a"), A = *b.find_element("A"), bb = *b.find_element("b");
  CHECK(b.product(a, A) == b.identity());
  CHECK(b.element_name(*b.product(a, bb)) == "ab");
  const Index ab = *b.product(a, bb);
  CHECK_FALSE(b.product(ab, ab).has_value());
  CHECK_THROWS_WITH(b.checked_product(ab, ab), doctest::Contains("product outside carrier"));
  for (Index x = 0; x < b.size(); ++x) {
    CHECK(b.length(b.inverse(x)) == b.length(x));
    for (Index y = 0; y < b.size(); ++y)
      if (auto z = b.product(x, y)) CHECK(b.length(*z) <= b.length(x) + b.length(y));
  }
}

TEST_CASE("geodesic rays") {
  const FreeBall b(2, 4);
  const auto at = [&](const char* s) { return *b.find_element(s); };
  CHECK(b.ray_point(b.identity(), 3) == at("aaa"));
  CHECK(b.ray_point(at("b"), 1) == b.identity());
  CHECK(b.ray_point(at("b"), 2) == at("a"));
  CHECK(b.ray_point(at("aa"), 1) == at("aaa"));
  CHECK_THROWS_WITH(b.ray_point(at("aaaa"), 1), doctest::Contains("radius exhausted"));
  // d(gamma_v(n), gamma_v(m)) = |n - m| while the ray stays inside.
  for (Index v : b.ball(2))
    for (int n = 0; n <= 2; ++n)
      for (int m = 0; m <= 2; ++m)
        CHECK(b.distance(b.ray_point(v, n), b.ray_point(v, m)) == std::abs(n - m));
}

TEST_CASE("integer window") {
  const IntegerWindow w(3);
  CHECK(w.size() == 7);
  CHECK(w.value(w.identity()) == 0);
  CHECK(w.product(*w.index_of(2), *w.index_of(-1)) == w.index_of(1));
  CHECK_FALSE(w.product(*w.index_of(2), *w.index_of(2)).has_value());
  for (Index x = 0; x < w.size(); ++x)
    for (Index y = 0; y < w.size(); ++y) CHECK(w.product(x, y) == w.product(y, x));
  CHECK_THROWS(IntegerWindow(0));
}

TEST_CASE("carrier specs") {
  CHECK(make_carrier("freeball:2,3")->size() == 53);
  CHECK(make_carrier("window:5")->size() == 11);
  CHECK(make_carrier("dihedral:3")->size() == 6);
  CHECK_THROWS(make_carrier("freeball:2"));
  CHECK(word_length(*make_carrier("window:5"), 0) == 5);
}

TEST_CASE("group functions") {
  auto g = std::make_shared<FiniteGroup>(build_group("cyclic:4"));
  const GroupFunction d = GroupFunction::delta(g, 0);
  CHECK(d.l1_norm() == 1.0);
  CHECK(d.sup_norm() == 1.0);
  Eigen::VectorXcd bad(4);
  bad << 1, std::nan(""), 0, 0;
  CHECK_THROWS(GroupFunction(g, bad));
  auto h = std::make_shared<FiniteGroup>(build_group("cyclic:5"));
  CHECK_THROWS(d + GroupFunction::delta(h, 0));
  Rng rng(1);
  const GroupFunction f = random_function(g, rng);
  const GroupFunction r = reflect(reflect(f));
  CHECK((r.values() - f.values()).norm() == 0.0);
}

TEST_CASE("subgroups") {
  auto s3 = std::make_shared<FiniteGroup>(build_group("sym:3"));
  auto a3 = std::make_shared<FiniteGroup>(build_group("alt:3"));
  auto e = find_embedding(a3, s3);
  REQUIRE(e.has_value());
  CHECK(e->map.size() == 3);
  auto z4 = std::make_shared<FiniteGroup>(build_group("cyclic:4"));
  CHECK_FALSE(find_embedding(z4, s3).has_value());
  const std::vector<Index> not_closed = {0, 1};
  CHECK_THROWS_WITH(subgroup_from_elements(z4, not_closed), doctest::Contains("not closed under products"));
  const std::vector<Index> gens = {2};
  CHECK(generated_subgroup(z4, gens).sub->order() == 2);
}

}  // TEST_SUITE
