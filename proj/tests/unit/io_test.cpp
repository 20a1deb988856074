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

#include <string>

#include "mdmult/error.hpp"
#include "mdmult/io.hpp"

using namespace mdmult;

namespace {

std::string data(const char* name) { return std::string(MDMULT_DATA_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("io") {

TEST_CASE("group tables") {
  const GroupPtr g = load_group_table(data("cyclic4_table.json"));
  CHECK(g->order() == 4);
  CHECK(g->mul(1, 3) == 0);
  CHECK_THROWS_AS(load_group_table(data("bad_table.json")), Error);
  CHECK_THROWS_AS(load_group_table(data("missing.json")), Error);
  CHECK(resolve_carrier(data("cyclic4_table.json"))->size() == 4);
  CHECK(resolve_carrier("sym:3")->size() == 6);
}

TEST_CASE("functions from json") {
  const CarrierPtr z4 = resolve_carrier("cyclic:4");
  const GroupFunction a = function_from_json(Json::parse(R"({"values": [1, [0, 2], 0, -1]})"), z4);
  CHECK(a(1) == Complex(0, 2));
  CHECK(a(3) == Complex(-1));
  const GroupFunction m = function_from_json(Json::parse(R"({"values": {"2": 3}})"), z4);
  CHECK(m(2) == Complex(3));
  CHECK(m(0) == Complex(0));
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"values": [1, 2]})"), z4), Error);
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"values": {"9": 1}})"), z4), Error);
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"values": ["x", 0, 0, 0]})"), z4), Error);
  CHECK_THROWS_AS(parse_json("{", "inline"), Error);

  const GroupFunction s = load_function(data("sphere1.json"));
  CHECK(s.size() == 17);
  const GroupFunction back = function_from_json(function_to_json(a, "cyclic:4"), z4);
  CHECK(back.values() == a.values());
}

TEST_CASE("couplings from json and presets") {
  const CouplingSpace c = load_coupling(data("z2z3.json"));
  CHECK(c.size() == 6);
  CHECK(c.gamma()->order() == 2);
  const CouplingSpace again = coupling_from_json(coupling_to_json(c));
  CHECK(again.p() == c.p());
  CHECK(again.q() == c.q());
  CHECK_THROWS_WITH(load_coupling(data("bad_domain.json")), doctest::Contains("not a fundamental domain"));
  CHECK_THROWS_WITH(load_coupling(data("noncommuting.json")), doctest::Contains("actions do not commute"));

  CHECK(subgroup_preset("subgroup:sym:3,alt:3").sub->order() == 3);
  CHECK(subgroup_preset("subgroup:cyclic:4,[2]").sub->order() == 2);
  CHECK(coupling_preset("subgroup:cyclic:4,cyclic:2").q().size() == 2);
  CHECK_THROWS_AS(subgroup_preset("subgroup:cyclic:4,cyclic:3"), Error);
  CHECK_THROWS_AS(subgroup_preset("cyclic:4"), Error);
  CHECK(subgroup_preset("subgroup:sym3,alt3").sub->order() == 3);
}

TEST_CASE("reports") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  RunReport r;
  r.command = "norm";
  r.args = {"m2"};
  r.inputs = "abc";
  r.results["value"] = 1.5;
  const std::string first = r.dump();
  CHECK(first == r.dump());
  const Json j = Json::parse(first);
  CHECK(j["inputs_digest"] == fnv1a_hex("abc"));
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(complex_to_json(Complex(1, -2)) == Json::array({1.0, -2.0}));
  NormReport n;
  n.upper = Bound{std::numeric_limits<double>::infinity(), "none"};
  CHECK(to_json(n)["upper"]["value"].is_null());
}

}  // TEST_SUITE
