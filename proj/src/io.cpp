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

#include "mdmult/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mdmult/error.hpp"

namespace mdmult {

namespace {

Index json_index(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) fail(what + ": expected an integer");
  return v.get<Index>();
}

std::vector<Index> index_list(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(what + ": expected an array of integers");
  std::vector<Index> out;
  for (const auto& v : j) out.push_back(json_index(v, what));
  return out;
}

Complex json_complex(const Json& v, const std::string& what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  fail(what + ": a value must be a number or [re, im]");
}

GroupPtr group_ref(const Json& j, const std::string& what) {
  if (j.is_string()) {
    const std::string spec = j.get<std::string>();
    if (std::filesystem::is_regular_file(spec)) return load_group_table(spec);
    return std::make_shared<FiniteGroup>(build_group(spec));
  }
  if (j.is_object()) return std::make_shared<FiniteGroup>(group_from_json(j, what));
  fail(what + ": group must be a preset string or a table object");
}

ActionTable action_table(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(what + ": action must be an array of permutations");
  ActionTable t;
  for (const auto& row : j) t.push_back(index_list(row, what));
  return t;
}

Json table_json(const FiniteGroup& g) {
  Json names = Json::array();
  for (Index x = 0; x < g.order(); ++x) names.push_back(g.element_name(x));
  return {{"order", g.order()},
          {"table", std::vector<Index>(g.table().begin(), g.table().end())},
          {"names", names}};
}

// Non-finite doubles have no JSON form.
Json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

Json optional_bound(const std::optional<Bound>& b) {
  if (!b) return nullptr;
  return {{"value", number(b->value)}, {"provenance", b->provenance}};
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail("malformed JSON in " + origin + ": " + e.what());
  }
}

FiniteGroup group_from_json(const Json& j, std::string label) {
  if (!j.is_object() || !j.contains("order") || !j.contains("table"))
    fail("group table needs fields order and table");
  const Index order = json_index(j.at("order"), "order");
  std::vector<Index> table;
  const Json& t = j.at("table");
  if (!t.is_array()) fail("invalid multiplication table");
  // Row-major flat list, or a list of rows.
  for (const auto& row : t) {
    if (row.is_array())
      for (const auto& v : row) table.push_back(json_index(v, "table"));
    else
      table.push_back(json_index(row, "table"));
  }
  std::vector<std::string> names;
  if (j.contains("names"))
    for (const auto& n : j.at("names")) names.push_back(n.get<std::string>());
  if (j.contains("label") && j.at("label").is_string()) label = j.at("label").get<std::string>();
  return FiniteGroup::from_table(order, std::move(table), std::move(label), std::move(names));
}

GroupPtr load_group_table(const std::string& path) {
  return std::make_shared<FiniteGroup>(
      group_from_json(parse_json(read_text_file(path), path), path));
}

CarrierPtr resolve_carrier(const std::string& spec) {
  if (spec.size() > 5 && spec.ends_with(".json")) return load_group_table(spec);
  return make_carrier(spec);
}

GroupFunction function_from_json(const Json& j, CarrierPtr carrier) {
  if (!j.is_object() || !j.contains("values")) fail("function file needs a values field");
  if (!carrier) {
    if (!j.contains("group_ref") || !j.at("group_ref").is_string())
      fail("function file has no group_ref and no group was given");
    carrier = resolve_carrier(j.at("group_ref").get<std::string>());
  }
  GroupFunction f(carrier);
  const Json& v = j.at("values");
  if (v.is_array()) {
    if (static_cast<Index>(v.size()) != f.size())
      fail("function has " + std::to_string(v.size()) + " values, carrier " +
           carrier->label() + " has " + std::to_string(f.size()) + " elements");
    for (Index x = 0; x < f.size(); ++x) f[x] = json_complex(v[static_cast<size_t>(x)], "values");
  } else if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      std::optional<Index> x = carrier->find_element(key);
      if (!x) fail("unknown element in function map: " + key);
      f[*x] = json_complex(value, "values");
    }
  } else {
    fail("values must be an array or an object");
  }
  // Re-run the finiteness check of the constructor.
  return GroupFunction(carrier, f.values());
}

GroupFunction load_function(const std::string& path, CarrierPtr carrier) {
  return function_from_json(parse_json(read_text_file(path), path), std::move(carrier));
}

Json function_to_json(const GroupFunction& f, const std::string& group_ref) {
  Json values = Json::array();
  for (Index x = 0; x < f.size(); ++x) values.push_back(complex_to_json(f(x)));
  return {{"group_ref", group_ref}, {"values", values}};
}

CouplingSpace coupling_from_json(const Json& j) {
  if (!j.is_object()) fail("coupling description must be an object");
  for (const char* key : {"gamma", "lambda", "p", "q"})
    if (!j.contains(key)) fail(std::string("coupling description lacks field ") + key);
  std::vector<double> weights;
  if (j.contains("weights")) {
    for (const auto& w : j.at("weights")) {
      if (!w.is_number()) fail("weights must be numbers");
      weights.push_back(w.get<double>());
    }
  } else if (j.contains("points")) {
    weights.assign(static_cast<size_t>(json_index(j.at("points"), "points")), 1.0);
  } else {
    fail("coupling description needs weights or points");
  }
  auto side = [&](const char* key) {
    const Json& s = j.at(key);
    if (!s.is_object() || !s.contains("group") || !s.contains("action"))
      fail(std::string(key) + " needs group and action");
    return std::pair{group_ref(s.at("group"), key), action_table(s.at("action"), key)};
  };
  auto [gamma, gact] = side("gamma");
  auto [lambda, lact] = side("lambda");
  const std::string label = j.value("label", std::string("coupling"));
  return me_coupling(std::move(weights), std::move(gamma), std::move(gact), std::move(lambda),
                     std::move(lact), index_list(j.at("p"), "p"), index_list(j.at("q"), "q"),
                     label);
}

CouplingSpace load_coupling(const std::string& path) {
  return coupling_from_json(parse_json(read_text_file(path), path));
}

Json coupling_to_json(const CouplingSpace& cs) {
  Json gamma = {{"group", table_json(*cs.gamma())}, {"action", cs.gamma_table()}};
  Json lambda = {{"group", table_json(*cs.lambda())}, {"action", cs.lambda_table()}};
  return {{"label", cs.label()}, {"weights", cs.space().weight}, {"gamma", gamma},
          {"lambda", lambda},    {"p", cs.p()},                  {"q", cs.q()}};
}

Embedding subgroup_preset(const std::string& spec) {
  const std::string prefix = "subgroup:";
  if (!spec.starts_with(prefix)) fail("unknown coupling preset: " + spec);
  const std::string body = spec.substr(prefix.size());
  // The first comma outside brackets separates ambient and subgroup.
  int depth = 0;
  size_t cut = std::string::npos;
  for (size_t i = 0; i < body.size() && cut == std::string::npos; ++i) {
    if (body[i] == '[') ++depth;
    if (body[i] == ']') --depth;
    if (body[i] == ',' && depth == 0) cut = i;
  }
  if (cut == std::string::npos) fail("subgroup preset must read subgroup:L,G");
  auto ambient = std::make_shared<FiniteGroup>(build_group(body.substr(0, cut)));
  const std::string sub = body.substr(cut + 1);
  if (sub.starts_with("[")) {
    if (!sub.ends_with("]")) fail("unterminated generator list: " + sub);
    std::vector<Index> gens;
    std::string item;
    std::istringstream in(sub.substr(1, sub.size() - 2));
    while (in >> item) {
      // Elements by index or by name; commas may separate entries.
      for (std::string tok; !item.empty();) {
        const size_t c = item.find(',');
        tok = item.substr(0, c);
        item = c == std::string::npos ? "" : item.substr(c + 1);
        if (tok.empty()) continue;
        std::optional<Index> x = ambient->find_element(tok);
        if (!x) fail("unknown generator " + tok + " in " + ambient->label());
        gens.push_back(*x);
      }
    }
    return generated_subgroup(ambient, gens);
  }
  auto g = std::make_shared<FiniteGroup>(build_group(sub));
  std::optional<Embedding> e = find_embedding(g, ambient);
  if (!e) fail(g->label() + " does not embed in " + ambient->label());
  return *e;
}

CouplingSpace coupling_preset(const std::string& spec) {
  return subgroup_coupling(subgroup_preset(spec));
}

Json complex_to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json to_json(const NormReport& r) {
  return {{"lower", optional_bound(r.lower)},
          {"upper", optional_bound(r.upper)},
          {"notes", r.notes},
          {"tolerance", r.tolerance}};
}

Json to_json(const VerifyResult& r) {
  return {{"residual", number(r.residual)},
          {"bound", number(r.bound)},
          {"tuples", r.tuples},
          {"certified", r.certified}};
}

Json to_json(const NetReport& r, bool with_values) {
  Json terms = Json::array();
  for (const NetTerm& t : r.terms) {
    Json term = {{"parameter", t.parameter}, {"bound", number(t.bound)}, {"deviation", t.deviation}};
    if (with_values) {
      Json v = Json::array();
      for (Complex z : t.values) v.push_back(complex_to_json(z));
      term["values"] = v;
    }
    terms.push_back(term);
  }
  return {{"label", r.label},         {"d", r.d},
          {"terms", terms},           {"constant_evidence", number(r.constant_evidence)},
          {"converged", r.converged}, {"window", r.window},
          {"threshold", r.threshold}};
}

Json to_json(const KoopmanReport& r) {
  return {{"orbits", r.orbits},
          {"unitarity_defect", r.unitarity_defect},
          {"coisometry_defect", r.coisometry_defect},
          {"intertwining_defect", r.intertwining_defect},
          {"coefficient_residual", r.coefficient_residual},
          {"norm_defect", r.norm_defect},
          {"transported_norm", r.transported_norm}};
}

Json to_json(const SchurResult& r) {
  return {{"value", number(r.value)},   {"lower", number(r.lower)},
          {"upper", number(r.upper)},   {"iterations", r.iterations},
          {"certified", r.certified},   {"engine", r.engine}};
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json RunReport::to_json() const {
  Json j = {{"command", command},
            {"args", args},
            {"inputs_digest", fnv1a_hex(inputs)},
            {"results", results},
            {"tolerances", tolerances},
            {"seed", seed},
            {"ok", ok}};
  if (wall_seconds) j["wall_seconds"] = *wall_seconds;
  return j;
}

std::string RunReport::dump() const { return to_json().dump(2) + "\n"; }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write file: " + path);
  out << text;
}

}  // namespace mdmult
