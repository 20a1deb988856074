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

#ifndef MDMULT_IO_HPP_
#define MDMULT_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mdmult/constructions.hpp"
#include "mdmult/coupling.hpp"
#include "mdmult/group.hpp"
#include "mdmult/norms.hpp"

namespace mdmult {

using Json = nlohmann::json;

std::string read_text_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& origin);

/// {"order": n, "table": [row-major n*n entries], "names": [...] optional}.
FiniteGroup group_from_json(const Json& j, std::string label);
GroupPtr load_group_table(const std::string& path);

/// A preset spec or, when it names an existing .json file, a table file.
CarrierPtr resolve_carrier(const std::string& spec);

/// {"group_ref": spec, "values": [...] | {"name": value}}. A value is a
/// number or [re, im]. Missing map entries are zero. When `carrier` is null
/// the group_ref is resolved.
GroupFunction function_from_json(const Json& j, CarrierPtr carrier);
GroupFunction load_function(const std::string& path, CarrierPtr carrier = nullptr);
Json function_to_json(const GroupFunction& f, const std::string& group_ref);

/// {"label", "weights": [...] or "points": n, "gamma": {"group", "action"},
///  "lambda": {"group", "action"}, "p": [...], "q": [...]}; "group" is a
/// preset string or an inline table object.
CouplingSpace coupling_from_json(const Json& j);
CouplingSpace load_coupling(const std::string& path);
Json coupling_to_json(const CouplingSpace& cs);

/// "subgroup:L,G": G either a preset (embedded by the first injective
/// homomorphism found) or a generator list "[a b ...]" of elements of L.
Embedding subgroup_preset(const std::string& spec);
CouplingSpace coupling_preset(const std::string& spec);

Json complex_to_json(Complex z);
Json to_json(const NormReport& r);
Json to_json(const VerifyResult& r);
Json to_json(const NetReport& r, bool with_values = false);
Json to_json(const KoopmanReport& r);
Json to_json(const SchurResult& r);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view bytes);

/// Stable JSON report: keys are sorted, wall time only when requested.
struct RunReport {
  std::string command;
  std::vector<std::string> args;
  std::string inputs;  // concatenated input bytes, digested
  Json results = Json::object();
  Json tolerances = Json::object();
  std::uint64_t seed = 0;
  std::optional<double> wall_seconds;
  bool ok = true;

  Json to_json() const;
  std::string dump() const;
};

/// Writes to `path`, or stdout when empty or "-".
void write_output(const std::string& path, const std::string& text);

}  // namespace mdmult

#endif  // MDMULT_IO_HPP_
