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

#include "mdmult/group.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "mdmult/error.hpp"

namespace mdmult {

Index Carrier::checked_product(Index x, Index y) const {
  auto z = product(x, y);
  if (!z) fail("product outside carrier: " + element_name(x) + " * " + element_name(y));
  return *z;
}

std::optional<Index> Carrier::find_element(std::string_view name) const {
  for (Index x = 0; x < size(); ++x)
    if (element_name(x) == name) return x;
  return std::nullopt;
}

// FiniteGroup ----------------------------------------------------------------

FiniteGroup FiniteGroup::from_table(Index order, std::vector<Index> table,
                                    std::string label,
                                    std::vector<std::string> names) {
  if (order < 1) fail("invalid multiplication table: order must be positive");
  if (static_cast<Index>(table.size()) != order * order)
    fail("invalid multiplication table: expected " + std::to_string(order * order) +
         " entries, got " + std::to_string(table.size()));
  for (Index v : table)
    if (v < 0 || v >= order) fail("invalid multiplication table: entry out of range");
  if (!names.empty() && static_cast<Index>(names.size()) != order)
    fail("invalid multiplication table: names do not match order");

  FiniteGroup g;
  g.order_ = order;
  g.table_ = std::move(table);
  g.label_ = std::move(label);
  g.names_ = std::move(names);

  // Associativity first: a single corrupted entry of a Cayley table breaks the
  // Latin property too, and the more specific diagnosis is the useful one.
  for (Index x = 0; x < order; ++x)
    for (Index y = 0; y < order; ++y) {
      const Index xy = g.mul(x, y);
      for (Index z = 0; z < order; ++z)
        if (g.mul(xy, z) != g.mul(x, g.mul(y, z))) fail("not a group: associativity fails");
    }

  std::vector<char> seen(static_cast<size_t>(order));
  for (int pass = 0; pass < 2; ++pass)
    for (Index a = 0; a < order; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (Index b = 0; b < order; ++b) {
        const Index v = pass == 0 ? g.mul(a, b) : g.mul(b, a);
        if (seen[static_cast<size_t>(v)]++) fail("invalid multiplication table: not a Latin square");
      }
    }

  Index e = -1;
  for (Index x = 0; x < order && e < 0; ++x) {
    bool ok = true;
    for (Index y = 0; y < order && ok; ++y) ok = g.mul(x, y) == y && g.mul(y, x) == y;
    if (ok) e = x;
  }
  if (e < 0) fail("not a group: no identity element");
  g.identity_ = e;

  g.inv_.assign(static_cast<size_t>(order), -1);
  for (Index x = 0; x < order; ++x)
    for (Index y = 0; y < order; ++y)
      if (g.mul(x, y) == e) g.inv_[static_cast<size_t>(x)] = y;
  for (Index x = 0; x < order; ++x)
    if (g.mul(g.inverse(x), x) != e) fail("not a group: inverse is not two-sided");
  return g;
}

std::string FiniteGroup::element_name(Index x) const {
  if (names_.empty()) return std::to_string(x);
  return names_[static_cast<size_t>(x)];
}

Index FiniteGroup::element_order(Index x) const {
  Index k = 1;
  for (Index y = x; y != identity_; y = mul(y, x)) ++k;
  return k;
}

FiniteGroup cyclic_group(Index n) {
  require(n >= 1 && n <= 4096, "cyclic group order must lie in [1, 4096]");
  std::vector<Index> t(static_cast<size_t>(n * n));
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) t[static_cast<size_t>(x * n + y)] = (x + y) % n;
  return FiniteGroup::from_table(n, std::move(t), "cyclic:" + std::to_string(n));
}

FiniteGroup dihedral_group(Index n) {
  require(n >= 1 && n <= 512, "dihedral parameter must lie in [1, 512]");
  // r^i s^a has index i + n a; (r^i s^a)(r^k s^b) = r^{i + (-1)^a k} s^{a+b}.
  const Index order = 2 * n;
  std::vector<Index> t(static_cast<size_t>(order * order));
  std::vector<std::string> names(static_cast<size_t>(order));
  for (Index x = 0; x < order; ++x) {
    const Index i = x % n, a = x / n;
    names[static_cast<size_t>(x)] = (i == 0 && a == 0) ? "e"
        : (i == 0 ? std::string() : "r" + std::to_string(i)) + (a ? "s" : "");
    for (Index y = 0; y < order; ++y) {
      const Index k = y % n, b = y / n;
      const Index j = ((a ? i - k : i + k) % n + n) % n;
      t[static_cast<size_t>(x * order + y)] = j + n * ((a + b) % 2);
    }
  }
  return FiniteGroup::from_table(order, std::move(t), "dihedral:" + std::to_string(n),
                                 std::move(names));
}

namespace {

using Perm = std::vector<int>;

std::string perm_name(const Perm& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s + "]";
}

bool is_even(const Perm& p) {
  int inversions = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  return inversions % 2 == 0;
}

// Permutations of {0..n-1} in lexicographic order (so the identity is index 0),
// composed as (pq)(i) = p(q(i)).
FiniteGroup permutation_group(Index n, bool even_only, std::string label) {
  std::vector<Perm> perms;
  Perm p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!even_only || is_even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<Perm, Index> index;
  for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Index>(i);
  const Index order = static_cast<Index>(perms.size());
  std::vector<Index> t(static_cast<size_t>(order * order));
  std::vector<std::string> names;
  Perm c(static_cast<size_t>(n));
  for (Index x = 0; x < order; ++x) {
    names.push_back(perm_name(perms[static_cast<size_t>(x)]));
    for (Index y = 0; y < order; ++y) {
      for (Index i = 0; i < n; ++i)
        c[static_cast<size_t>(i)] =
            perms[static_cast<size_t>(x)][static_cast<size_t>(perms[static_cast<size_t>(y)][static_cast<size_t>(i)])];
      t[static_cast<size_t>(x * order + y)] = index.at(c);
    }
  }
  return FiniteGroup::from_table(order, std::move(t), std::move(label), std::move(names));
}

Index parse_index(std::string_view s, std::string_view what) {
  Index v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

// Splits "name:arg" or "name<digits>" into (name, arg).
std::pair<std::string, std::string> split_preset(std::string_view spec) {
  if (auto c = spec.find(':'); c != std::string_view::npos)
    return {std::string(spec.substr(0, c)), std::string(spec.substr(c + 1))};
  size_t i = spec.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(spec[i - 1]))) --i;
  return {std::string(spec.substr(0, i)), std::string(spec.substr(i))};
}

}  // namespace

FiniteGroup symmetric_group(Index n) {
  require(n >= 1 && n <= 5, "symmetric group degree must lie in [1, 5]");
  return permutation_group(n, false, "sym:" + std::to_string(n));
}

FiniteGroup alternating_group(Index n) {
  require(n >= 1 && n <= 5, "alternating group degree must lie in [1, 5]");
  return permutation_group(n, true, "alt:" + std::to_string(n));
}

FiniteGroup build_group(std::string_view spec) {
  auto [name, arg] = split_preset(spec);
  if (arg.empty()) fail("group preset needs a parameter: '" + std::string(spec) + "'");
  const Index n = parse_index(arg, "group parameter");
  if (name == "cyclic" || name == "z" || name == "Z") return cyclic_group(n);
  if (name == "dihedral" || name == "D") return dihedral_group(n);
  if (name == "sym" || name == "symmetric" || name == "S") return symmetric_group(n);
  if (name == "alt" || name == "alternating" || name == "A") return alternating_group(n);
  fail("unknown group preset: '" + std::string(spec) + "'");
}

// FreeBall -------------------------------------------------------------------

FreeBall::FreeBall(int generators, int radius) : generators_(generators), radius_(radius) {
  require(generators >= 1 && generators <= 26, "free ball needs 1..26 generators");
  require(radius >= 0, "free ball radius must be nonnegative");
  Index total = 0;
  for (int j = 0; j <= radius; ++j) {
    total += sphere_size(generators, j);
    require(total <= 2'000'000, "free ball too large");
  }
  words_.reserve(static_cast<size_t>(total));
  words_.emplace_back();
  size_t level_begin = 0;
  for (int j = 1; j <= radius; ++j) {
    const size_t level_end = words_.size();
    for (size_t w = level_begin; w < level_end; ++w)
      for (int l = 0; l < 2 * generators; ++l) {
        const Word& base = words_[w];
        if (!base.empty() && (base.back() ^ 1) == l) continue;
        Word next = base;
        next.push_back(static_cast<std::uint8_t>(l));
        words_.push_back(std::move(next));
      }
    level_begin = level_end;
  }
  for (size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], static_cast<Index>(i));
  inv_.resize(words_.size());
  for (size_t i = 0; i < words_.size(); ++i) {
    Word w(words_[i].rbegin(), words_[i].rend());
    for (auto& l : w) l ^= 1;
    inv_[i] = index_.at(w);
  }
}

Index FreeBall::sphere_size(int generators, int j) {
  if (j == 0) return 1;
  Index s = 2 * generators;
  for (int i = 1; i < j; ++i) s *= 2 * generators - 1;
  return s;
}

std::optional<Index> FreeBall::index_of(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> FreeBall::product(Index x, Index y) const {
  const Word& a = word(x);
  const Word& b = word(y);
  size_t c = 0;
  while (c < a.size() && c < b.size() && (a[a.size() - 1 - c] ^ 1) == b[c]) ++c;
  if (a.size() + b.size() - 2 * c > static_cast<size_t>(radius_)) return std::nullopt;
  Word w(a.begin(), a.end() - static_cast<std::ptrdiff_t>(c));
  w.insert(w.end(), b.begin() + static_cast<std::ptrdiff_t>(c), b.end());
  return index_.at(w);
}

std::string FreeBall::label() const {
  return "freeball:" + std::to_string(generators_) + "," + std::to_string(radius_);
}

std::string FreeBall::element_name(Index x) const {
  const Word& w = word(x);
  if (w.empty()) return "e";
  std::string s;
  for (auto l : w) s += static_cast<char>((l & 1 ? 'A' : 'a') + l / 2);
  return s;
}

std::vector<Index> FreeBall::ball(int r) const {
  std::vector<Index> out;
  for (Index x = 0; x < size() && length(x) <= r; ++x) out.push_back(x);
  return out;
}

int FreeBall::distance(Index x, Index y) const {
  const Word& a = word(x);
  const Word& b = word(y);
  size_t l = 0;
  while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
  return static_cast<int>(a.size() + b.size() - 2 * l);
}

Index FreeBall::ray_point(Index v, int n) const {
  require(n >= 0, "ray parameter must be nonnegative");
  const Word& w = word(v);
  size_t j = 0;
  while (j < w.size() && w[j] == 0) ++j;
  const size_t down = w.size() - j;
  Word out;
  if (static_cast<size_t>(n) <= down) {
    out.assign(w.begin(), w.end() - n);
  } else {
    const size_t len = j + static_cast<size_t>(n) - down;
    if (len > static_cast<size_t>(radius_)) fail("radius exhausted");
    out.assign(len, 0);
  }
  return index_.at(out);
}

// IntegerWindow --------------------------------------------------------------

IntegerWindow::IntegerWindow(Index halfwidth) : halfwidth_(halfwidth) {
  require(halfwidth >= 1 && halfwidth <= 1'000'000, "window halfwidth must lie in [1, 1e6]");
}

std::optional<Index> IntegerWindow::product(Index x, Index y) const {
  return index_of(value(x) + value(y));
}

std::optional<Index> IntegerWindow::index_of(Index m) const {
  if (m < -halfwidth_ || m > halfwidth_) return std::nullopt;
  return m + halfwidth_;
}

std::string IntegerWindow::label() const { return "window:" + std::to_string(halfwidth_); }

CarrierPtr make_carrier(std::string_view spec) {
  auto [name, arg] = split_preset(spec);
  if (name == "freeball") {
    auto c = arg.find(',');
    if (c == std::string::npos) fail("freeball preset expects freeball:k,R");
    const Index k = parse_index(std::string_view(arg).substr(0, c), "generator count");
    const Index r = parse_index(std::string_view(arg).substr(c + 1), "radius");
    require(k >= 1 && k <= 26 && r >= 0 && r <= 64, "freeball parameters out of range");
    return std::make_shared<FreeBall>(static_cast<int>(k), static_cast<int>(r));
  }
  if (name == "window") return std::make_shared<IntegerWindow>(parse_index(arg, "window halfwidth"));
  return std::make_shared<FiniteGroup>(build_group(spec));
}

std::optional<int> word_length(const Carrier& c, Index x) {
  if (auto* b = dynamic_cast<const FreeBall*>(&c)) return b->length(x);
  if (auto* w = dynamic_cast<const IntegerWindow*>(&c))
    return static_cast<int>(std::abs(w->value(x)));
  return std::nullopt;
}

// GroupFunction --------------------------------------------------------------

GroupFunction::GroupFunction(CarrierPtr carrier) : carrier_(std::move(carrier)) {
  require(carrier_ != nullptr, "function needs a carrier");
  values_ = Eigen::VectorXcd::Zero(carrier_->size());
}

GroupFunction::GroupFunction(CarrierPtr carrier, Eigen::VectorXcd values)
    : carrier_(std::move(carrier)), values_(std::move(values)) {
  require(carrier_ != nullptr, "function needs a carrier");
  if (values_.size() != carrier_->size())
    fail("function has " + std::to_string(values_.size()) + " values but the carrier has " +
         std::to_string(carrier_->size()) + " elements");
  if (!values_.allFinite()) fail("function values must be finite");
}

GroupFunction GroupFunction::constant(CarrierPtr carrier, Complex value) {
  GroupFunction f(std::move(carrier));
  f.values_.setConstant(value);
  return f;
}

GroupFunction GroupFunction::delta(CarrierPtr carrier, Index x) {
  GroupFunction f(std::move(carrier));
  require(x >= 0 && x < f.size(), "delta point outside carrier");
  f.values_[x] = 1.0;
  return f;
}

double GroupFunction::sup_norm() const {
  return values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0;
}

double GroupFunction::l1_norm() const { return values_.cwiseAbs().sum(); }

bool same_carrier(const GroupFunction& a, const GroupFunction& b) {
  return a.carrier_ptr() == b.carrier_ptr() ||
         (a.carrier().label() == b.carrier().label() && a.size() == b.size());
}

namespace {
void check_same(const GroupFunction& a, const GroupFunction& b) {
  if (!same_carrier(a, b))
    fail("carrier mismatch: " + a.carrier().label() + " vs " + b.carrier().label());
}
}  // namespace

GroupFunction operator+(const GroupFunction& a, const GroupFunction& b) {
  check_same(a, b);
  return GroupFunction(a.carrier_ptr(), a.values() + b.values());
}

GroupFunction operator-(const GroupFunction& a, const GroupFunction& b) {
  check_same(a, b);
  return GroupFunction(a.carrier_ptr(), a.values() - b.values());
}

GroupFunction operator*(const GroupFunction& a, const GroupFunction& b) {
  check_same(a, b);
  return GroupFunction(a.carrier_ptr(), a.values().cwiseProduct(b.values()));
}

GroupFunction operator*(Complex s, const GroupFunction& f) {
  return GroupFunction(f.carrier_ptr(), s * f.values());
}

GroupFunction reflect(const GroupFunction& f) {
  const Carrier& c = f.carrier();
  return GroupFunction::generate(f.carrier_ptr(), [&](Index x) { return f(c.inverse(x)); });
}

// Subgroups ------------------------------------------------------------------

Embedding make_embedding(GroupPtr sub, GroupPtr ambient, std::vector<Index> map) {
  require(sub && ambient, "embedding needs both groups");
  require(static_cast<Index>(map.size()) == sub->order(), "embedding map has the wrong size");
  std::set<Index> image;
  for (Index v : map) {
    require(v >= 0 && v < ambient->order(), "embedding image outside the ambient group");
    require(image.insert(v).second, "embedding is not injective");
  }
  for (Index x = 0; x < sub->order(); ++x)
    for (Index y = 0; y < sub->order(); ++y)
      if (map[static_cast<size_t>(sub->mul(x, y))] !=
          ambient->mul(map[static_cast<size_t>(x)], map[static_cast<size_t>(y)]))
        fail("embedding is not a homomorphism");
  return {std::move(sub), std::move(ambient), std::move(map)};
}

Embedding subgroup_from_elements(GroupPtr ambient, std::span<const Index> elements) {
  std::vector<Index> el(elements.begin(), elements.end());
  std::sort(el.begin(), el.end());
  el.erase(std::unique(el.begin(), el.end()), el.end());
  require(!el.empty(), "subgroup needs at least one element");
  for (Index v : el) require(v >= 0 && v < ambient->order(), "subgroup element outside group");
  std::map<Index, Index> local;
  for (size_t i = 0; i < el.size(); ++i) local[el[i]] = static_cast<Index>(i);
  const Index m = static_cast<Index>(el.size());
  std::vector<Index> t(static_cast<size_t>(m * m));
  std::vector<std::string> names;
  for (Index i = 0; i < m; ++i) {
    names.push_back(ambient->element_name(el[static_cast<size_t>(i)]));
    for (Index j = 0; j < m; ++j) {
      auto it = local.find(ambient->mul(el[static_cast<size_t>(i)], el[static_cast<size_t>(j)]));
      if (it == local.end()) fail("not closed under products");
      t[static_cast<size_t>(i * m + j)] = it->second;
    }
  }
  std::string label = ambient->label() + "{";
  for (size_t i = 0; i < el.size(); ++i) label += (i ? "," : "") + std::to_string(el[i]);
  label += "}";
  auto sub = std::make_shared<FiniteGroup>(
      FiniteGroup::from_table(m, std::move(t), std::move(label), std::move(names)));
  return make_embedding(std::move(sub), std::move(ambient), std::move(el));
}

Embedding generated_subgroup(GroupPtr ambient, std::span<const Index> generators) {
  std::set<Index> el{ambient->identity()};
  std::vector<Index> frontier{ambient->identity()};
  for (Index g : generators) require(g >= 0 && g < ambient->order(), "generator outside group");
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (Index x : frontier)
      for (Index g : generators) {
        const Index y = ambient->mul(x, g);
        if (el.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::vector<Index> v(el.begin(), el.end());
  return subgroup_from_elements(std::move(ambient), v);
}

std::optional<Embedding> find_embedding(GroupPtr sub, GroupPtr ambient) {
  // Greedy generating set: add the least element not yet generated.
  std::vector<Index> gens;
  std::set<Index> generated{sub->identity()};
  for (Index x = 0; x < sub->order(); ++x) {
    if (generated.count(x)) continue;
    gens.push_back(x);
    std::vector<Index> frontier(generated.begin(), generated.end());
    while (!frontier.empty()) {
      std::vector<Index> next;
      for (Index y : frontier)
        for (Index g : gens) {
          const Index z = sub->mul(y, g);
          if (generated.insert(z).second) next.push_back(z);
        }
      frontier = std::move(next);
    }
  }

  // Extends an assignment of generator images to a map by walking words;
  // returns false on a conflict.
  auto extend = [&](const std::vector<Index>& img, std::vector<Index>& map) {
    map.assign(static_cast<size_t>(sub->order()), -1);
    map[static_cast<size_t>(sub->identity())] = ambient->identity();
    std::vector<Index> frontier{sub->identity()};
    while (!frontier.empty()) {
      std::vector<Index> next;
      for (Index y : frontier)
        for (size_t k = 0; k < gens.size(); ++k) {
          const Index z = sub->mul(y, gens[k]);
          const Index fz = ambient->mul(map[static_cast<size_t>(y)], img[k]);
          Index& slot = map[static_cast<size_t>(z)];
          if (slot < 0) {
            slot = fz;
            next.push_back(z);
          } else if (slot != fz) {
            return false;
          }
        }
      frontier = std::move(next);
    }
    return true;
  };

  std::vector<Index> img(gens.size(), 0);
  std::vector<Index> map;
  std::function<std::optional<Embedding>(size_t)> search = [&](size_t k) -> std::optional<Embedding> {
    if (k == gens.size()) {
      if (!extend(img, map)) return std::nullopt;
      try {
        return make_embedding(sub, ambient, map);
      } catch (const Error&) {
        return std::nullopt;
      }
    }
    const Index ord = sub->element_order(gens[k]);
    for (Index a = 0; a < ambient->order(); ++a) {
      if (ambient->element_order(a) != ord) continue;
      img[k] = a;
      if (auto e = search(k + 1)) return e;
    }
    return std::nullopt;
  };
  return search(0);
}

}  // namespace mdmult
