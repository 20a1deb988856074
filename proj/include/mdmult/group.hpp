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

#ifndef MDMULT_GROUP_HPP_
#define MDMULT_GROUP_HPP_

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace mdmult {

using Index = Eigen::Index;
using Complex = std::complex<double>;

/// A group, or a finite window of one, with elements as dense indices.
/// Products may be partial: `product` returns nothing when the result leaves
/// the carrier.
class Carrier {
 public:
  virtual ~Carrier() = default;

  virtual Index size() const = 0;
  virtual Index identity() const = 0;
  virtual Index inverse(Index x) const = 0;
  virtual std::optional<Index> product(Index x, Index y) const = 0;
  virtual std::string label() const = 0;
  virtual std::string element_name(Index x) const { return std::to_string(x); }

  /// True when `product` is total and the carrier is a genuine group.
  virtual bool is_group() const { return false; }

  /// Product that must exist; throws "product outside carrier" otherwise.
  Index checked_product(Index x, Index y) const;

  /// y^{-1} x, the kernel argument for positive-definiteness tests.
  std::optional<Index> left_quotient(Index y, Index x) const {
    return product(inverse(y), x);
  }

  std::optional<Index> find_element(std::string_view name) const;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

/// Finite group given by its full multiplication table.
class FiniteGroup final : public Carrier {
 public:
  /// Validates the table; row-major, table[x * order + y] = x·y.
  /// Throws "not a group" on associativity failure and
  /// "invalid multiplication table" on shape, range or Latin-square failure.
  static FiniteGroup from_table(Index order, std::vector<Index> table,
                                std::string label,
                                std::vector<std::string> names = {});

  Index size() const override { return order_; }
  Index order() const { return order_; }
  Index identity() const override { return identity_; }
  Index inverse(Index x) const override { return inv_[static_cast<size_t>(x)]; }
  Index mul(Index x, Index y) const {
    return table_[static_cast<size_t>(x * order_ + y)];
  }
  std::optional<Index> product(Index x, Index y) const override {
    return mul(x, y);
  }
  std::string label() const override { return label_; }
  std::string element_name(Index x) const override;
  bool is_group() const override { return true; }

  std::span<const Index> table() const { return table_; }

  /// Order of the element x (least k >= 1 with x^k = e).
  Index element_order(Index x) const;

 private:
  FiniteGroup() = default;

  Index order_ = 0;
  Index identity_ = 0;
  std::vector<Index> table_;
  std::vector<Index> inv_;
  std::string label_;
  std::vector<std::string> names_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

FiniteGroup cyclic_group(Index n);
/// Dihedral group of the regular n-gon, order 2n.
FiniteGroup dihedral_group(Index n);
FiniteGroup symmetric_group(Index n);
FiniteGroup alternating_group(Index n);

/// Presets: "cyclic:n", "dihedral:n", "sym:n", "alt:n"; the compact forms
/// "cyclic4", "sym3", ... are accepted as well.
FiniteGroup build_group(std::string_view spec);

/// Letters are 0..2k-1; generator i is letter 2i, its inverse 2i+1.
using Word = std::vector<std::uint8_t>;

/// All reduced words of length <= R over k free generators.
class FreeBall final : public Carrier {
 public:
  FreeBall(int generators, int radius);

  Index size() const override { return static_cast<Index>(words_.size()); }
  Index identity() const override { return 0; }
  Index inverse(Index x) const override { return inv_[static_cast<size_t>(x)]; }
  std::optional<Index> product(Index x, Index y) const override;
  std::string label() const override;
  std::string element_name(Index x) const override;

  int generators() const { return generators_; }
  int radius() const { return radius_; }
  int length(Index x) const {
    return static_cast<int>(words_[static_cast<size_t>(x)].size());
  }
  const Word& word(Index x) const { return words_[static_cast<size_t>(x)]; }
  std::optional<Index> index_of(const Word& w) const;

  /// Indices of all words of length <= r, in enumeration order.
  std::vector<Index> ball(int r) const;

  /// Tree distance |x^{-1} y| between two carrier vertices.
  int distance(Index x, Index y) const;

  /// Point n of the geodesic ray from v that descends to the base ray a^k
  /// (a = first generator) and then follows it outward.
  /// Throws "radius exhausted" if the point leaves the carrier.
  Index ray_point(Index v, int n) const;

  /// Number of reduced words of length exactly j: 2k(2k-1)^{j-1}.
  static Index sphere_size(int generators, int j);

 private:
  int generators_;
  int radius_;
  std::vector<Word> words_;
  std::vector<Index> inv_;
  std::map<Word, Index> index_;
};

/// The integers in [-N, N] with partial addition. Element index i <-> i - N.
class IntegerWindow final : public Carrier {
 public:
  explicit IntegerWindow(Index halfwidth);

  Index size() const override { return 2 * halfwidth_ + 1; }
  Index identity() const override { return halfwidth_; }
  Index inverse(Index x) const override { return 2 * halfwidth_ - x; }
  std::optional<Index> product(Index x, Index y) const override;
  std::string label() const override;
  std::string element_name(Index x) const override {
    return std::to_string(value(x));
  }

  Index halfwidth() const { return halfwidth_; }
  Index value(Index x) const { return x - halfwidth_; }
  std::optional<Index> index_of(Index m) const;

 private:
  Index halfwidth_;
};

/// Builds any carrier: group presets, "freeball:k,R", "window:N".
CarrierPtr make_carrier(std::string_view spec);

/// Word metric length, when the carrier has one (free ball, window).
std::optional<int> word_length(const Carrier& c, Index x);

/// Complex-valued function on a carrier.
class GroupFunction {
 public:
  explicit GroupFunction(CarrierPtr carrier);
  GroupFunction(CarrierPtr carrier, Eigen::VectorXcd values);

  template <class F>
  static GroupFunction generate(CarrierPtr carrier, F&& f) {
    GroupFunction out(std::move(carrier));
    for (Index x = 0; x < out.size(); ++x) out.values_[x] = f(x);
    return out;
  }
  static GroupFunction constant(CarrierPtr carrier, Complex value);
  static GroupFunction delta(CarrierPtr carrier, Index x);

  const Carrier& carrier() const { return *carrier_; }
  const CarrierPtr& carrier_ptr() const { return carrier_; }
  Index size() const { return values_.size(); }

  Complex operator()(Index x) const { return values_[x]; }
  Complex& operator[](Index x) { return values_[x]; }
  const Eigen::VectorXcd& values() const { return values_; }
  Eigen::VectorXcd& values() { return values_; }

  double sup_norm() const;
  double l1_norm() const;
  bool is_zero() const { return values_.isZero(0.0); }

 private:
  CarrierPtr carrier_;
  Eigen::VectorXcd values_;
};

bool same_carrier(const GroupFunction& a, const GroupFunction& b);

GroupFunction operator+(const GroupFunction& a, const GroupFunction& b);
GroupFunction operator-(const GroupFunction& a, const GroupFunction& b);
/// Pointwise product.
GroupFunction operator*(const GroupFunction& a, const GroupFunction& b);
GroupFunction operator*(Complex s, const GroupFunction& f);

/// x -> f(x^{-1})
GroupFunction reflect(const GroupFunction& f);

// Subgroups ------------------------------------------------------------------

/// An injective homomorphism sub -> ambient.
struct Embedding {
  GroupPtr sub;
  GroupPtr ambient;
  std::vector<Index> map;  // sub index -> ambient index
};

/// Checks that `map` is an injective homomorphism; throws otherwise.
Embedding make_embedding(GroupPtr sub, GroupPtr ambient, std::vector<Index> map);

/// The subgroup generated by `generators`, as its own FiniteGroup with the
/// inclusion map.
Embedding generated_subgroup(GroupPtr ambient, std::span<const Index> generators);

/// The subgroup consisting of the listed elements; throws
/// "not closed under products" if the set is not a subgroup.
Embedding subgroup_from_elements(GroupPtr ambient, std::span<const Index> elements);

/// First injective homomorphism sub -> ambient found by a deterministic
/// search over generator images; nullopt if none exists.
std::optional<Embedding> find_embedding(GroupPtr sub, GroupPtr ambient);

}  // namespace mdmult

#endif  // MDMULT_GROUP_HPP_
