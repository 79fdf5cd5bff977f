#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pigp {

using Index = std::uint32_t;

/// Groups above this order are outside the supported range.
inline constexpr std::size_t kMaxOrder = 4096;

struct GroupData;

/// Immutable finite group on the element universe 0..n-1, identity at 0.
///
/// Products come from a dense multiplication table. Copies share the same
/// underlying data; two Group values denote the same group iff same() holds.
class Group {
public:
  /// The trivial group.
  Group();

  /// Validates the table as a Latin square with two-sided identity 0 and
  /// checks that gens generate. Associativity is not checked here.
  static Group from_table(std::size_t n, std::vector<std::uint16_t> table, std::vector<Index> gens,
                          std::string name);

  std::size_t order() const;
  const std::string &name() const;
  Group renamed(std::string name) const;

  Index mul(Index a, Index b) const { return table_[a * n_ + b]; }
  Index inv(Index a) const;
  Index pow(Index a, std::int64_t k) const;
  /// x^y = y^-1 x y.
  Index conj(Index x, Index y) const { return mul(inv(y), mul(x, y)); }
  /// [x,y] = x^-1 y^-1 x y.
  Index comm(Index x, Index y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  std::uint32_t element_order(Index a) const;

  std::span<const Index> generators() const;
  std::span<const std::uint16_t> table() const;
  bool is_abelian() const;
  bool is_trivial() const { return n_ == 1; }

  /// Optional faithful permutation representation (0-based images per generator).
  const std::vector<std::vector<std::uint32_t>> &permutation_generators() const;
  Group with_permutation_generators(std::vector<std::vector<std::uint32_t>> perms) const;

  bool same(const Group &other) const { return data_ == other.data_; }
  const void *identity_key() const { return data_.get(); }

private:
  explicit Group(std::shared_ptr<const GroupData> data);

  std::shared_ptr<const GroupData> data_;
  const std::uint16_t *table_ = nullptr;
  std::size_t n_ = 1;
};

/// An element bound to its group; arithmetic across groups is a usage error.
class Elem {
public:
  Elem(Group g, Index i);

  const Group &group() const { return group_; }
  Index index() const { return index_; }

  friend bool operator==(const Elem &a, const Elem &b) {
    return a.group_.same(b.group_) && a.index_ == b.index_;
  }

private:
  Group group_;
  Index index_;
};

Elem identity(const Group &g);
Elem operator*(const Elem &x, const Elem &y);
Elem inverse(const Elem &x);
Elem power(const Elem &x, std::int64_t k);
/// x^y = y^-1 x y
Elem conjugate(const Elem &x, const Elem &y);
/// [x,y] = x^-1 y^-1 x y
Elem commutator(const Elem &x, const Elem &y);
std::uint32_t element_order(const Elem &x);

/// Subset of a parent group closed under the operation, sorted by index.
class Subgroup {
public:
  Subgroup(Group parent, std::vector<Index> sorted_elements, std::vector<Index> gens);

  /// The whole parent group as a subgroup.
  static Subgroup whole(const Group &g);
  static Subgroup trivial(const Group &g);

  const Group &parent() const { return parent_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(Index x) const { return member_[x] != 0; }
  std::span<const Index> elements() const { return elements_; }
  std::span<const Index> generators() const { return generators_; }
  bool is_whole() const { return elements_.size() == parent_.order(); }
  bool is_trivial() const { return elements_.size() == 1; }
  bool is_normal() const;
  bool is_subset_of(const Subgroup &other) const;

  friend bool operator==(const Subgroup &a, const Subgroup &b) { return a.elements_ == b.elements_; }
  friend bool operator<(const Subgroup &a, const Subgroup &b) {
    if (a.size() != b.size())
      return a.size() < b.size();
    return a.elements_ < b.elements_;
  }

private:
  Group parent_;
  std::vector<Index> elements_;
  std::vector<Index> generators_;
  std::vector<std::uint8_t> member_;
};

/// Group homomorphism recorded by its full image table.
class Homomorphism {
public:
  Homomorphism(Group domain, Group codomain, std::vector<Index> images);

  const Group &domain() const { return domain_; }
  const Group &codomain() const { return codomain_; }
  Index operator()(Index x) const { return images_[x]; }
  std::span<const Index> images() const { return images_; }

  /// Exhaustive check of image(xy) = image(x)image(y).
  bool verify() const;
  bool is_injective() const;
  bool is_surjective() const;
  Subgroup kernel() const;

private:
  Group domain_;
  Group codomain_;
  std::vector<Index> images_;
};

struct GenerationResult {
  Subgroup subgroup;
  bool is_whole;
};

/// Smallest subgroup containing gens.
Subgroup subgroup_generated(const Group &g, std::span<const Index> gens);
GenerationResult subgroup_generated_report(const Group &g, std::span<const Index> gens);
/// Size of the subgroup generated by gens, without materializing a Subgroup.
std::size_t generated_size(const Group &g, std::span<const Index> gens);
bool generates(const Group &g, std::span<const Index> gens);

bool is_cyclic(const Group &g);
bool is_cyclic(const Subgroup &h);

std::vector<std::vector<Index>> conjugacy_classes(const Group &g);
/// Class size for every element index.
std::vector<std::uint32_t> class_sizes(const Group &g);
Subgroup center(const Group &g);
Subgroup normal_closure(const Group &g, std::span<const Index> elems);

/// All normal subgroups containing `above` (default: all), sorted by (size, elements).
std::vector<Subgroup> normal_subgroups(const Group &g, const std::optional<Subgroup> &above = {});
/// Minimal nontrivial normal subgroups, sorted by (size, elements).
std::vector<Subgroup> minimal_normal_subgroups(const Group &g);

struct Quotient {
  Group group;
  Homomorphism projection;
  /// One preimage for every quotient element (the least index in its coset).
  std::vector<Index> section;
};

Quotient quotient(const Group &g, const Subgroup &n);

/// The unique homomorphism extending gens -> images, if one exists.
std::optional<Homomorphism> homomorphism_from_images(const Group &g, std::span<const Index> gens,
                                                     const Group &h,
                                                     std::span<const Index> images);

/// Exhaustive associativity, identity and inverse checks. For n above
/// `exhaustive_limit` the triple check is sampled with the given count.
bool verify_group_axioms(const Group &g, std::size_t exhaustive_limit = 64,
                         std::size_t sampled_triples = 10000);

} // namespace pigp
