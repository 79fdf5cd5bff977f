#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "pigp/group.hpp"

namespace pigp {

inline constexpr std::uint64_t kDefaultAutBudget = 10'000'000;
inline constexpr std::size_t kDefaultAutMaxOrder = 2000;

/// Every automorphism of a group, as image tables. Entry 0 is the identity.
class AutGroup {
public:
  AutGroup(Group g, std::vector<std::uint16_t> flat_tables);

  const Group &group() const { return group_; }
  std::size_t size() const { return count_; }
  std::span<const std::uint16_t> table(std::size_t i) const {
    return {flat_.data() + i * n_, n_};
  }
  Index apply(std::size_t i, Index x) const { return flat_[i * n_ + x]; }
  Homomorphism automorphism(std::size_t i) const;
  /// Position of an image table, or -1.
  std::ptrdiff_t find(std::span<const std::uint16_t> table) const;

  /// Closure under composition: exhaustive for small groups, sampled otherwise.
  bool verify_closed(std::size_t exhaustive_limit = 2000, std::size_t samples = 20000) const;

private:
  Group group_;
  std::size_t n_;
  std::size_t count_;
  std::vector<std::uint16_t> flat_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_hash_;
};

/// Raises CapacityError when the order exceeds max_order or the search exceeds
/// node_budget.
AutGroup automorphism_group(const Group &g, std::uint64_t node_budget = kDefaultAutBudget,
                            std::size_t max_order = kDefaultAutMaxOrder);

/// Automorphisms mapping n onto itself.
AutGroup stabilizer_of_subgroup(const AutGroup &a, const Subgroup &n);

struct InducedReps {
  /// Aut(Q) positions hit by the stabilizer of N.
  std::vector<std::uint32_t> image;
  /// Aut(Q) positions c with Aut(Q) the disjoint union of image * c; identity first.
  std::vector<std::uint32_t> coset_reps;
};

/// Image of Stab(N) in Aut(Q) for Q = G/N, and right coset representatives for it.
InducedReps induced_coset_reps(const AutGroup &aut_g, const Subgroup &n, const Quotient &q,
                               const AutGroup &aut_q);

/// Sorted, duplicate-free componentwise orbit of a tuple.
std::vector<std::vector<Index>> tuple_orbit(std::span<const Index> t, const AutGroup &a);

} // namespace pigp
