#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pigp/group.hpp"

namespace pigp {

/// Exponents n_{l,i} of the primary decomposition, ascending for each prime l.
using PrimaryDecomposition = std::map<std::int64_t, std::vector<int>>;

PrimaryDecomposition primary_decomposition(std::span<const std::int64_t> factors);

/// Direct product of cyclic groups Z/f_1 x ... x Z/f_k. Element index is the
/// mixed-radix encoding of the coordinate tuple with f_1 varying fastest; the
/// i-th generator is the i-th unit vector.
Group abelian_group(std::span<const std::int64_t> factors);
Group abelian_group(std::initializer_list<std::int64_t> factors);
Group cyclic_group(std::int64_t n);
/// Prime-power factor lists of every abelian group of order n, one per isomorphism class.
std::vector<std::vector<std::int64_t>> abelian_types(std::int64_t n);
Group elementary_abelian(std::int64_t p, int k);

/// Coordinates of an element of abelian_group(factors).
std::vector<std::int64_t> abelian_coordinates(std::span<const std::int64_t> factors, Index x);
Index abelian_index(std::span<const std::int64_t> factors, std::span<const std::int64_t> coords);

/// V x| T on pairs (v, t) with (v,t)(v',t') = (v * act_t(v'), t t').
/// gen_actions[j] is the full image table on V of T.generators()[j]; the
/// extension to all of T must be a homomorphism T -> Aut(V).
/// Element (v, t) has index t * |V| + v.
Group semidirect_product(const Group &v, const Group &t,
                         std::span<const std::vector<Index>> gen_actions, std::string name = "");
Group direct_product(const Group &a, const Group &b, std::string name = "");

/// <x, y | x^k = y^l, y^m = 1, y^x = y^r> realized on pairs (i, j) = x^i y^j,
/// index i * m + j. Returns nullopt unless m | r^k - 1 and l (r - 1) = 0 mod m.
std::optional<Group> metacyclic_group(std::int64_t k, std::int64_t m, std::int64_t l,
                                      std::int64_t r);

Group quaternion8();
/// Upper unitriangular 3x3 matrices over F_p, triples (a, b, c) with
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
Group heisenberg(std::int64_t p);
Group dihedral(std::int64_t m);
/// F_p^k x| C_2 with the involution acting by inversion.
Group generalized_dihedral(std::int64_t p, int k);
/// Automorphism table of abelian_group(factors) given by scalar multiplication.
std::vector<Index> abelian_scalar_automorphism(std::span<const std::int64_t> factors,
                                               std::int64_t scalar);

/// Closure of 0-based permutations; the product x*y applies x first, then y.
Group permutation_group(std::span<const std::vector<std::uint32_t>> gens, std::string name = "");
Group symmetric_group(int degree);
Group alternating_group(int degree);

struct GroupFingerprint {
  std::size_t order = 0;
  /// (element order, count)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> element_orders;
  /// prime-power invariants of G/G', ascending
  std::vector<std::int64_t> abelian_invariants;
  /// |G|, |G'|, |G''|, ... until it stabilizes
  std::vector<std::size_t> derived_series;
  /// (class size, number of classes)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> class_sizes;
  /// (element order, class size, count)
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> order_class_profile;

  auto operator<=>(const GroupFingerprint &) const = default;
};

GroupFingerprint fingerprint(const Group &g);

/// Prime-power invariants of an abelian group, ascending.
std::vector<std::int64_t> abelian_invariants(const Group &g);

/// Small generating set, sorted by descending element order.
std::vector<Index> small_generating_set(const Group &g);

/// An isomorphism G -> H, if any.
std::optional<Homomorphism> find_isomorphism(const Group &g, const Group &h,
                                             std::uint64_t node_budget = 10'000'000);
bool are_isomorphic(const Group &g, const Group &h, std::uint64_t node_budget = 10'000'000);

} // namespace pigp
