#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pigp/group.hpp"

namespace pigp {

/// G ⊇ G0 ⊇ G1 with generators sigma of G/G0 and tau of G0/G1.
struct TameStructure {
  Group group;
  Subgroup g0;
  Subgroup g1;
  Index sigma;
  Index tau;
};

/// Checks every clause of the definition; on failure names the first broken clause in *why.
bool validate_tame_structure(const TameStructure &ts, std::int64_t p, std::string *why = nullptr);

/// Calls f(sigma, tau) for each pair with tau^sigma = tau^p whose images generate G/V,
/// in lexicographic order, until f returns false.
void for_each_tame_pair(const Group &g, const Quotient &t, std::int64_t p,
                        const std::function<bool(Index, Index)> &f);

struct PotentialVerdict {
  bool potentially_realizable = false;
  /// Decided by the cyclic tame quotient shortcut.
  bool cyclic_tame_quotient = false;
  /// G ⊇ G0 V ⊇ V built from a tame pair; present exactly when a tame pair exists.
  std::optional<TameStructure> witness;
};

/// The screening test run on G/V (a tame structure on G exists iff one with G1 = V does),
/// plus a verified witness.
PotentialVerdict is_potentially_realizable(const Group &g, std::int64_t p);

/// The screening test alone, applied to g as given.
bool potential_screen(const Group &g, std::int64_t p);

/// One structure per valid (G0, G1); capacity error above max_order.
std::vector<TameStructure> tame_structures(const Group &g, std::int64_t p,
                                           std::size_t max_order = 200);

/// Distinct metacyclic groups <x, y | x^k = y^l, y^m = 1, y^x = y^p> of order n = k m,
/// for m | p^k - 1 and l a multiple of m / gcd(m, p - 1) in [0, m).
std::vector<Group> tame_potential_groups(std::int64_t n, std::int64_t p);

/// A subgroup H with H ∩ V = 1 and HV = G, built from lifts of generators of G/V.
std::optional<Subgroup> find_complement(const Group &g, const Subgroup &v);
bool semidirect_conjecture_holds(const Group &g, std::int64_t p);

} // namespace pigp
