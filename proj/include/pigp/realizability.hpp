#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pigp/catalog.hpp"
#include "pigp/fp_linear.hpp"
#include "pigp/group.hpp"

namespace pigp {

class Counter;

/// A representation of a group by matrices for its generators.
struct FpRep {
  std::int64_t p = 3;
  int dim = 0;
  std::vector<fp::Mat> gens;
};

/// V/W with the conjugation action of T = G/V.
struct FpTModule {
  Group group;
  std::int64_t p = 3;
  Subgroup v;
  Subgroup w;
  Quotient t;
  /// Elements of V whose images form a basis of V/W.
  std::vector<Index> basis;
  /// Coordinates of each element of V (indexed by position in v.elements()).
  std::vector<fp::Vec> coords;
  /// Generators of T (quotient indices) and their matrices in rep.gens.
  std::vector<Index> t_generators;
  FpRep rep;

  fp::Vec coordinates(Index x) const;
  /// Matrix of conjugation by any element of G; column j is the image of basis[j].
  fp::Mat action_of(Index g) const;
};

FpTModule vw_module(const Group &g, std::int64_t p);

struct Summand {
  /// Columns span the summand inside the ambient module.
  fp::Mat basis;
  int dim = 0;
  FpRep rep;
  bool irreducible = false;
};

struct Decomposition {
  /// One representative summand per isomorphism class, with its multiplicity.
  std::vector<std::pair<Summand, int>> classes;
  int max_multiplicity = 0;
  int dim = 0;

  /// For example "1^2 ⊕ 1"; "0" for the zero module.
  std::string shape() const;
};

/// Indecomposable decomposition for dim <= max_dim (capacity error above).
Decomposition decompose(const FpRep &m, int max_dim = 8);

/// No proper nonzero invariant subspace.
bool is_irreducible(const FpRep &m);

struct Predicates {
  bool ss = true;
  bool td = true;
  bool xc = true;
  /// A tame pair violating each predicate, when one does.
  std::optional<std::pair<Index, Index>> ss_witness, td_witness, xc_witness;
};

Predicates predicates_ss_td_xc(const Group &g, std::int64_t p);

/// Largest multiplicity exceeds 1 + n_ss + n_xc; true certifies G is not p-realizable.
/// Predicates of G/W. Strong splitting can differ between G and G/W (an element of W
/// centralizing tau), and the multiplicity criterion is argued on G/W.
Predicates predicates_modulo_w(const Group &g, std::int64_t p);

bool thm_multiplicity_unrealizable(const Group &g, std::int64_t p);
/// W = 1 and V is a multiplicity-free sum of irreducibles; true certifies realizability.
bool thm_converse_realizable(const Group &g, std::int64_t p);

struct ScanRow {
  std::string name;
  std::size_t order = 0;
  bool potentially_realizable = false;
  std::uint64_t count = 0;
  bool minimally_unrealizable = false;
  Predicates predicates;
  std::string shape;
  bool thm_multiplicity = false;
  bool thm_converse = false;
};

nlohmann::json to_json(const ScanRow &row);

/// Rows for every catalog entry of order <= order_bound that is potentially realizable.
std::vector<ScanRow> realizability_scan(std::span<const CatalogEntry> catalog, std::int64_t p,
                                        std::size_t order_bound, Counter &counter);
/// Names of the minimally unrealizable entries.
std::vector<std::string> minimally_unrealizable_scan(std::span<const CatalogEntry> catalog,
                                                     std::int64_t p, std::size_t order_bound,
                                                     Counter &counter);

} // namespace pigp
