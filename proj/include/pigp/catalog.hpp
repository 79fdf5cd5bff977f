#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pigp/group.hpp"

namespace pigp {

/// A named group from a catalog file: either a construction recipe or raw
/// permutation generators (then `recipe` is empty).
struct CatalogEntry {
  std::string name;
  std::string recipe;
  Group group;
  int line = 0;
};

/// Line-oriented catalog format:
///
///   group <name> perm <degree>
///   gen <img(1)> ... <img(degree)>
///   end
///   group <name> construct <recipe>
///   end
///
/// Recipes: cyclic(n), abelian(n1,...), direct(A,B), semidirect(V,T,act,...),
/// metacyclic(k,m,l,p), quaternion8, heisenberg(p), dihedral(m) (order 2m),
/// gdihedral(p,k), elementary(p,k), symmetric(n), alternating(n), trivial. A and B are earlier names or nested recipes; each act is a
/// bracketed list of 0-based images of V's elements under one generator of T,
/// or scalar(k) for x -> x^k on an abelian V. Throws ParseError.
std::vector<CatalogEntry> parse_catalog(std::string_view text);
std::vector<CatalogEntry> load_catalog(const std::string &path);

/// One block per entry; recipes are kept, everything else becomes perm blocks.
std::string serialize_catalog(std::span<const CatalogEntry> entries);
/// A perm block from the stored permutation generators, or the right regular
/// representation when none are stored.
std::string perm_block(const std::string &name, const Group &g);

/// Evaluates a recipe; `known` supplies groups referenced by name.
Group resolve_recipe(std::string_view recipe, const std::map<std::string, Group> &known = {});

/// Catalog name first, then recipe.
Group resolve_selector(const std::string &selector, std::span<const CatalogEntry> catalog);

/// Path of the bundled catalog.
std::string default_catalog_path();

} // namespace pigp
