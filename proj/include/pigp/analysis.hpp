#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>

#include "pigp/group.hpp"

namespace pigp {

/// A Sylow p-subgroup, grown one factor of p at a time inside normalizers.
Subgroup sylow_subgroup(const Group &g, std::int64_t p);

/// Largest normal p-subgroup (V): the intersection of all conjugates of a Sylow p-subgroup.
Subgroup p_core(const Group &g, std::int64_t p);

/// W = V^p V' for V the p-core of g.
Subgroup frattini_of_pcore(const Group &g, std::int64_t p);
/// Same, for a given normal p-subgroup v.
Subgroup frattini_of(const Group &g, const Subgroup &v, std::int64_t p);

Subgroup derived_subgroup(const Group &g);

/// T = G/V with its projection.
Quotient tame_quotient(const Group &g, std::int64_t p);

Subgroup normalizer(const Group &g, const Subgroup &h);
Subgroup centralizer(const Group &g, std::span<const Index> elems);

bool is_p_group(const Group &g, std::int64_t p);

/// Order of the image of x in G/N.
std::int64_t order_modulo(const Group &g, const Subgroup &n, Index x);
/// Whether G/N is cyclic, without building the quotient.
bool quotient_is_cyclic(const Group &g, const Subgroup &n);

struct StructuralDecomposition {
  Group group;
  std::int64_t p;
  Subgroup v;
  Subgroup w;
  Quotient t;
};

StructuralDecomposition structural_decomposition(const Group &g, std::int64_t p);

/// Memo of structural decompositions keyed by (group identity, p). Not thread-safe;
/// meant to live for one computation.
class AnalysisCache {
public:
  const StructuralDecomposition &get(const Group &g, std::int64_t p);

private:
  std::map<std::pair<const void *, std::int64_t>, std::shared_ptr<StructuralDecomposition>> memo_;
};

} // namespace pigp
