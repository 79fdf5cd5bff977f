#include "pigp/analysis.hpp"

#include <vector>

#include "pigp/errors.hpp"
#include "pigp/numtheory.hpp"

namespace pigp {

Subgroup normalizer(const Group &g, const Subgroup &h) {
  std::vector<Index> elems;
  for (Index x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto s : h.generators())
      if (!h.contains(g.conj(s, x))) {
        ok = false;
        break;
      }
    if (ok)
      elems.push_back(x);
  }
  return subgroup_generated(g, elems);
}

Subgroup centralizer(const Group &g, std::span<const Index> elems) {
  std::vector<Index> out;
  for (Index x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto s : elems)
      if (g.mul(x, s) != g.mul(s, x)) {
        ok = false;
        break;
      }
    if (ok)
      out.push_back(x);
  }
  return subgroup_generated(g, out);
}

bool is_p_group(const Group &g, std::int64_t p) {
  return nt::p_part(static_cast<std::int64_t>(g.order()), p).second ==
         static_cast<std::int64_t>(g.order());
}

std::int64_t order_modulo(const Group &g, const Subgroup &n, Index x) {
  std::int64_t k = 1;
  for (Index y = x; !n.contains(y); y = g.mul(y, x))
    ++k;
  return k;
}

bool quotient_is_cyclic(const Group &g, const Subgroup &n) {
  const auto f = static_cast<std::int64_t>(g.order() / n.size());
  for (Index x = 0; x < g.order(); ++x)
    if (order_modulo(g, n, x) == f)
      return true;
  return false;
}

Subgroup sylow_subgroup(const Group &g, std::int64_t p) {
  const auto target = nt::p_part(static_cast<std::int64_t>(g.order()), p).second;
  Subgroup cur = Subgroup::trivial(g);
  while (static_cast<std::int64_t>(cur.size()) < target) {
    // Some x in N(P) \ P has x^p in P, and then <P, x> has order p|P|.
    const auto norm = normalizer(g, cur);
    bool grown = false;
    for (auto x : norm.elements()) {
      if (cur.contains(x) || !cur.contains(g.pow(x, p)))
        continue;
      std::vector<Index> gens(cur.generators().begin(), cur.generators().end());
      gens.push_back(x);
      cur = subgroup_generated(g, gens);
      grown = true;
      break;
    }
    if (!grown)
      throw std::logic_error("Sylow growth stalled");
  }
  return cur;
}

Subgroup p_core(const Group &g, std::int64_t p) {
  const auto syl = sylow_subgroup(g, p);
  std::vector<Index> core;
  for (auto x : syl.elements()) {
    bool in_all = true;
    for (Index y = 0; y < g.order() && in_all; ++y)
      in_all = syl.contains(g.conj(x, y));
    if (in_all)
      core.push_back(x);
  }
  auto v = subgroup_generated(g, core);
  if (v.size() != core.size() || !v.is_normal())
    throw std::logic_error("p-core is not a normal subgroup");
  return v;
}

Subgroup frattini_of(const Group &g, const Subgroup &v, std::int64_t p) {
  std::vector<Index> gens;
  for (auto x : v.elements())
    gens.push_back(g.pow(x, p));
  for (auto a : v.generators())
    for (auto b : v.generators())
      gens.push_back(g.comm(a, b));
  // W is characteristic in V, so its normal closure in G is W itself.
  auto w = normal_closure(g, gens);
  if (!w.is_subset_of(v))
    throw std::logic_error("Frattini subgroup escapes V");
  return w;
}

Subgroup frattini_of_pcore(const Group &g, std::int64_t p) { return frattini_of(g, p_core(g, p), p); }

Subgroup derived_subgroup(const Group &g) {
  std::vector<Index> gens;
  for (auto a : g.generators())
    for (auto b : g.generators())
      gens.push_back(g.comm(a, b));
  return normal_closure(g, gens);
}

Quotient tame_quotient(const Group &g, std::int64_t p) { return quotient(g, p_core(g, p)); }

StructuralDecomposition structural_decomposition(const Group &g, std::int64_t p) {
  auto v = p_core(g, p);
  auto w = frattini_of(g, v, p);
  auto t = quotient(g, v);
  return {g, p, std::move(v), std::move(w), std::move(t)};
}

const StructuralDecomposition &AnalysisCache::get(const Group &g, std::int64_t p) {
  auto key = std::make_pair(g.identity_key(), p);
  auto it = memo_.find(key);
  if (it == memo_.end())
    it = memo_.emplace(key, std::make_shared<StructuralDecomposition>(structural_decomposition(g, p)))
             .first;
  return *it->second;
}

} // namespace pigp
