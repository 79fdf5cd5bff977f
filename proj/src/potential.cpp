#include "pigp/potential.hpp"

#include <algorithm>
#include <numeric>

#include "pigp/analysis.hpp"
#include "pigp/construct.hpp"
#include "pigp/errors.hpp"
#include "pigp/numtheory.hpp"

namespace pigp {

namespace {

Subgroup join(const Group &g, const Subgroup &a, std::span<const Index> extra) {
  std::vector<Index> gens(a.generators().begin(), a.generators().end());
  gens.insert(gens.end(), extra.begin(), extra.end());
  return subgroup_generated(g, gens);
}

} // namespace

bool validate_tame_structure(const TameStructure &ts, std::int64_t p, std::string *why) {
  auto fail = [&](const char *msg) {
    if (why)
      *why = msg;
    return false;
  };
  const auto &g = ts.group;
  if (!ts.g0.is_normal() || !ts.g1.is_normal())
    return fail("G0 and G1 must be normal");
  if (!ts.g1.is_subset_of(ts.g0))
    return fail("G1 must lie in G0");
  const Index sig[] = {ts.sigma};
  if (!join(g, ts.g0, sig).is_whole())
    return fail("sigma must generate G/G0");
  const Index tau[] = {ts.tau};
  if (!ts.g0.contains(ts.tau) || join(g, ts.g1, tau).size() != ts.g0.size())
    return fail("tau must generate G0/G1");
  if (std::gcd(static_cast<std::int64_t>(ts.g0.size() / ts.g1.size()), p) != 1)
    return fail("G0/G1 must have order prime to p");
  if (g.conj(ts.tau, ts.sigma) != g.pow(ts.tau, p))
    return fail("tau^sigma must equal tau^p");
  if (nt::p_part(static_cast<std::int64_t>(ts.g1.size()), p).second !=
      static_cast<std::int64_t>(ts.g1.size()))
    return fail("G1 must be a p-group");
  return true;
}

void for_each_tame_pair(const Group &g, const Quotient &t, std::int64_t p,
                        const std::function<bool(Index, Index)> &f) {
  const auto tn = t.group.order();
  // Generation in T depends only on the images; memoize it per image pair.
  std::vector<std::int8_t> gen_memo;
  const bool memo = tn * tn <= (std::size_t{1} << 24);
  if (memo)
    gen_memo.assign(tn * tn, -1);
  for (Index sigma = 0; sigma < g.order(); ++sigma) {
    for (Index tau = 0; tau < g.order(); ++tau) {
      if (g.conj(tau, sigma) != g.pow(tau, p))
        continue;
      const Index ps = t.projection(sigma), pt = t.projection(tau);
      bool gens;
      const std::size_t key = static_cast<std::size_t>(ps) * tn + pt;
      if (memo && gen_memo[key] >= 0) {
        gens = gen_memo[key] != 0;
      } else {
        const Index pair[] = {ps, pt};
        gens = generated_size(t.group, pair) == tn;
        if (memo)
          gen_memo[key] = gens ? 1 : 0;
      }
      if (gens && !f(sigma, tau))
        return;
    }
  }
}

bool potential_screen(const Group &g, std::int64_t p) {
  const auto v = p_core(g, p);
  const auto t = quotient(g, v);
  if (is_cyclic(t.group))
    return true;
  const auto d = derived_subgroup(g);
  if (!is_cyclic(d))
    return false;
  for (const auto &n : normal_subgroups(g, d)) {
    if (!is_cyclic(n) || !quotient_is_cyclic(g, n))
      continue;
    const auto e = static_cast<std::int64_t>(n.size());
    const auto f = static_cast<std::int64_t>(g.order()) / e;
    Index gen_n = 0;
    for (auto x : n.elements())
      if (static_cast<std::int64_t>(g.element_order(x)) == e) {
        gen_n = x;
        break;
      }
    // The generator of G/N is not pinned down; any element generating it may serve.
    for (Index x = 0; x < g.order(); ++x) {
      if (order_modulo(g, n, x) != f)
        continue;
      const Index conj = g.conj(gen_n, x);
      std::int64_t a = 0;
      for (Index y = 0; y != conj; y = g.mul(y, gen_n))
        ++a;
      const auto m = nt::multiplicative_order(a, e);
      std::int64_t b = -1;
      std::int64_t pw = 1 % e;
      for (std::int64_t k = 0; k < m; ++k) {
        if (pw == nt::mod(p, e)) {
          b = k;
          break;
        }
        pw = pw * a % e;
      }
      if (b < 0)
        continue;
      if (std::gcd(std::gcd(m, b), f) == 1)
        return true;
    }
  }
  return false;
}

PotentialVerdict is_potentially_realizable(const Group &g, std::int64_t p) {
  PotentialVerdict out;
  const auto v = p_core(g, p);
  const auto t = quotient(g, v);
  out.cyclic_tame_quotient = is_cyclic(t.group);
  // The screen is only sound on the tame quotient: on G itself a normal N with p | |N|
  // makes a^b = p (mod |N|) unsolvable even when a tame structure exists.
  out.potentially_realizable = out.cyclic_tame_quotient || potential_screen(t.group, p);
  for_each_tame_pair(g, t, p, [&](Index sigma, Index tau) {
    const Index tau_arr[] = {tau};
    TameStructure ts{g, join(g, v, tau_arr), v, sigma, tau};
    std::string why;
    if (!validate_tame_structure(ts, p, &why))
      throw std::logic_error("witness tame structure fails: " + why);
    out.witness = std::move(ts);
    return false;
  });
  return out;
}

std::vector<TameStructure> tame_structures(const Group &g, std::int64_t p, std::size_t max_order) {
  if (g.order() > max_order)
    throw CapacityError("tame structure search limited to order " + std::to_string(max_order));
  std::vector<TameStructure> out;
  const auto normals = normal_subgroups(g);
  for (const auto &g0 : normals) {
    if (!quotient_is_cyclic(g, g0))
      continue;
    for (const auto &g1 : normals) {
      if (!g1.is_subset_of(g0))
        continue;
      const auto g1n = static_cast<std::int64_t>(g1.size());
      if (nt::p_part(g1n, p).second != g1n)
        continue;
      if (std::gcd(static_cast<std::int64_t>(g0.size()) / g1n, p) != 1)
        continue;
      bool found = false;
      for (Index sigma = 0; sigma < g.order() && !found; ++sigma) {
        for (auto tau : g0.elements()) {
          TameStructure ts{g, g0, g1, sigma, tau};
          if (validate_tame_structure(ts, p)) {
            out.push_back(std::move(ts));
            found = true;
            break;
          }
        }
      }
    }
  }
  return out;
}

std::vector<Group> tame_potential_groups(std::int64_t n, std::int64_t p) {
  std::vector<Group> groups;
  std::vector<GroupFingerprint> prints;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (n % k)
      continue;
    const auto m = n / k;
    if (nt::powmod(p, k, m) != 1 % m)
      continue;
    const auto step = m / std::gcd(m, p - 1);
    for (std::int64_t l = 0; l < m; l += step) {
      auto grp = metacyclic_group(k, m, l, p);
      if (!grp)
        continue;
      const auto fp = fingerprint(*grp);
      bool dup = false;
      for (std::size_t i = 0; i < groups.size() && !dup; ++i)
        dup = prints[i] == fp && are_isomorphic(groups[i], *grp);
      if (!dup) {
        groups.push_back(*grp);
        prints.push_back(fp);
      }
    }
  }
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return prints[a] < prints[b]; });
  std::vector<Group> sorted;
  for (auto i : order)
    sorted.push_back(groups[i]);
  return sorted;
}

std::optional<Subgroup> find_complement(const Group &g, const Subgroup &v) {
  if (v.is_trivial())
    return Subgroup::whole(g);
  const auto t = quotient(g, v);
  if (t.group.is_trivial())
    return Subgroup::trivial(g);
  const auto tgens = small_generating_set(t.group);
  std::vector<Index> chosen;
  std::optional<Subgroup> found;
  // Depth-first over lifts, pruning as soon as the partial subgroup meets V.
  std::function<void(std::size_t)> dfs = [&](std::size_t level) {
    if (found)
      return;
    if (level == tgens.size()) {
      auto h = subgroup_generated(g, chosen);
      if (h.size() * v.size() == g.order())
        found = std::move(h);
      return;
    }
    const Index base = t.section[tgens[level]];
    for (auto x : v.elements()) {
      chosen.push_back(g.mul(base, x));
      const auto h = subgroup_generated(g, chosen);
      bool meets = false;
      for (auto y : h.elements())
        if (y != 0 && v.contains(y)) {
          meets = true;
          break;
        }
      if (!meets)
        dfs(level + 1);
      chosen.pop_back();
      if (found)
        return;
    }
  };
  dfs(0);
  return found;
}

bool semidirect_conjecture_holds(const Group &g, std::int64_t p) {
  return find_complement(g, p_core(g, p)).has_value();
}

} // namespace pigp
