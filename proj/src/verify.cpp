#include "pigp/verify.hpp"

#include <algorithm>
#include <set>

#include "pigp/analysis.hpp"
#include "pigp/construct.hpp"
#include "pigp/counting.hpp"
#include "pigp/errors.hpp"
#include "pigp/numtheory.hpp"
#include "pigp/potential.hpp"
#include "pigp/realizability.hpp"

namespace pigp {

namespace {

bool is_p_power(std::size_t n, std::int64_t p) {
  while (n % p == 0)
    n /= p;
  return n == 1;
}

std::string label(const CatalogEntry &e, std::int64_t p) {
  return e.name + " (order " + std::to_string(e.group.order()) + ", p=" + std::to_string(p) + ")";
}

void shafarevich_suite(std::span<const CatalogEntry> cat, const VerifyOptions &o, VerifyReport &r) {
  Counter counter(CountOptions{Method::Lifting, o.aut_budget, {}, false, {}, 64});
  for (const auto &e : cat) {
    const auto &g = e.group;
    if (g.order() > o.max_order || !is_p_power(g.order(), o.p))
      continue;
    try {
      const auto q = shafarevich_count(g, o.p, o.aut_budget);
      const auto c = counter.count_lifting(g, o.p).count;
      ++r.checks;
      if (!q.is_integer() || q.num != static_cast<std::int64_t>(c))
        r.failures.push_back(label(e, o.p) + ": lifting " + std::to_string(c) + " vs formula " +
                             std::to_string(q.num) + "/" + std::to_string(q.den));
    } catch (const CapacityError &err) {
      r.skipped.push_back(label(e, o.p) + ": " + err.what());
    }
  }
}

void abelian_cross_suite(std::span<const CatalogEntry> cat, const VerifyOptions &o,
                         VerifyReport &r) {
  Counter counter(CountOptions{Method::Lifting, o.aut_budget, {}, false, {}, 64});
  std::vector<std::pair<std::string, Group>> groups;
  std::set<std::string> seen;
  for (std::size_t n = 1; n <= o.max_order; ++n)
    for (const auto &f : abelian_types(static_cast<std::int64_t>(n))) {
      auto g = abelian_group(f);
      if (seen.insert(g.name()).second)
        groups.emplace_back(g.name(), g);
    }
  for (const auto &e : cat)
    if (e.group.order() <= o.max_order && e.group.is_abelian())
      groups.emplace_back(e.name, e.group);
  for (const auto &[name, g] : groups) {
    try {
      const auto a = counter.count_abelian(g, o.p).count;
      const auto l = counter.count_lifting(g, o.p).count;
      ++r.checks;
      if (a != l)
        r.failures.push_back(name + " p=" + std::to_string(o.p) + ": closed form " +
                             std::to_string(a) + " vs lifting " + std::to_string(l));
    } catch (const CapacityError &err) {
      r.skipped.push_back(name + ": " + err.what());
    }
  }
}

void n_independence_suite(std::span<const CatalogEntry> cat, const VerifyOptions &o,
                          VerifyReport &r) {
  Counter counter(CountOptions{Method::Lifting, o.aut_budget, {}, false, {}, 64});
  for (const auto &e : cat) {
    const auto &g = e.group;
    if (g.order() > o.max_order || g.is_abelian() || p_core(g, o.p).is_trivial())
      continue;
    const auto mins = minimal_normal_subgroups(g);
    if (mins.size() < 2)
      continue;
    try {
      std::set<std::uint64_t> counts;
      std::string detail;
      for (std::size_t i = 0; i < mins.size(); ++i) {
        const auto c = counter.count_lifting(g, o.p, i).count;
        counts.insert(c);
        detail += " N" + std::to_string(i) + "(|N|=" + std::to_string(mins[i].size()) +
                  ")=" + std::to_string(c);
      }
      ++r.checks;
      if (counts.size() != 1)
        r.failures.push_back(label(e, o.p) + ":" + detail);
    } catch (const CapacityError &err) {
      r.skipped.push_back(label(e, o.p) + ": " + err.what());
    }
  }
}

Subgroup join(const Group &g, const Subgroup &a, const Subgroup &b) {
  std::vector<Index> gens(a.generators().begin(), a.generators().end());
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return subgroup_generated(g, gens);
}

void props_suite(std::span<const CatalogEntry> cat, const VerifyOptions &o, VerifyReport &r) {
  Counter counter(CountOptions{Method::Auto, o.aut_budget, {}, false, {}, 64});
  const auto p = o.p;
  auto fail = [&](const CatalogEntry &e, const std::string &what) {
    r.failures.push_back(label(e, p) + ": " + what);
  };
  for (const auto &e : cat) {
    const auto &g = e.group;
    if (g.order() > o.max_order)
      continue;
    try {
      const auto verdict = is_potentially_realizable(g, p);
      const bool has_pair = !enumerate_TG(g, p).empty();
      ++r.checks;
      if (verdict.potentially_realizable != has_pair)
        fail(e, "screening verdict disagrees with existence of a tame pair");
      if (!verdict.potentially_realizable)
        continue;

      // Quotients of potentially realizable groups stay potentially realizable.
      for (const auto &n : normal_subgroups(g)) {
        if (n.is_trivial())
          continue;
        ++r.checks;
        if (!is_potentially_realizable(quotient(g, n).group, p).potentially_realizable)
          fail(e, "quotient of order " + std::to_string(g.order() / n.size()) +
                      " is not potentially realizable");
      }

      // Enlarging G0 by V keeps a valid tame structure.
      const auto v = p_core(g, p);
      for (const auto &ts : tame_structures(g, p, o.max_order)) {
        TameStructure big{g, join(g, ts.g0, v), v, ts.sigma, ts.tau};
        std::string why;
        ++r.checks;
        if (!validate_tame_structure(ts, p, &why))
          fail(e, "returned tame structure is invalid: " + why);
        else if (!validate_tame_structure(big, p, &why))
          fail(e, "enlarged tame structure is invalid: " + why);
      }

      const auto pr = predicates_ss_td_xc(g, p);
      ++r.checks;
      if (pr.td && !pr.xc)
        fail(e, "tame-decoupled but not x0-constrained");

      const auto m = vw_module(g, p);
      const auto d = decompose(m.rep);
      int total = 0;
      for (const auto &[sm, mult] : d.classes)
        total += sm.dim * mult;
      ++r.checks;
      if (total != m.rep.dim)
        fail(e, "summand dimensions do not add up");

      const auto pw = predicates_modulo_w(g, p);
      const bool t53 = d.max_multiplicity > 1 + (pw.ss ? 0 : 1) + (pw.xc ? 0 : 1);
      bool t54 = m.w.is_trivial();
      for (const auto &[sm, mult] : d.classes)
        t54 = t54 && mult == 1 && sm.irreducible;
      if (t53 || t54) {
        const auto c = counter.count(g, p).count;
        ++r.checks;
        if (t53 && c != 0)
          fail(e, "multiplicity criterion predicts no extension but count is " +
                      std::to_string(c));
        if (t54 && c == 0)
          fail(e, "multiplicity-free irreducible V predicts an extension but count is 0");
      }
    } catch (const CapacityError &err) {
      r.skipped.push_back(label(e, p) + ": " + err.what());
    }
  }
  for (std::int64_t n = 1; n <= static_cast<std::int64_t>(std::min<std::size_t>(o.max_order, 60));
       ++n)
    for (const auto &g : tame_potential_groups(n, p)) {
      ++r.checks;
      if (!is_potentially_realizable(g, p).potentially_realizable)
        r.failures.push_back("tame metacyclic group " + g.name() +
                             " fails the potential realizability screen");
    }
}

void complement_suite(std::span<const CatalogEntry> cat, const VerifyOptions &o, VerifyReport &r) {
  for (const auto &e : cat) {
    const auto &g = e.group;
    if (g.order() > o.max_order || !is_potentially_realizable(g, o.p).potentially_realizable)
      continue;
    try {
      ++r.checks;
      if (!semidirect_conjecture_holds(g, o.p))
        r.failures.push_back(label(e, o.p) + ": p-core has no complement");
    } catch (const CapacityError &err) {
      r.skipped.push_back(label(e, o.p) + ": " + err.what());
    }
  }
}

} // namespace

std::vector<std::string> verify_suite_names() {
  return {"shafarevich", "abelian-cross", "n-independence", "props", "complement"};
}

VerifyReport run_verify_suite(const std::string &suite, std::span<const CatalogEntry> catalog,
                              const VerifyOptions &opts) {
  if (opts.p < 3 || !nt::is_prime(opts.p))
    throw UsageError("p must be an odd prime");
  VerifyReport r;
  r.suite = suite;
  if (suite == "shafarevich")
    shafarevich_suite(catalog, opts, r);
  else if (suite == "abelian-cross")
    abelian_cross_suite(catalog, opts, r);
  else if (suite == "n-independence")
    n_independence_suite(catalog, opts, r);
  else if (suite == "props")
    props_suite(catalog, opts, r);
  else if (suite == "complement")
    complement_suite(catalog, opts, r);
  else
    throw UsageError("unknown verify suite '" + suite + "'");
  return r;
}

} // namespace pigp
