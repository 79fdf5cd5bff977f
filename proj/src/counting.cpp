#include "pigp/counting.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <unordered_set>

#include "pigp/analysis.hpp"
#include "pigp/errors.hpp"
#include "pigp/numtheory.hpp"
#include "pigp/potential.hpp"

namespace pigp {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

/// Aut(G)-orbit bookkeeping on packed quadruples.
class OrbitMarks {
public:
  explicit OrbitMarks(std::size_t n) : n_(n) {}

  std::uint64_t key(const Quadruple &q) const {
    return ((static_cast<std::uint64_t>(q.sigma) * n_ + q.tau) * n_ + q.x0) * n_ + q.x1;
  }
  Quadruple unpack(std::uint64_t k) const {
    Quadruple q;
    q.x1 = static_cast<Index>(k % n_);
    k /= n_;
    q.x0 = static_cast<Index>(k % n_);
    k /= n_;
    q.tau = static_cast<Index>(k % n_);
    q.sigma = static_cast<Index>(k / n_);
    return q;
  }
  bool marked(const Quadruple &q) const { return marks_.contains(key(q)); }

  /// Marks the whole orbit and returns its least key.
  std::uint64_t mark_orbit(const AutGroup &a, const Quadruple &q) {
    std::uint64_t least = ~std::uint64_t{0};
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Quadruple img{a.apply(i, q.sigma), a.apply(i, q.tau), a.apply(i, q.x0),
                          a.apply(i, q.x1)};
      const auto k = key(img);
      marks_.insert(k);
      least = std::min(least, k);
    }
    return least;
  }

private:
  std::size_t n_;
  std::unordered_set<std::uint64_t> marks_;
};

CountResult blank_result(const Group &g, std::int64_t p, const RelationContext &ctx,
                         const std::string &method) {
  CountResult r;
  r.group = g.name();
  r.fingerprint = fingerprint(g);
  r.p = p;
  r.order = g.order();
  r.method = method;
  r.seed_h = ctx.h_seed;
  return r;
}

} // namespace

std::vector<std::pair<Index, Index>> enumerate_TG(const Group &g, std::int64_t p,
                                                  std::size_t max_order) {
  if (g.order() > max_order)
    throw CapacityError("tame pair enumeration limited to order " + std::to_string(max_order));
  const auto t = tame_quotient(g, p);
  std::vector<std::pair<Index, Index>> out;
  for_each_tame_pair(g, t, p, [&](Index s, Index tau) {
    out.emplace_back(s, tau);
    return true;
  });
  return out;
}

std::optional<std::string> quadruple_defect(const Group &g, const Quadruple &q, const Subgroup &v,
                                            const RelationContext &ctx) {
  if (!tame_relation_holds(g, q.sigma, q.tau, ctx.p))
    return "tame relation fails";
  if (!v.contains(q.x0) || !v.contains(q.x1))
    return "x0 or x1 outside the p-core";
  const Index gens[] = {q.sigma, q.tau, q.x0, q.x1};
  if (!generates(g, gens))
    return "quadruple does not generate the group";
  if (!wild_relation_holds(g, q.sigma, q.tau, q.x0, q.x1, ctx))
    return "wild relation fails";
  return std::nullopt;
}

Method parse_method(const std::string &s) {
  if (s == "auto")
    return Method::Auto;
  if (s == "abelian")
    return Method::Abelian;
  if (s == "tame")
    return Method::Tame;
  if (s == "lifting")
    return Method::Lifting;
  throw UsageError("unknown method '" + s + "' (auto|abelian|tame|lifting)");
}

std::string method_name(Method m) {
  switch (m) {
  case Method::Auto:
    return "auto";
  case Method::Abelian:
    return "abelian";
  case Method::Tame:
    return "tame";
  case Method::Lifting:
    return "lifting";
  }
  return "auto";
}

nlohmann::json to_json(const CountResult &r) {
  using nlohmann::json;
  const auto &f = r.fingerprint;
  json fp = {{"order", f.order},
             {"element_orders", f.element_orders},
             {"abelian_invariants", f.abelian_invariants},
             {"derived_series", f.derived_series},
             {"class_sizes", f.class_sizes}};
  json reps = json::array();
  for (const auto &q : r.representatives)
    reps.push_back({q.sigma, q.tau, q.x0, q.x1});
  json j = {{"group", r.group},   {"fingerprint", fp},     {"p", r.p},
            {"order", r.order},   {"method", r.method},    {"count", r.count},
            {"representatives", reps}, {"seed_h", r.seed_h}, {"millis", r.millis},
            {"potentially_realizable", r.potentially_realizable}};
  if (r.method == "lifting" && r.n_order) {
    j["n_order"] = r.n_order;
    j["automorphism_index"] = r.automorphism_index;
  }
  if (r.dual_count)
    j["dual_count"] = *r.dual_count;
  return j;
}

Counter::Counter(CountOptions opts) : opts_(std::move(opts)) {}

RelationContext Counter::context(const Group &g, std::int64_t p) const {
  return make_context(static_cast<std::int64_t>(g.order()), p, opts_.h_seed);
}

CountResult Counter::count(const Group &g, std::int64_t p) {
  chain_.clear();
  return dispatch(g, p, opts_.method, 0);
}

CountResult Counter::count_lifting(const Group &g, std::int64_t p,
                                   std::optional<std::size_t> n_choice) {
  chain_.clear();
  return lifting_impl(g, p, n_choice, 0);
}

CountResult Counter::dispatch(const Group &g, std::int64_t p, Method m, int depth) {
  const auto t0 = Clock::now();
  CountResult r;
  switch (m) {
  case Method::Abelian:
    r = count_abelian(g, p);
    break;
  case Method::Tame:
    r = count_tame(g, p);
    break;
  case Method::Lifting:
    r = lifting_impl(g, p, depth == 0 ? opts_.forced_n : std::nullopt, depth);
    break;
  case Method::Auto: {
    const bool trivial_core = p_core(g, p).is_trivial();
    const Method chosen =
        g.is_abelian() ? Method::Abelian : (trivial_core ? Method::Tame : Method::Lifting);
    if (!is_potentially_realizable(g, p).potentially_realizable) {
      r = blank_result(g, p, context(g, p), method_name(chosen));
      r.potentially_realizable = false;
    } else {
      r = dispatch(g, p, chosen, depth);
    }
    break;
  }
  }
  r.millis = elapsed_ms(t0);
  return r;
}

CountResult Counter::count_tame(const Group &g, std::int64_t p) {
  const auto t0 = Clock::now();
  if (!p_core(g, p).is_trivial())
    throw PreconditionError("tame count needs a trivial p-core; '" + g.name() + "' has none");
  const auto ctx = context(g, p);
  auto r = blank_result(g, p, ctx, "tame");
  const auto d = derived_subgroup(g);
  if (!is_cyclic(d)) {
    r.millis = elapsed_ms(t0);
    return r;
  }
  const auto aut = automorphism_group(g, opts_.aut_budget);
  OrbitMarks marks(g.order());
  std::vector<std::uint64_t> keys;
  for (const auto &n : normal_subgroups(g, d)) {
    if (!is_cyclic(n) || !quotient_is_cyclic(g, n))
      continue;
    Index gen_n = 0;
    for (auto x : n.elements())
      if (g.element_order(x) == n.size()) {
        gen_n = x;
        break;
      }
    for (Index s = 0; s < g.order(); ++s) {
      // On a cyclic N, p-th powering is determined by the generator.
      if (g.conj(gen_n, s) != g.pow(gen_n, p))
        continue;
      for (auto t : n.elements()) {
        const Index pair[] = {s, t};
        if (!generates(g, pair))
          continue;
        const Quadruple q{s, t, 0, 0};
        if (marks.marked(q))
          continue;
        keys.push_back(marks.mark_orbit(aut, q));
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  const auto v = Subgroup::trivial(g);
  for (auto k : keys) {
    const auto q = marks.unpack(k);
    if (auto bad = quadruple_defect(g, q, v, ctx))
      throw std::logic_error("tame representative rejected: " + *bad);
    r.representatives.push_back(q);
  }
  r.count = r.representatives.size();
  r.millis = elapsed_ms(t0);
  return r;
}

std::vector<Quadruple> Counter::quotient_reps(const Group &q, std::int64_t p, int depth) {
  auto &bucket = cache_[{p, fingerprint(q)}];
  for (const auto &entry : bucket) {
    const auto iso = find_isomorphism(entry.group, q, opts_.aut_budget);
    if (!iso)
      continue;
    std::vector<Quadruple> out;
    out.reserve(entry.reps.size());
    for (const auto &y : entry.reps)
      out.push_back({(*iso)(y.sigma), (*iso)(y.tau), (*iso)(y.x0), (*iso)(y.x1)});
    return out;
  }
  auto res = dispatch(q, p, Method::Auto, depth);
  bucket.push_back({q, res.representatives});
  return std::move(res.representatives);
}

CountResult Counter::lifting_impl(const Group &g, std::int64_t p,
                                  std::optional<std::size_t> n_choice, int depth) {
  const auto t0 = Clock::now();
  const auto ctx = context(g, p);
  auto r = blank_result(g, p, ctx, "lifting");
  if (g.is_trivial()) {
    r.representatives = {{0, 0, 0, 0}};
    r.count = 1;
    return r;
  }
  chain_.resize(static_cast<std::size_t>(depth));
  chain_.push_back(g.name() + " (order " + std::to_string(g.order()) + ")");
  if (depth > opts_.max_depth) {
    std::string path;
    for (const auto &c : chain_)
      path += (path.empty() ? "" : " -> ") + c;
    throw CapacityError("lifting recursion deeper than " + std::to_string(opts_.max_depth) +
                        ": " + path);
  }
  const auto minimal = minimal_normal_subgroups(g);
  const auto choice = n_choice.value_or(0);
  if (choice >= minimal.size())
    throw UsageError("minimal normal subgroup choice " + std::to_string(choice) + " out of range (" +
                     std::to_string(minimal.size()) + " available)");
  const auto &n = minimal[choice];
  const auto q = quotient(g, n);
  r.n_order = n.size();
  const auto yq = quotient_reps(q.group, p, depth + 1);
  if (yq.empty()) {
    r.millis = elapsed_ms(t0);
    return r;
  }
  const auto aut_g = automorphism_group(g, opts_.aut_budget);
  const auto aut_q = automorphism_group(q.group, opts_.aut_budget);
  const auto induced = induced_coset_reps(aut_g, n, q, aut_q);
  r.automorphism_index = induced.coset_reps.size();
  const auto v = p_core(g, p);

  auto lifts = [&](Index x, auto &&keep) {
    std::vector<Index> out;
    for (auto nu : n.elements()) {
      const Index y = g.mul(q.section[x], nu);
      if (keep(y))
        out.push_back(y);
    }
    return out;
  };
  auto in_v = [&](Index y) { return v.contains(y); };
  auto prime_to_p = [&](Index y) { return g.element_order(y) % p != 0; };
  auto any = [](Index) { return true; };

  auto pass = [&](bool swapped) {
    OrbitMarks marks(g.order());
    std::vector<std::uint64_t> keys;
    for (const auto &y : yq) {
      for (auto c : induced.coset_reps) {
        const Quadruple img{aut_q.apply(c, y.sigma), aut_q.apply(c, y.tau), aut_q.apply(c, y.x0),
                            aut_q.apply(c, y.x1)};
        const auto x1s = lifts(swapped ? img.x0 : img.x1, in_v);
        const auto x0s = lifts(swapped ? img.x1 : img.x0, in_v);
        const auto taus = lifts(img.tau, prime_to_p);
        const auto sigmas = lifts(img.sigma, any);
        for (auto x1 : x1s)
          for (auto x0 : x0s)
            for (auto tau : taus)
              for (auto sigma : sigmas) {
                if (!tame_relation_holds(g, sigma, tau, p))
                  continue;
                if (!wild_relation_holds(g, sigma, tau, x0, x1, ctx))
                  continue;
                const Quadruple cand{sigma, tau, x0, x1};
                if (marks.marked(cand))
                  continue;
                const auto least = marks.mark_orbit(aut_g, cand);
                const Index gens[] = {sigma, tau, x0, x1};
                if (generates(g, gens))
                  keys.push_back(least);
              }
      }
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Quadruple> out;
    for (auto k : keys)
      out.push_back(marks.unpack(k));
    return out;
  };

  r.representatives = pass(false);
  for (const auto &qd : r.representatives)
    if (auto bad = quadruple_defect(g, qd, v, ctx))
      throw std::logic_error("lifted representative rejected: " + *bad);
  r.count = r.representatives.size();
  if (opts_.dual_lift && depth == 0)
    r.dual_count = pass(true).size();
  r.millis = elapsed_ms(t0);
  return r;
}

Rational shafarevich_count(const Group &g, std::int64_t p, std::uint64_t aut_budget) {
  if (!is_p_group(g, p))
    throw PreconditionError("'" + g.name() + "' is not a " + std::to_string(p) + "-group");
  const auto phi = frattini_of(g, Subgroup::whole(g), p);
  const auto d = nt::p_part(static_cast<std::int64_t>(g.order() / phi.size()), p).first;
  const auto aut = automorphism_group(g, aut_budget);
  __int128 num = 1;
  const __int128 base = static_cast<__int128>(phi.size());
  num = base * base;
  for (int i = 0; i < d; ++i)
    num *= static_cast<__int128>(p * p - nt::ipow(p, i));
  __int128 den = static_cast<__int128>(aut.size());
  auto gcd128 = [](__int128 a, __int128 b) {
    if (a < 0)
      a = -a;
    while (b != 0) {
      auto t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  const auto gg = num == 0 ? den : gcd128(num, den);
  return {static_cast<std::int64_t>(num / gg), static_cast<std::int64_t>(den / gg)};
}

} // namespace pigp
