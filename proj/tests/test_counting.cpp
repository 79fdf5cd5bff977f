#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "pigp/analysis.hpp"
#include "pigp/counting.hpp"
#include "pigp/errors.hpp"
#include "pigp/potential.hpp"
#include "oracle.hpp"

using namespace pigp;

namespace {

Counter forced(Method m) {
  CountOptions o;
  o.method = m;
  return Counter(o);
}

Group relabel(const Group &g, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Index> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  std::vector<std::uint16_t> table(g.order() * g.order());
  for (Index x = 0; x < g.order(); ++x)
    for (Index y = 0; y < g.order(); ++y)
      table[perm[x] * g.order() + perm[y]] = static_cast<std::uint16_t>(perm[g.mul(x, y)]);
  std::vector<Index> gens;
  for (auto s : g.generators())
    gens.push_back(perm[s]);
  return Group::from_table(g.order(), table, gens, g.name() + "'");
}

void check_representatives(const Group &g, std::int64_t p, const CountResult &r) {
  CHECK(r.count == r.representatives.size());
  const auto v = p_core(g, p);
  const auto ctx = make_context(static_cast<std::int64_t>(g.order()), p);
  const auto o = oracle::arith(static_cast<std::int64_t>(g.order()), p, ctx.h_seed);
  for (const auto &q : r.representatives) {
    CHECK(!quadruple_defect(g, q, v, ctx));
    // Re-checked from scratch.
    CHECK(oracle::conj(g, q.tau, q.sigma) == oracle::power(g, q.tau, p));
    CHECK(v.contains(q.x0));
    CHECK(v.contains(q.x1));
    CHECK(oracle::wild(g, q.sigma, q.tau, q.x0, q.x1, o));
    CHECK(oracle::closure_size(g, {q.sigma, q.tau, q.x0, q.x1}) == g.order());
  }
}

} // namespace

TEST_CASE("tame pairs") {
  CHECK(enumerate_TG(cyclic_group(2), 3).size() == 3);
  CHECK(enumerate_TG(symmetric_group(3), 5).size() == 6);
  CHECK(enumerate_TG(Group(), 5).size() == 1);
  for (const auto &e : oracle::bundled()) {
    if (e.group.order() > 40)
      continue;
    for (std::int64_t p : {3, 5}) {
      const auto &g = e.group;
      const auto q = quotient(g, p_core(g, p));
      std::size_t naive = 0;
      for (Index s = 0; s < g.order(); ++s)
        for (Index t = 0; t < g.order(); ++t)
          if (oracle::conj(g, t, s) == oracle::power(g, t, p) &&
              oracle::closure_size(q.group, {q.projection(s), q.projection(t)}) == q.group.order())
            ++naive;
      CHECK_MESSAGE(enumerate_TG(g, p).size() == naive, e.name);
    }
  }
}

TEST_CASE("closed form for abelian groups") {
  Counter c;
  CHECK(c.count_abelian(cyclic_group(1458), 3).count == 2916);
  CHECK(c.count_abelian(cyclic_group(1210), 11).count == 2376);
  CHECK(c.count_abelian(elementary_abelian(3, 3), 3).count == 0);
  CHECK(c.count_abelian(elementary_abelian(5, 3), 5).count == 0);
  CHECK(c.count_abelian(Group(), 3).count == 1);
  CHECK(c.count_abelian(cyclic_group(9), 3).count == 12);
  CHECK(c.count_abelian(cyclic_group(6), 5).count == 3);
  CHECK(c.count_abelian(cyclic_group(7), 3).count == 1);
  CHECK_THROWS_AS(c.count_abelian(symmetric_group(3), 3), PreconditionError);

  const auto d = abelian_prime_data(cyclic_group(1458), 3);
  REQUIRE(d.size() == 2);
  CHECK(d[0].ell == 2);
  CHECK(d[0].case_number == 8);
  CHECK(d[0].c == 3);
  CHECK(d[1].case_number == 7);
  CHECK(d[1].c == 972);

  // Each prime contributes exactly c representatives.
  for (std::int64_t n = 1; n <= 100; ++n)
    for (const auto &t : abelian_types(n))
      for (std::int64_t p : {3, 5, 7})
        for (const auto &pd : abelian_prime_data(abelian_group(t), p))
          CHECK(pd.reps.size() == pd.c);
}

TEST_CASE("tame engine") {
  Counter c;
  CHECK(c.count_tame(cyclic_group(2), 3).count == 3);
  CHECK(c.count_tame(symmetric_group(3), 5).count == 1);
  CHECK(c.count_tame(cyclic_group(7), 3).count == 1);
  CHECK_THROWS_AS(c.count_tame(cyclic_group(3), 3), PreconditionError);
  for (const char *name : {"S3", "D10", "G21_2", "G20_4", "Q8", "A4", "C2xC2"})
    for (std::int64_t p : {5, 7, 11}) {
      const auto g = oracle::named(name);
      if (g.order() % p == 0 || !is_potentially_realizable(g, p).potentially_realizable)
        continue;
      const auto r = c.count_tame(g, p);
      check_representatives(g, p, r);
      CHECK_MESSAGE(r.count == oracle::brute_count(g, p), name, " p=", p);
    }
}

TEST_CASE("lifting engine examples") {
  Counter c;
  CHECK(c.count_lifting(cyclic_group(3), 3).count == 4);
  CHECK(c.count(oracle::named("GD50"), 5).count == 0);
  CHECK(c.count(quaternion8(), 5).count == 0);
  CHECK(c.count(quaternion8(), 3).count >= 1);
  CHECK(c.count(quaternion8(), 7).count >= 1);
  CHECK(c.count(abelian_group({7, 7}), 3).count == 0);
  CHECK(c.count(abelian_group({7, 7}), 3).representatives.empty());
  CHECK(c.count(cyclic_group(6), 5).count == 3);
  CHECK(forced(Method::Lifting).count(elementary_abelian(3, 3), 3).count == 0);
  CHECK(c.count(elementary_abelian(3, 3), 3).method == "abelian");
  CHECK(c.count(symmetric_group(3), 5).method == "tame");
  CHECK(c.count(symmetric_group(3), 3).method == "lifting");
}

TEST_CASE("engines agree with the brute-force orbit count") {
  Counter c;
  int compared = 0;
  for (const auto &e : oracle::bundled()) {
    if (e.group.order() > 32 || e.group.order() == 16 || e.group.order() == 32)
      continue;
    for (std::int64_t p : {3, 5, 7}) {
      CAPTURE(e.name);
      CAPTURE(p);
      const auto r = c.count(e.group, p);
      check_representatives(e.group, p, r);
      CHECK(r.count == oracle::brute_count(e.group, p));
      ++compared;
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("representatives lie in distinct orbits") {
  Counter c;
  for (const char *name : {"C3xC9", "Heis27", "M27", "S3", "GD18", "D18", "C2xC3xC3", "A4"})
    for (std::int64_t p : {3}) {
      const auto g = oracle::named(name);
      const auto r = c.count(g, p);
      const auto a = automorphism_group(g);
      std::set<std::vector<Index>> seen;
      std::size_t total = 0;
      for (const auto &q : r.representatives) {
        const Index t[] = {q.sigma, q.tau, q.x0, q.x1};
        const auto orb = tuple_orbit(t, a);
        // Generating tuples have free orbits.
        CHECK(orb.size() == a.size());
        total += orb.size();
        seen.insert(orb.begin(), orb.end());
      }
      CHECK_MESSAGE(seen.size() == total, name);
    }
}

TEST_CASE("method agreement and N-independence") {
  Counter c;
  for (std::int64_t n = 1; n <= 60; ++n)
    for (const auto &t : abelian_types(n))
      for (std::int64_t p : {3, 5}) {
        const auto g = abelian_group(t);
        CHECK_MESSAGE(c.count_abelian(g, p).count == c.count_lifting(g, p).count, "order ", n);
      }
  int checked = 0;
  for (const auto &e : oracle::bundled()) {
    const auto &g = e.group;
    if (g.is_abelian() || g.order() > 60 || g.order() % 3 != 0)
      continue;
    if (p_core(g, 3).is_trivial() || !is_potentially_realizable(g, 3).potentially_realizable)
      continue;
    const auto mins = minimal_normal_subgroups(g);
    if (mins.size() < 2)
      continue;
    const auto base = c.count_lifting(g, 3, 0).count;
    for (std::size_t i = 1; i < mins.size(); ++i)
      CHECK_MESSAGE(c.count_lifting(g, 3, i).count == base, e.name, " N#", i);
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("isomorphism invariance and root-of-unity seed") {
  Counter c;
  for (const char *name : {"Heis27", "GD54", "C3xC9", "S4", "F9sdC4", "G24_3"}) {
    const auto g = oracle::named(name);
    const auto h = relabel(g, 17);
    CHECK(c.count(g, 3).count == c.count(h, 3).count);
    CountOptions o;
    o.h_seed = 5;
    Counter c5(o);
    CHECK(c5.count(g, 3).count == c.count(g, 3).count);
    // 5 is 2 mod 3: the same root of unity.
    CHECK(c5.count(g, 3).seed_h == 2);
  }
  // Distinct primitive roots give distinct roots of unity for p = 5 and 7.
  for (auto [p, seed] : {std::pair<std::int64_t, std::int64_t>{5, 3}, {7, 5}}) {
    CountOptions o;
    o.h_seed = seed;
    Counter other(o);
    for (const char *name : {"C25", "C5xC5", "GD50", "D10", "G20_4", "G21_2", "D14", "C49"}) {
      const auto g = oracle::named(name);
      if (g.order() % p != 0)
        continue;
      CHECK(make_context(static_cast<std::int64_t>(g.order()), p, seed).h !=
            make_context(static_cast<std::int64_t>(g.order()), p).h);
      CHECK_MESSAGE(other.count(g, p).count == c.count(g, p).count, name);
    }
  }
}

TEST_CASE("swapped-label lifting pass") {
  CountOptions o;
  o.dual_lift = true;
  o.method = Method::Lifting;
  Counter c(o);
  const auto r = c.count(oracle::named("Heis27"), 3);
  REQUIRE(r.dual_count);
  CHECK(r.count == 1);
}

TEST_CASE("Shafarevich formula") {
  CHECK(shafarevich_count(cyclic_group(3), 3) == Rational{4, 1});
  CHECK(shafarevich_count(cyclic_group(9), 3) == Rational{12, 1});
  CHECK(shafarevich_count(heisenberg(3), 3) == Rational{1, 1});
  CHECK(shafarevich_count(elementary_abelian(3, 3), 3) == Rational{0, 1});
  CHECK_THROWS_AS(shafarevich_count(symmetric_group(3), 3), PreconditionError);
  Counter c;
  for (const auto &e : oracle::bundled())
    for (std::int64_t p : {3, 5}) {
      if (e.group.order() == 1 || !is_p_group(e.group, p))
        continue;
      const auto s = shafarevich_count(e.group, p);
      REQUIRE(s.is_integer());
      CHECK_MESSAGE(c.count(e.group, p).count == static_cast<std::uint64_t>(s.num), e.name);
    }
}

TEST_CASE("result JSON") {
  Counter c;
  const auto j = to_json(c.count(cyclic_group(9), 3));
  for (const char *k : {"group", "fingerprint", "p", "order", "method", "count", "representatives",
                        "seed_h", "millis"})
    CHECK(j.contains(k));
  CHECK(j["count"] == 12);
  CHECK(j["representatives"].size() == 12);
  CHECK(j["representatives"][0].size() == 4);
  CHECK(parse_method("lifting") == Method::Lifting);
  CHECK_THROWS_AS(parse_method("magic"), UsageError);
}
