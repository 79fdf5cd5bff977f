#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "pigp/analysis.hpp"
#include "pigp/construct.hpp"
#include "pigp/errors.hpp"
#include "oracle.hpp"

using namespace pigp;

namespace {

std::uint32_t exponent(const Group &g) {
  std::uint32_t e = 1;
  for (Index x = 0; x < g.order(); ++x)
    e = std::lcm(e, g.element_order(x));
  return e;
}

} // namespace

TEST_CASE("abelian group indexing is mixed radix, first factor fastest") {
  const std::vector<std::int64_t> f{2, 3, 4};
  const auto g = abelian_group(f);
  REQUIRE(g.order() == 24);
  CHECK(g.is_abelian());
  for (Index x = 0; x < g.order(); ++x) {
    const auto c = abelian_coordinates(f, x);
    CHECK(c[0] == x % 2);
    CHECK(c[1] == (x / 2) % 3);
    CHECK(c[2] == x / 6);
    CHECK(abelian_index(f, c) == x);
  }
  // Generators are the unit vectors.
  CHECK(g.generators()[0] == 1);
  CHECK(g.generators()[1] == 2);
  CHECK(g.generators()[2] == 6);
  for (Index x = 0; x < g.order(); ++x)
    for (Index y = 0; y < g.order(); ++y) {
      const auto a = abelian_coordinates(f, x), b = abelian_coordinates(f, y),
                 s = abelian_coordinates(f, g.mul(x, y));
      for (int i = 0; i < 3; ++i)
        CHECK(s[i] == (a[i] + b[i]) % f[i]);
    }
}

TEST_CASE("abelian types and invariants") {
  CHECK(abelian_types(1).size() == 1);
  CHECK(abelian_types(16).size() == 5);
  CHECK(abelian_types(72).size() == 6);
  CHECK(abelian_types(729).size() == 11);
  CHECK(abelian_invariants(cyclic_group(6)) == std::vector<std::int64_t>{2, 3});
  CHECK(abelian_invariants(abelian_group({4, 6})) == std::vector<std::int64_t>{2, 3, 4});
  const std::vector<std::int64_t> f{12, 18};
  const auto pd = primary_decomposition(f);
  CHECK(pd.at(2) == std::vector<int>{1, 2});
  CHECK(pd.at(3) == std::vector<int>{1, 2});

  // Every listed type of order 144 is realized by a distinct group.
  const auto types = abelian_types(144);
  std::set<std::vector<std::int64_t>> seen;
  for (const auto &t : types) {
    const auto g = abelian_group(t);
    CHECK(g.order() == 144);
    auto inv = abelian_invariants(g);
    auto sorted = t;
    std::sort(sorted.begin(), sorted.end());
    CHECK(inv == sorted);
    seen.insert(inv);
  }
  CHECK(seen.size() == types.size());
}

TEST_CASE("named families") {
  CHECK(quaternion8().order() == 8);
  CHECK(oracle::closure_size(quaternion8(), {}) == 1);
  CHECK(center(quaternion8()).size() == 2);
  CHECK(exponent(quaternion8()) == 4);

  for (int p : {3, 5, 7}) {
    const auto h = heisenberg(p);
    CHECK(h.order() == static_cast<std::size_t>(p * p * p));
    CHECK(!h.is_abelian());
    CHECK(exponent(h) == static_cast<std::uint32_t>(p));
    CHECK(center(h).size() == static_cast<std::size_t>(p));
  }
  for (int m : {3, 4, 5, 6, 9}) {
    const auto d = dihedral(m);
    CHECK(d.order() == static_cast<std::size_t>(2 * m));
    CHECK(verify_group_axioms(d));
    int involutions = 0;
    for (Index x = 0; x < d.order(); ++x)
      involutions += d.element_order(x) == 2;
    CHECK(involutions == m + (m % 2 == 0 ? 1 : 0));
  }
  const auto gd = generalized_dihedral(3, 2);
  CHECK(gd.order() == 18);
  int inv2 = 0;
  for (Index x = 0; x < gd.order(); ++x)
    inv2 += gd.element_order(x) == 2;
  CHECK(inv2 == 9);
  CHECK(are_isomorphic(dihedral(3), symmetric_group(3)));
  CHECK(are_isomorphic(generalized_dihedral(5, 1), dihedral(5)));
}

TEST_CASE("metacyclic groups") {
  const auto m27 = metacyclic_group(3, 9, 0, 4);
  REQUIRE(m27);
  CHECK(m27->order() == 27);
  CHECK(!m27->is_abelian());
  CHECK(exponent(*m27) == 9);
  CHECK(verify_group_axioms(*m27));
  // r = 2 has order 6 mod 9, so x^3 cannot centralize y.
  CHECK(!metacyclic_group(3, 9, 0, 2));
  // Q8 as <x, y | x^2 = y^2, y^4 = 1, y^x = y^-1>.
  const auto q = metacyclic_group(2, 4, 2, 3);
  REQUIRE(q);
  CHECK(are_isomorphic(*q, quaternion8()));
}

TEST_CASE("semidirect and direct products") {
  const auto v = cyclic_group(7), t = cyclic_group(3);
  // Generator of C3 acts as x -> x^2, an automorphism of order 3.
  const std::vector<std::int64_t> f7{7};
  const std::vector<std::vector<Index>> act{abelian_scalar_automorphism(f7, 2)};
  const auto g = semidirect_product(v, t, act, "F21");
  CHECK(g.order() == 21);
  CHECK(!g.is_abelian());
  CHECK(verify_group_axioms(g));
  // x -> x^3 has order 6, so it does not give an action of C3.
  const std::vector<std::vector<Index>> bad{abelian_scalar_automorphism(f7, 3)};
  CHECK_THROWS_AS(semidirect_product(v, t, bad), PreconditionError);
  // A non-bijective map.
  const std::vector<std::vector<Index>> junk{std::vector<Index>(7, 0)};
  CHECK_THROWS(semidirect_product(v, t, junk));

  const auto d = direct_product(symmetric_group(3), cyclic_group(2));
  CHECK(d.order() == 12);
  CHECK(are_isomorphic(d, dihedral(6)));
  CHECK(are_isomorphic(direct_product(cyclic_group(4), cyclic_group(9)), cyclic_group(36)));
}

TEST_CASE("fingerprints and isomorphism") {
  CHECK(fingerprint(dihedral(4)) != fingerprint(quaternion8()));
  CHECK(!are_isomorphic(dihedral(4), quaternion8()));
  CHECK(!are_isomorphic(abelian_group({3, 9}), cyclic_group(27)));
  // Same order statistics, different groups: C4 x C4 and the metacyclic C4 x| C4.
  const auto m = metacyclic_group(4, 4, 0, 3);
  REQUIRE(m);
  CHECK(!are_isomorphic(*m, abelian_group({4, 4})));

  std::mt19937 rng(3);
  for (const auto &g : {symmetric_group(4), heisenberg(3), dihedral(10)}) {
    // Relabel g by a random permutation of the non-identity elements.
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
    const auto h = Group::from_table(g.order(), table, gens, "relabelled");
    CHECK(fingerprint(g) == fingerprint(h));
    const auto iso = find_isomorphism(g, h);
    REQUIRE(iso);
    CHECK(iso->verify());
    CHECK(iso->is_injective());
  }
}

TEST_CASE("small generating sets") {
  for (const auto &g : {symmetric_group(4), abelian_group({2, 2, 2, 3}), heisenberg(5),
                        alternating_group(5)}) {
    const auto s = small_generating_set(g);
    CHECK(generates(g, s));
    for (std::size_t i = 1; i < s.size(); ++i)
      CHECK(g.element_order(s[i - 1]) >= g.element_order(s[i]));
  }
  CHECK(small_generating_set(abelian_group({2, 2, 2, 3})).size() == 3);
  CHECK(small_generating_set(cyclic_group(30)).size() == 1);
}

TEST_CASE("sizes beyond the supported range are rejected") {
  CHECK_THROWS(cyclic_group(5000));
  CHECK_THROWS(cyclic_group(0));
  CHECK_THROWS(symmetric_group(8));
}
