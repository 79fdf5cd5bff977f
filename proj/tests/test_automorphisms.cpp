#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "pigp/analysis.hpp"
#include "pigp/automorphisms.hpp"
#include "pigp/construct.hpp"
#include "pigp/errors.hpp"
#include "oracle.hpp"

using namespace pigp;

TEST_CASE("known automorphism group orders") {
  CHECK(automorphism_group(cyclic_group(1)).size() == 1);
  CHECK(automorphism_group(cyclic_group(9)).size() == 6);
  CHECK(automorphism_group(cyclic_group(35)).size() == 24);
  CHECK(automorphism_group(quaternion8()).size() == 24);
  CHECK(automorphism_group(symmetric_group(4)).size() == 24);
  CHECK(automorphism_group(alternating_group(5)).size() == 120);
  CHECK(automorphism_group(heisenberg(3)).size() == 432);
  // |GL_3(F_3)|
  CHECK(automorphism_group(elementary_abelian(3, 3)).size() == 11232);
  CHECK(automorphism_group(dihedral(4)).size() == 8);
}

TEST_CASE("automorphism counts agree with a naive search") {
  int compared = 0;
  for (const auto &e : oracle::bundled()) {
    const auto &g = e.group;
    // Keep the naive search (candidates^generators) affordable.
    double work = 1;
    for (std::size_t i = 0; i < g.generators().size(); ++i)
      work *= static_cast<double>(g.order());
    if (work * g.order() * g.order() > 4e8)
      continue;
    CAPTURE(e.name);
    const auto a = automorphism_group(g);
    CHECK(a.size() == oracle::aut_order(g));
    ++compared;
  }
  CHECK(compared >= 60);
}

TEST_CASE("automorphism tables are distinct automorphisms closed under composition") {
  for (const auto &g : {symmetric_group(3), quaternion8(), abelian_group({3, 3}), dihedral(6)}) {
    const auto a = automorphism_group(g);
    std::set<std::vector<std::uint16_t>> seen;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto t = a.table(i);
      seen.emplace(t.begin(), t.end());
      CHECK(a.automorphism(i).verify());
      CHECK(a.automorphism(i).is_injective());
      CHECK(a.find(t) == static_cast<std::ptrdiff_t>(i));
    }
    CHECK(seen.size() == a.size());
    for (Index x = 0; x < g.order(); ++x)
      CHECK(a.apply(0, x) == x);
    CHECK(a.verify_closed());
  }
}

TEST_CASE("capacity limits") {
  CHECK_THROWS_AS(automorphism_group(elementary_abelian(3, 4), 1000), CapacityError);
  CHECK_THROWS_AS(automorphism_group(cyclic_group(100), kDefaultAutBudget, 50), CapacityError);
}

TEST_CASE("subgroup stabilizers") {
  const auto g = abelian_group({3, 3});
  const auto a = automorphism_group(g);
  for (const auto &n : minimal_normal_subgroups(g)) {
    const auto s = stabilizer_of_subgroup(a, n);
    // GL_2(F_3) permutes the four lines transitively.
    CHECK(s.size() == a.size() / 4);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (auto x : n.elements())
        CHECK(n.contains(s.apply(i, x)));
  }
  const auto s4 = symmetric_group(4);
  const auto as4 = automorphism_group(s4);
  CHECK(stabilizer_of_subgroup(as4, minimal_normal_subgroups(s4)[0]).size() == 24);
}

TEST_CASE("induced coset representatives partition Aut of the quotient") {
  for (const auto &g : {heisenberg(3), abelian_group({3, 9}), symmetric_group(4), dihedral(9)}) {
    const auto ag = automorphism_group(g);
    for (const auto &n : minimal_normal_subgroups(g)) {
      const auto q = quotient(g, n);
      const auto aq = automorphism_group(q.group);
      const auto r = induced_coset_reps(ag, n, q, aq);
      CHECK(r.coset_reps.front() == 0);
      CHECK(r.image.size() * r.coset_reps.size() == aq.size());
      // Naive: the automorphism of Q induced by each stabilizer element.
      const auto stab = stabilizer_of_subgroup(ag, n);
      std::set<std::uint32_t> naive;
      for (std::size_t i = 0; i < stab.size(); ++i) {
        std::vector<std::uint16_t> t(q.group.order());
        for (Index c = 0; c < q.group.order(); ++c)
          t[c] = static_cast<std::uint16_t>(q.projection(stab.apply(i, q.section[c])));
        const auto pos = aq.find(t);
        REQUIRE(pos >= 0);
        naive.insert(static_cast<std::uint32_t>(pos));
      }
      CHECK(std::set<std::uint32_t>(r.image.begin(), r.image.end()) == naive);
      // The sets {i o c : i in image} cover Aut(Q).
      std::set<std::ptrdiff_t> covered;
      for (auto c : r.coset_reps)
        for (auto i : r.image) {
          std::vector<std::uint16_t> t(q.group.order());
          for (Index x = 0; x < q.group.order(); ++x)
            t[x] = static_cast<std::uint16_t>(aq.apply(i, aq.apply(c, x)));
          covered.insert(aq.find(t));
        }
      CHECK(covered.size() == aq.size());
    }
  }
}

TEST_CASE("tuple orbits") {
  const auto g = abelian_group({3, 3});
  const auto a = automorphism_group(g);
  // A generating pair has a free orbit.
  const Index pair[] = {g.generators()[0], g.generators()[1]};
  const auto orb = tuple_orbit(pair, a);
  CHECK(orb.size() == a.size());
  CHECK(std::is_sorted(orb.begin(), orb.end()));
  // A single non-identity element: all eight of them.
  const Index one[] = {g.generators()[0]};
  CHECK(tuple_orbit(one, a).size() == 8);
  const Index id[] = {0};
  CHECK(tuple_orbit(id, a).size() == 1);
}
