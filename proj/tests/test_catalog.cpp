#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "pigp/catalog.hpp"
#include "pigp/construct.hpp"
#include "pigp/errors.hpp"
#include "oracle.hpp"

using namespace pigp;

TEST_CASE("parse construct and perm blocks") {
  const auto cat = parse_catalog(R"(# comment
group A construct cyclic(6)
end

group S3p perm 3
gen 2 1 3
gen 2 3 1
end
group B construct direct(A, S3p)
end
)");
  REQUIRE(cat.size() == 3);
  CHECK(cat[0].name == "A");
  CHECK(cat[0].recipe == "cyclic(6)");
  CHECK(cat[0].group.order() == 6);
  CHECK(cat[1].recipe.empty());
  CHECK(cat[1].group.order() == 6);
  CHECK(!cat[1].group.is_abelian());
  CHECK(cat[2].group.order() == 36);
  CHECK(cat[1].line == 5);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const char *text) {
    try {
      parse_catalog(text);
    } catch (const ParseError &e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("group A construct cyclic(3)\nend\ngroup A construct cyclic(4)\nend\n") == 3);
  CHECK(line_of("group A construct frobnicate(3)\nend\n") == 1);
  CHECK(line_of("group A perm 3\ngen 1 1 2\nend\n") == 2);
  CHECK(line_of("group A perm 3\ngen 1 2\nend\n") == 2);
  CHECK(line_of("group A construct cyclic(3)\n") > 0);
  CHECK(line_of("gen 1 2 3\n") == 1);
  CHECK(line_of("group A construct semidirect(cyclic(7),cyclic(3),scalar(3))\nend\n") == 1);
}

TEST_CASE("recipes") {
  CHECK(resolve_recipe("abelian(5,5,5)").order() == 125);
  CHECK(resolve_recipe("abelian(1,3,1)").order() == 3);
  CHECK(resolve_recipe("elementary(3,3)").order() == 27);
  CHECK(resolve_recipe("heisenberg(3)").order() == 27);
  CHECK(resolve_recipe("trivial").order() == 1);
  CHECK(resolve_recipe("dihedral(25)").order() == 50);
  CHECK(resolve_recipe("gdihedral(5,2)").order() == 50);
  CHECK(resolve_recipe("alternating(5)").order() == 60);
  const auto f = resolve_recipe("semidirect(elementary(3,2),cyclic(4),scalar(-1))");
  CHECK(f.order() == 36);
  CHECK(!f.is_abelian());
  const auto c7 = resolve_recipe("semidirect(cyclic(7), cyclic(3), [0 2 4 6 1 3 5])");
  CHECK(c7.order() == 21);
  CHECK(!c7.is_abelian());
  std::map<std::string, Group> known{{"Q", quaternion8()}};
  CHECK(resolve_recipe("direct(Q,cyclic(3))", known).order() == 24);
  CHECK_THROWS_AS(resolve_recipe("direct(Q,cyclic(3))"), ParseError);
  CHECK_THROWS_AS(resolve_recipe("cyclic(3"), ParseError);
  CHECK_THROWS_AS(resolve_recipe("metacyclic(3,9,0,2)"), ParseError);
}

TEST_CASE("serialize and parse round trip") {
  const auto cat = parse_catalog(
      "group A construct cyclic(6)\nend\n"
      "group P perm 4\ngen 2 3 4 1\ngen 2 1 3 4\nend\n");
  std::vector<CatalogEntry> all = cat;
  all.push_back({"Q", "", quaternion8(), 0});
  const auto again = parse_catalog(serialize_catalog(all));
  REQUIRE(again.size() == all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(again[i].name == all[i].name);
    CHECK(are_isomorphic(again[i].group, all[i].group));
  }
  // The regular representation of a group without stored permutations.
  CHECK(perm_block("Q", quaternion8()).find("perm 8") != std::string::npos);
}

TEST_CASE("selectors") {
  const auto &cat = oracle::bundled();
  CHECK(resolve_selector("Q8", cat).order() == 8);
  CHECK(resolve_selector("abelian(5,5,5)", cat).order() == 125);
  CHECK(resolve_selector("direct(Q8,C3)", cat).order() == 24);
  CHECK_THROWS(resolve_selector("NoSuchGroup", cat));
}

TEST_CASE("bundled catalog has one group per isomorphism class up to order 60") {
  // Number of groups of each order 1..60.
  const int groups_of_order[] = {1, 1, 1, 2,  1, 2, 1, 5,  2, 2, 1, 5, 1, 2, 1,  14, 1, 5, 1, 5,
                                 2, 2, 1, 15, 2, 2, 5, 4,  1, 4, 1, 51, 1, 2, 1, 14, 1, 2, 2, 14,
                                 1, 6, 1, 4,  2, 2, 1, 52, 2, 5, 1, 5, 1, 15, 2, 13, 2, 2, 1, 13};
  const auto &cat = oracle::bundled();
  std::map<std::size_t, std::vector<const CatalogEntry *>> by_order;
  for (const auto &e : cat) {
    CHECK(verify_group_axioms(e.group));
    by_order[e.group.order()].push_back(&e);
  }
  for (int n = 1; n <= 60; ++n)
    CHECK_MESSAGE(by_order[n].size() == static_cast<std::size_t>(groups_of_order[n - 1]),
                  "order ", n);
  // Pairwise non-isomorphic: distinct fingerprints, or a failed isomorphism search.
  for (const auto &[n, list] : by_order)
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j)
        if (fingerprint(list[i]->group) == fingerprint(list[j]->group))
          CHECK_MESSAGE(!are_isomorphic(list[i]->group, list[j]->group), list[i]->name, " ",
                        list[j]->name);
}
